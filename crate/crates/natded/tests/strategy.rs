use std::path::PathBuf;

use natded::kernel::{eq_up_to_labels, standard_form, Derivation};
use natded::strategy::{explore, postpone, postpone_j, postpone_m, ExploreOutcome, Strategy, StrategyError, Target};
use natded::syntax::{parse_derivation, render_latex};

fn corpus(name: &str) -> Derivation {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/worked").join(name);
    parse_derivation(&std::fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn minimal_input_is_left_alone() {
    let d = parse_derivation("(and-i (assume (pred P)) (or-i1 (pred Q) (assume (pred P))))").unwrap();
    for target in [Target::J, Target::M] {
        let (out, trace) = postpone(d.clone(), target).unwrap();
        assert!(trace.steps.is_empty());
        assert!(eq_up_to_labels(&out, &d));
    }
}

#[test]
fn preconditions() {
    let forall = parse_derivation("(forall-i x (forall-e x (assume (forall y (pred S y)))))").unwrap();
    assert_eq!(postpone_j(forall.clone()).unwrap_err(), StrategyError::PreconditionForallIntro);
    assert_eq!(explore(forall, Strategy::Maximal, 10).unwrap_err(), StrategyError::PreconditionForallIntro);
    let imp = parse_derivation("(imp-i 1 (pred P) (assume 1 (pred P)))").unwrap();
    assert_eq!(postpone_m(imp.clone()).unwrap_err(), StrategyError::PreconditionImpIntro);
    assert!(postpone_j(imp).is_ok());
    let plain = parse_derivation("(and-e1 (assume (and (pred P) (pred Q))))").unwrap();
    assert!(postpone_j(plain).is_ok());
    let open = parse_derivation("(raa 1 (pred P) (assume 2 bot))").unwrap();
    assert!(matches!(postpone_j(open), Err(StrategyError::Check(_))));
}

#[test]
fn explore_strategies_on_example_two() {
    let d = corpus("ex2.nd");
    for strategy in [Strategy::Maximal, Strategy::Innermost, Strategy::Random(42)] {
        let (outcome, out) = explore(d.clone(), strategy, 100).unwrap();
        assert!(matches!(outcome, ExploreOutcome::Terminated { steps } if steps > 0), "{strategy:?}");
        assert!(standard_form(&out).j_standard);
    }
    let (outcome, _) = explore(d.clone(), Strategy::Maximal, 0).unwrap();
    assert!(matches!(outcome, ExploreOutcome::FuelExhausted { .. }));

    let (standard, _) = postpone_m(d).unwrap();
    assert_eq!(explore(standard, Strategy::Random(1), 5).unwrap().0, ExploreOutcome::Terminated { steps: 0 });
}

#[test]
fn latex_root_is_a_labelled_raa() {
    let latex = render_latex(&corpus("ex1_final.nd"));
    let root = latex.lines().rev().find(|l| l.contains("RightLabel")).unwrap();
    assert!(root.contains("raa") && root.contains('^'), "{root}");
}
