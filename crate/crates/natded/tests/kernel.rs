mod common;

use natded::kernel::{
    check, check_in, maximal_raa, raa_report, standard_form, uses_rule, CheckError, Derivation, Formula, Position, RaaSelection, RuleId,
    RuleQuery, SystemId,
};
use natded::oracle::{gen_derivation, GeneratorProfile};
use natded::syntax::{parse_derivation, parse_formula, SyntaxError};

use common::corpus_dir;

fn d(text: &str) -> Derivation {
    parse_derivation(text).unwrap()
}

fn worked(name: &str) -> Derivation {
    d(&std::fs::read_to_string(corpus_dir("worked").join(name)).unwrap())
}

#[test]
fn judgments_of_examples() {
    let j = check(&worked("ex1.nd")).unwrap();
    assert!(j.assumptions.is_empty());
    assert_eq!(j.to_string(), "⊢ (¬¬P → P) ∧ (¬¬Q → Q)");
    let j = check(&d("(assume (pred P))")).unwrap();
    assert_eq!(j.to_string(), "P ⊢ P");
    let e = check(&d("(forall-i x (assume (pred P x)))")).unwrap_err();
    assert!(matches!(e, CheckError::EigenvariableViolation { .. }));
}

#[test]
fn repeated_assumptions_form_a_set() {
    let j = check(&d("(and-i (assume (pred P)) (assume (pred P)))")).unwrap();
    assert_eq!(j.assumptions, vec![Formula::atom("P")]);
}

#[test]
fn raa_sizes_of_examples() {
    assert_eq!(raa_report(&worked("counterexample.nd")).size_raa, 1);
    assert_eq!(raa_report(&worked("counterexample_reduct.nd")).size_raa, 3);
    let r = raa_report(&worked("ex2.nd"));
    let shape: Vec<(usize, bool)> = r.instances.iter().map(|i| (i.distance, i.discharging)).collect();
    assert_eq!(shape, vec![(1, true), (4, false)]);
    assert_eq!((r.size_raa, r.size_raa_plus), (5, 1));
}

#[test]
fn standard_forms() {
    let root_only = d("(raa 1 (pred P) (not-e (assume 1 (not (pred P))) (assume (pred P))))");
    let f = standard_form(&root_only);
    assert!(f.m_standard && f.j_standard);
    let efq_inside = d("(and-i (raa 1 (pred P) (assume bot)) (assume (pred Q)))");
    let f = standard_form(&efq_inside);
    assert!(f.j_standard && !f.m_standard);
    assert!(standard_form(&worked("ex1_final.nd")).j_standard);
    assert!(!standard_form(&worked("ex1.nd")).j_standard);
}

#[test]
fn maximal_instances() {
    assert_eq!(maximal_raa(&d("(assume (pred P))"), RaaSelection::All), None);
    let ex2 = worked("ex2.nd");
    let all = maximal_raa(&ex2, RaaSelection::All).unwrap();
    assert_eq!(all.depth(), 4);
    assert!(!ex2.get(&all).unwrap().discharges_any());
    assert_eq!(maximal_raa(&ex2, RaaSelection::Discharging), Some(Position(vec![0])));
    let tie = d("(and-i
        (raa 1 (pred P) (not-e (assume 1 (not (pred P))) (assume (pred P))))
        (raa 2 (pred Q) (not-e (assume 2 (not (pred Q))) (assume (pred Q)))))");
    assert_eq!(maximal_raa(&tie, RaaSelection::Discharging), Some(Position(vec![0])));
}

#[test]
fn rule_usage() {
    let nm = d("(and-i (assume (pred P)) (assume (pred Q)))");
    assert!(!uses_rule(&nm, RuleId::Raa));
    assert!(!uses_rule(&worked("ex2.nd"), RuleId::ImpI));
    assert!(uses_rule(&worked("ex1.nd"), RuleId::ImpI));
    let efq = d("(raa 1 (pred Q) (assume bot))");
    assert!(uses_rule(&efq, RuleId::Raa));
    assert!(!uses_rule(&efq, RuleQuery::DischargingRaa));
}

#[test]
fn system_membership_follows_raa_usage() {
    for seed in 0..300 {
        let profile = GeneratorProfile::new(4, &["P", "Q"], SystemId::nk(), 0.5, seed);
        let d = gen_derivation(&profile).unwrap();
        assert_eq!(check_in(&d, &SystemId::nm()).is_ok(), !uses_rule(&d, RuleId::Raa));
        assert_eq!(check_in(&d, &SystemId::nj()).is_ok(), !uses_rule(&d, RuleQuery::DischargingRaa));
        let r = raa_report(&d);
        assert!(r.size_raa >= r.size_raa_plus);
        let f = standard_form(&d);
        assert_eq!(f.m_standard, r.size_raa == 0);
        assert_eq!(f.j_standard, r.size_raa_plus == 0);
    }
}

#[test]
fn figure_one_side_conditions_are_enforced() {
    let cases = [
        ("(raa 1 (pred P) (assume (pred P)))", "SchemaMismatch"),
        ("(not-i 1 (pred P) (assume (pred P)))", "SchemaMismatch"),
        ("(or-e 1 (assume (or (pred P) (pred Q))) (assume (pred R)) (assume (pred S)))", "SchemaMismatch"),
        ("(forall-i x (assume (pred P x)))", "EigenvariableViolation"),
        ("(exists-e 1 y (assume (exists x (pred P x))) (assume 1 (pred P y)))", "EigenvariableViolation"),
        ("(exists-e 1 y (assume (exists x (pred P x y))) (assume (pred Q)))", "EigenvariableViolation"),
        ("(exists-i (exists x (pred P x)) c (assume (pred P d)))", "AnnotationMismatch"),
        ("(imp-i 1 (pred P) (assume 1 (pred Q)))", "BadDischarge"),
        ("(assume 1 (pred P))", "UnboundLabel"),
    ];
    for (text, kind) in cases {
        assert_eq!(check(&d(text)).unwrap_err().kind(), kind, "{text}");
    }
}

#[test]
fn conclusions_that_cannot_be_computed_are_rejected_while_parsing() {
    for text in ["(and-e1 (assume (or (pred P) (pred Q))))", "(forall-e c (assume (pred P)))"] {
        assert!(matches!(parse_derivation(text), Err(SyntaxError::Schema { .. })), "{text}");
    }
}

#[test]
fn distance_is_depth_along_threads() {
    let d = worked("ex1.nd");
    d.walk(&mut |pos, n| {
        for (i, _) in n.premises().iter().enumerate() {
            assert_eq!(pos.child(i).depth(), pos.depth() + 1);
        }
    });
    assert_eq!(Position::root().depth(), 0);
    let f = parse_formula("(forall x (pred P x))").unwrap();
    assert!(f.alpha_eq(&parse_formula("(forall y (pred P y))").unwrap()));
}
