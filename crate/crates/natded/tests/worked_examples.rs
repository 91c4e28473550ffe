use std::path::PathBuf;

use natded::kernel::{check, eq_up_to_labels, raa_report, standard_form, uses_rule, Derivation, Formula, LabelSource, Position, RuleId};
use natded::rewrite::{find_redex, reduce_at, CaseTag};
use natded::strategy::{postpone_j, postpone_m};
use natded::syntax::{parse_derivation, parse_formula};

fn corpus(name: &str) -> Derivation {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../corpus/worked").join(name);
    parse_derivation(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn example_one_reaches_the_printed_final_tree() {
    let d = corpus("ex1.nd");
    let j = check(&d).unwrap();
    assert!(j.assumptions.is_empty());
    assert_eq!(j.conclusion, parse_formula("(and (imp (not (not (pred P))) (pred P)) (imp (not (not (pred Q))) (pred Q)))").unwrap());
    assert!(uses_rule(&d, RuleId::ImpI));
    let (out, trace) = postpone_j(d).unwrap();
    let cases: Vec<CaseTag> = trace.steps.iter().map(|s| s.redex.case).collect();
    assert_eq!(cases, vec![CaseTag::ImpIntro, CaseTag::ImpIntro, CaseTag::AndIntroBoth]);
    assert!(standard_form(&out).j_standard);
    assert!(out.is_raa());
    assert!(eq_up_to_labels(&out, &corpus("ex1_final.nd")));
}

#[test]
fn example_two_sizes_and_final_tree() {
    let d = corpus("ex2.nd");
    let j = check(&d).unwrap();
    assert_eq!(j.assumptions, vec![Formula::atom("P")]);
    let r = raa_report(&d);
    assert_eq!((r.size_raa, r.size_raa_plus), (5, 1));
    let (out, trace) = postpone_m(d).unwrap();
    let sizes: Vec<(usize, usize)> = trace.steps.iter().map(|s| s.size_raa).collect();
    assert_eq!(sizes, vec![(5, 4), (4, 1), (1, 0)]);
    assert!(standard_form(&out).m_standard);
    assert!(eq_up_to_labels(&out, &corpus("ex2_final.nd")));
    assert_eq!(
        trace.to_log().lines().next().unwrap(),
        "step 1: case and_e1 at 0.0.1; size_raa 5→4; size_raa+ 1→1"
    );
}

#[test]
fn imp_intro_counterexample_grows_the_size() {
    let d = corpus("counterexample.nd");
    assert_eq!(raa_report(&d).size_raa, 1);
    let mut labels = LabelSource::above(&d);
    let redex = find_redex(&d, &Position(vec![0])).unwrap();
    assert_eq!(redex.case, CaseTag::ImpIntro);
    let out = reduce_at(d, &redex, &mut labels).unwrap();
    check(&out).unwrap();
    assert_eq!(raa_report(&out).size_raa, 3);
    assert!(eq_up_to_labels(&out, &corpus("counterexample_reduct.nd")));
}
