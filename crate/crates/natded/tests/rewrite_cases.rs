use std::fmt::Write;
use std::path::PathBuf;

use natded::kernel::{check, efq_count, eq_up_to_labels, Derivation, LabelSource, Position};
use natded::rewrite::{
    dne_for_negative, find_redex, find_redex_negative, reduce_at, reduce_at_negative, reduce_at_with, CaseTag, ReduceOptions,
    RewriteError,
};
use natded::kernel::{uses_rule, Formula, RuleId};
use natded::syntax::{parse_derivation, render_text};

const P: &str = "(pred P)";
const Q: &str = "(pred Q)";
const R: &str = "(pred R)";

/// `raa` concluding `f` from the open assumption `f`.
fn r(l: u32, f: &str) -> String {
    format!("(raa {l} {f} (not-e (assume {l} (not {f})) (assume {f})))")
}

fn or_minor(l: Option<u32>, disjunct: &str) -> String {
    let body = format!("(imp-e (assume (imp {disjunct} {R})) (assume 9 {disjunct}))");
    match l {
        Some(l) => format!("(raa {l} {R} (not-e (assume {l} (not {R})) {body}))"),
        None => body,
    }
}

fn or_e(major: bool, left: bool, right: bool) -> String {
    let m = if major { r(1, &format!("(or {P} {Q})")) } else { format!("(assume (or {P} {Q}))") };
    format!("(or-e 9 {m} {} {})", or_minor(left.then_some(2), P), or_minor(right.then_some(3), Q))
}

fn exists_e(major: bool, minor: bool) -> String {
    let ex = "(exists x (pred S x))";
    let m = if major { r(1, ex) } else { format!("(assume {ex})") };
    let body = format!("(imp-e (forall-e y (assume (forall z (imp (pred S z) {R})))) (assume 9 (pred S y)))");
    let n = if minor { format!("(raa 2 {R} (not-e (assume 2 (not {R})) {body}))") } else { body };
    format!("(exists-e 9 y {m} {n})")
}

/// One input per case: the focused raa is the anchor's first raa premise.
fn table() -> Vec<(CaseTag, String)> {
    use CaseTag::*;
    let not_p = format!("(not {P})");
    let imp_pq = format!("(imp {P} {Q})");
    let pq = format!("(and {P} {Q})");
    let bot_refutation = format!("(raa 1 bot (not-e (assume 1 (not bot)) (not-e (assume (not {P})) (assume 9 {P}))))");
    vec![
        (NotIntro, format!("(not-i 9 {P} {bot_refutation})")),
        (NotElimMajor, format!("(not-e {} (assume {P}))", r(1, &not_p))),
        (NotElimMinor, format!("(not-e (assume {not_p}) {})", r(1, P))),
        (NotElimBoth, format!("(not-e {} {})", r(1, &not_p), r(2, P))),
        (AndIntroLeft, format!("(and-i {} (assume {Q}))", r(1, P))),
        (AndIntroRight, format!("(and-i (assume {P}) {})", r(1, Q))),
        (AndIntroBoth, format!("(and-i {} {})", r(1, P), r(2, Q))),
        (AndElim1, format!("(and-e1 {})", r(1, &pq))),
        (AndElim2, format!("(and-e2 {})", r(1, &pq))),
        (OrIntro1, format!("(or-i1 {Q} {})", r(1, P))),
        (OrIntro2, format!("(or-i2 {P} {})", r(1, Q))),
        (OrElimMajor, or_e(true, false, false)),
        (OrElimLeft, or_e(false, true, false)),
        (OrElimRight, or_e(false, false, true)),
        (OrElimMinors, or_e(false, true, true)),
        (OrElimMajorLeft, or_e(true, true, false)),
        (OrElimMajorRight, or_e(true, false, true)),
        (OrElimAll, or_e(true, true, true)),
        (ImpIntro, format!("(imp-i 9 {P} (raa 1 {Q} (not-e (assume 1 (not {Q})) (imp-e (assume {imp_pq}) (assume 9 {P})))))")),
        (ImpElimMajor, format!("(imp-e {} (assume {P}))", r(1, &imp_pq))),
        (ImpElimMinor, format!("(imp-e (assume {imp_pq}) {})", r(1, P))),
        (ImpElimBoth, format!("(imp-e {} {})", r(1, &imp_pq), r(2, P))),
        (ForallElim, format!("(forall-e c {})", r(1, "(forall x (pred S x))"))),
        (ExistsIntro, format!("(exists-i (exists x (pred S x)) c {})", r(1, "(pred S c)"))),
        (ExistsElimMajor, exists_e(true, false)),
        (ExistsElimMinor, exists_e(false, true)),
        (ExistsElimBoth, exists_e(true, true)),
        (EfqBelow, format!("(raa 5 {P} {bot_refutation})").replace("(assume 9 (pred P))", "(assume (pred P))")),
        (RaaBelow, format!("(raa 5 {P} (raa 1 bot (not-e (assume 1 (not bot)) (not-e (assume 5 (not {P})) (assume {P})))))")),
    ]
}

fn first_raa_child(d: &Derivation) -> Position {
    let i = d.premises().iter().position(|p| p.is_raa()).expect("an active premise");
    Position(vec![i])
}

fn golden_path() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden/rewrite_cases.txt")
}

#[test]
fn every_case_is_dispatched_and_preserves_the_judgment() {
    let mut snapshot = String::new();
    for (tag, text) in table() {
        let d = parse_derivation(&text).unwrap_or_else(|e| panic!("{tag}: {e}"));
        let before = check(&d).unwrap_or_else(|e| panic!("{tag}: {e}"));
        let redex = find_redex(&d, &first_raa_child(&d)).unwrap();
        assert_eq!(redex.case, tag);
        assert!(redex.anchor.is_root());
        let out = reduce_at(d.clone(), &redex, &mut LabelSource::above(&d)).unwrap();
        let after = check(&out).unwrap_or_else(|e| panic!("{tag}: {e}"));
        assert_eq!(after.conclusion, before.conclusion, "{tag}");
        assert!(after.assumptions_within(&before.assumptions), "{tag}");
        if tag != CaseTag::ImpIntro {
            assert_eq!(efq_count(&out), efq_count(&d), "{tag}");
        }
        writeln!(snapshot, "== {tag}\n{}", render_text(&out)).unwrap();
    }
    if std::env::var_os("UPDATE_GOLDEN").is_some() {
        std::fs::write(golden_path(), &snapshot).unwrap();
    }
    let golden = std::fs::read_to_string(golden_path()).expect("golden file; regenerate with UPDATE_GOLDEN=1");
    assert_eq!(snapshot, golden);
}

#[test]
fn conjunction_elimination_matches_the_printed_reduct() {
    let d = parse_derivation(&format!("(and-e1 {})", r(1, &format!("(and {P} {Q})")))).unwrap();
    let out = reduce_at(d.clone(), &find_redex(&d, &Position(vec![0])).unwrap(), &mut LabelSource::above(&d)).unwrap();
    let want = parse_derivation(&format!(
        "(raa 2 {P} (not-e (not-i 3 (and {P} {Q}) (not-e (assume 2 (not {P})) (and-e1 (assume 3 (and {P} {Q}))))) (assume (and {P} {Q}))))"
    ))
    .unwrap();
    assert!(eq_up_to_labels(&out, &want), "{}", render_text(&out));
}

#[test]
fn raa_below_merges_into_one_raa() {
    let d = parse_derivation(&format!(
        "(raa 5 {P} (raa 1 bot (not-e (assume 1 (not bot)) (not-e (assume 5 (not {P})) (assume {P})))))"
    ))
    .unwrap();
    let out = reduce_at(d.clone(), &find_redex(&d, &Position(vec![0])).unwrap(), &mut LabelSource::above(&d)).unwrap();
    let want = parse_derivation(&format!(
        "(raa 5 {P} (not-e (not-i 6 bot (assume 6 bot)) (not-e (assume 5 (not {P})) (assume {P}))))"
    ))
    .unwrap();
    assert!(eq_up_to_labels(&out, &want), "{}", render_text(&out));
}

#[test]
fn swapped_orientation_also_checks() {
    for (tag, text) in table() {
        if !matches!(tag, CaseTag::NotElimBoth | CaseTag::AndIntroBoth | CaseTag::ImpElimBoth) {
            continue;
        }
        let d = parse_derivation(&text).unwrap();
        let redex = find_redex(&d, &Position(vec![0])).unwrap();
        let plain = reduce_at(d.clone(), &redex, &mut LabelSource::above(&d)).unwrap();
        let swapped =
            reduce_at_with(d.clone(), &redex, &mut LabelSource::above(&d), ReduceOptions { swap_symmetric: true }).unwrap();
        assert_eq!(check(&swapped).unwrap().conclusion, check(&d).unwrap().conclusion);
        assert!(!eq_up_to_labels(&plain, &swapped), "{tag}");
    }
}

#[test]
fn blocked_and_malformed_redexes() {
    let forall = parse_derivation("(forall-i x (raa 1 (pred S x) (not-e (assume 1 (not (pred S x))) (forall-e x (assume (forall z (pred S z)))))))").unwrap();
    assert!(matches!(find_redex(&forall, &Position(vec![0])), Err(RewriteError::ForallIntroBlock(_))));
    let root = parse_derivation(&r(1, P)).unwrap();
    assert_eq!(find_redex(&root, &Position::root()), Err(RewriteError::RootRaa));
    assert!(matches!(find_redex(&root, &Position(vec![0])), Err(RewriteError::NotRaa(_))));
    assert!(matches!(find_redex(&root, &Position(vec![7])), Err(RewriteError::InvalidPosition(_))));
}

#[test]
fn negative_reductions() {
    let nq = "(not (pred Q))";
    let imp = parse_derivation(&format!(
        "(imp-i 9 {P} (raa 1 {nq} (not-e (assume 1 (not {nq})) (imp-e (assume (imp {P} {nq})) (assume 9 {P})))))"
    ))
    .unwrap();
    let redex = find_redex_negative(&imp, &Position(vec![0])).unwrap();
    assert_eq!(redex.case, CaseTag::ImpIntroNegative);
    let out = reduce_at_negative(imp.clone(), &redex, &mut LabelSource::above(&imp)).unwrap();
    assert_eq!(check(&out).unwrap().conclusion, check(&imp).unwrap().conclusion);
    assert!(out.is_raa() && out.premises()[0].premises()[1].rule() == Some(RuleId::ImpI));
    assert!(uses_rule(&out, RuleId::NotI));
    assert_eq!(efq_count(&out), 0);

    let np = "(not (pred P x))";
    let all = parse_derivation(&format!(
        "(forall-i x (raa 1 {np} (not-e (assume 1 (not {np})) (forall-e x (assume (forall y (not (pred P y))))))))"
    ))
    .unwrap();
    let redex = find_redex_negative(&all, &Position(vec![0])).unwrap();
    let out = reduce_at_negative(all.clone(), &redex, &mut LabelSource::above(&all)).unwrap();
    check(&out).unwrap();
    assert!(!uses_rule(&out, RuleId::Raa));

    let positive = parse_derivation(&format!(
        "(imp-i 9 {P} (raa 1 {Q} (not-e (assume 1 (not {Q})) (imp-e (assume (imp {P} {Q})) (assume 9 {P})))))"
    ))
    .unwrap();
    assert!(matches!(find_redex_negative(&positive, &Position(vec![0])), Err(RewriteError::NotNegative(_))));
}

#[test]
fn triple_negation_from_the_builder() {
    let d = dne_for_negative(&Formula::neg(Formula::atom("P")), &mut LabelSource::starting_at(1)).unwrap();
    let j = check(&d).unwrap();
    assert_eq!(j.to_string(), "¬¬¬P ⊢ ¬P");
    assert!(matches!(dne_for_negative(&Formula::atom("P"), &mut LabelSource::starting_at(1)), Err(RewriteError::NotNegative(_))));
}
