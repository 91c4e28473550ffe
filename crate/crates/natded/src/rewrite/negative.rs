//! Reductions for `imp_i` and `forall_i` that stay inside minimal logic when the
//! formula below the raa is negative.

use crate::kernel::build::{and_e1, and_e2, and_i, assume, forall_e, forall_i, hyp, imp_e, imp_i, not_e, not_i, raa};
use crate::kernel::{fresh_var, Annotation, Derivation, Formula, Inference, LabelSource, Position, RuleId, Term};

use super::{replace_subtree, CaseTag, Redex, RewriteError};

/// No ∨ or ∃, and every atom, ⊥ and ⊤ occurs under some negation.
pub fn is_negative(f: &Formula) -> bool {
    fn go(f: &Formula, negated: bool) -> bool {
        match f {
            Formula::Atom(..) | Formula::Bottom | Formula::Top => negated,
            Formula::Not(a) => go(a, true),
            Formula::And(a, b) | Formula::Imp(a, b) => go(a, negated) && go(b, negated),
            Formula::Forall(_, a) => go(a, negated),
            Formula::Or(..) | Formula::Exists(..) => false,
        }
    }
    go(f, false)
}

/// Minimal-logic derivation of `b` from the single open assumption `¬¬b`.
pub fn dne_for_negative(b: &Formula, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    if !is_negative(b) {
        return Err(RewriteError::NotNegative(b.clone()));
    }
    dne_from(b, assume(Formula::neg(Formula::neg(b.clone()))), labels)
}

/// From `src : ¬¬b`, derives `¬¬target` given a way to get `target` out of `b`.
fn through(
    src: Derivation,
    b: &Formula,
    target: &Formula,
    labels: &mut LabelSource,
    elim: impl FnOnce(Derivation) -> Result<Derivation, RewriteError>,
) -> Result<Derivation, RewriteError> {
    let k1 = labels.fresh();
    let k2 = labels.fresh();
    let inner = not_e(hyp(Formula::neg(target.clone()), k1), elim(hyp(b.clone(), k2))?);
    Ok(not_i(k1, Formula::neg(target.clone()), not_e(src, not_i(k2, b.clone(), inner))))
}

/// Derives `b` from `src : ¬¬b` by induction on `b`, using only minimal rules.
///
/// Defined on formulas built from ¬, ∧, → and ∀ whose implication consequents and
/// quantifier bodies are again of this kind and bottom out in a negation.
pub fn dne_from(b: &Formula, src: Derivation, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    match b {
        Formula::Not(c) => {
            let k1 = labels.fresh();
            let k2 = labels.fresh();
            let c = (**c).clone();
            let nc = Formula::neg(c.clone());
            let nnc = not_i(k2, nc.clone(), not_e(hyp(nc, k2), hyp(c.clone(), k1)));
            Ok(not_i(k1, c, not_e(src, nnc)))
        }
        Formula::And(c, d) => {
            let second = src.clone_fresh(labels);
            let nn_c = through(src, b, c, labels, |h| Ok(and_e1(h)?))?;
            let nn_d = through(second, b, d, labels, |h| Ok(and_e2(h)?))?;
            Ok(and_i(dne_from(c, nn_c, labels)?, dne_from(d, nn_d, labels)?))
        }
        Formula::Imp(c, d) => {
            let k = labels.fresh();
            let nn_d = through(src, b, d, labels, |h| Ok(imp_e(h, hyp((**c).clone(), k))?))?;
            Ok(imp_i(k, (**c).clone(), dne_from(d, nn_d, labels)?))
        }
        Formula::Forall(x, body) => {
            let mut avoid = b.free_vars();
            for f in src.open_assumptions() {
                f.free_vars_into(&mut avoid);
            }
            let z = if avoid.contains(x) { fresh_var(x, |c| avoid.contains(c)) } else { x.clone() };
            let zt = Term::Var(z.clone());
            let inst = body.subst(x, &zt);
            let nn = through(src, b, &inst, labels, |h| Ok(forall_e(h, zt)?))?;
            Ok(forall_i(&z, dne_from(&inst, nn, labels)?))
        }
        _ => Err(RewriteError::NotNegative(b.clone())),
    }
}

/// Redex for a raa directly above `imp_i` with negative consequent or `forall_i` with negative body.
pub fn find_redex_negative(d: &Derivation, raa_pos: &Position) -> Result<Redex, RewriteError> {
    let node = d.get(raa_pos).ok_or_else(|| RewriteError::InvalidPosition(raa_pos.clone()))?;
    if !node.is_raa() {
        return Err(RewriteError::NotRaa(raa_pos.clone()));
    }
    let anchor = raa_pos.parent().ok_or(RewriteError::RootRaa)?;
    let s = d.get(&anchor).expect("parent of a valid position");
    let case = match s.rule() {
        Some(RuleId::ImpI) => CaseTag::ImpIntroNegative,
        Some(RuleId::ForallI) => CaseTag::ForallIntroNegative,
        _ => {
            return Err(RewriteError::ShapeMismatch(format!(
                "raa at {raa_pos} is not directly above imp_i or forall_i"
            )))
        }
    };
    if !is_negative(node.conclusion()) {
        return Err(RewriteError::NotNegative(node.conclusion().clone()));
    }
    Ok(Redex { anchor, active: vec![0], case })
}

pub fn reduce_at_negative(d: Derivation, redex: &Redex, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    replace_subtree(d, &redex.anchor, |s| {
        let Derivation::Inference(s) = s else {
            return Err(RewriteError::ShapeMismatch("anchor is an assumption leaf".into()));
        };
        match (s.rule, redex.case) {
            (RuleId::ImpI, CaseTag::ImpIntroNegative) => imp_intro_negative(s, labels),
            (RuleId::ForallI, CaseTag::ForallIntroNegative) => forall_intro_negative(s, labels),
            (rule, case) => Err(RewriteError::ShapeMismatch(format!("case {case} does not apply to {rule}"))),
        }
    })
}

fn split_raa(p: Derivation) -> Result<(crate::kernel::Label, Derivation, Formula), RewriteError> {
    match p {
        Derivation::Inference(Inference { rule: RuleId::Raa, mut premises, conclusion, discharge: Some(l), .. }) => {
            Ok((l, premises.pop().expect("raa has a premise"), conclusion))
        }
        _ => Err(RewriteError::ShapeMismatch("the anchor's premise is not a raa instance".into())),
    }
}

fn imp_intro_negative(mut s: Inference, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let l2 = s.discharge.ok_or_else(|| RewriteError::ShapeMismatch("imp_i without label".into()))?;
    let (a, b) = s.conclusion.as_imp().map(|(a, b)| (a.clone(), b.clone())).expect("checked imp_i");
    if !is_negative(&b) {
        return Err(RewriteError::NotNegative(b));
    }
    let (l1, pi, _) = split_raa(s.premises.pop().expect("imp_i has a premise"))?;
    let neg_c = Formula::neg(s.conclusion.clone());
    let m = labels.fresh();
    let k1 = labels.fresh();
    let k0 = labels.fresh();
    let kv = labels.fresh();
    let filler = not_i(k1, b.clone(), not_e(hyp(neg_c.clone(), m), imp_i(k0, a.clone(), hyp(b.clone(), k1))));
    let nn_b = not_i(kv, Formula::neg(b.clone()), pi.plug(l1, &filler, labels));
    let proof_b = dne_from(&b, nn_b, labels)?;
    Ok(raa(m, s.conclusion, not_e(hyp(neg_c, m), imp_i(l2, a, proof_b))))
}

fn forall_intro_negative(mut s: Inference, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let Annotation::Eigen(x) = s.annotation.clone() else {
        return Err(RewriteError::ShapeMismatch("forall_i without eigenvariable".into()));
    };
    let (l, pi, a) = split_raa(s.premises.pop().expect("forall_i has a premise"))?;
    if !is_negative(&a) {
        return Err(RewriteError::NotNegative(a));
    }
    let nn_a = not_i(l, Formula::neg(a.clone()), pi);
    Ok(forall_i(&x, dne_from(&a, nn_a, labels)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::{check_in, SystemId};

    fn p() -> Formula {
        Formula::atom("P")
    }

    fn q() -> Formula {
        Formula::atom("Q")
    }

    #[test]
    fn negativity_examples() {
        assert!(is_negative(&Formula::and(Formula::neg(p()), Formula::neg(q()))));
        assert!(!is_negative(&Formula::imp(p(), Formula::neg(q()))));
        assert!(!is_negative(&Formula::or(Formula::neg(p()), Formula::neg(q()))));
        assert!(!is_negative(&Formula::Bottom));
        assert!(is_negative(&Formula::neg(Formula::Bottom)));
    }

    #[test]
    fn dne_checks_in_minimal_logic() {
        for b in [
            Formula::neg(p()),
            Formula::and(Formula::neg(p()), Formula::neg(q())),
            Formula::imp(Formula::neg(p()), Formula::neg(q())),
            Formula::forall("x", Formula::neg(Formula::pred("R", vec![Term::var("x")]))),
        ] {
            let d = dne_for_negative(&b, &mut LabelSource::starting_at(1)).unwrap();
            let j = check_in(&d, &SystemId::nm()).unwrap();
            assert_eq!(j.conclusion, b);
            assert_eq!(j.assumptions, vec![Formula::neg(Formula::neg(b.clone()))]);
        }
        assert!(matches!(dne_for_negative(&p(), &mut LabelSource::starting_at(1)), Err(RewriteError::NotNegative(_))));
    }
}
