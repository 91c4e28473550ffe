use crate::kernel::build::{hyp, imp_i, not_e, not_i, or_e, exists_e, raa};
use crate::kernel::{Annotation, Derivation, Formula, Inference, Label, LabelSource, RuleId};

use super::{dispatch, CaseTag, ReduceOptions, Redex, RewriteError};

struct OpenRaa {
    label: Label,
    premise: Derivation,
    conclusion: Formula,
}

fn internal(msg: impl Into<String>) -> RewriteError {
    RewriteError::InternalShapeError(msg.into())
}

fn open_raa(d: Derivation) -> Result<OpenRaa, RewriteError> {
    match d {
        Derivation::Inference(Inference { rule: RuleId::Raa, mut premises, conclusion, discharge: Some(label), .. }) => {
            let premise = premises.pop().ok_or_else(|| internal("raa without premise"))?;
            Ok(OpenRaa { label, premise, conclusion })
        }
        other => Err(internal(format!("expected a raa instance concluding {}", other.conclusion()))),
    }
}

fn take(d: &mut Derivation) -> Derivation {
    std::mem::replace(d, Derivation::Assumption { formula: Formula::Bottom, label: None })
}

/// `¬i^k` over the leaf `⊥^k`, a closed derivation of `¬⊥`.
fn not_bottom(labels: &mut LabelSource) -> Derivation {
    let k = labels.fresh();
    not_i(k, Formula::Bottom, hyp(Formula::Bottom, k))
}

pub(super) fn reduce_local(
    s: Derivation,
    redex: &Redex,
    labels: &mut LabelSource,
    opts: ReduceOptions,
) -> Result<Derivation, RewriteError> {
    let Derivation::Inference(s) = s else { return Err(internal("anchor is an assumption leaf")) };
    let actual: Vec<usize> = s.premises.iter().enumerate().filter(|(_, p)| p.is_raa()).map(|(i, _)| i).collect();
    let consistent = match (s.rule, redex.case) {
        (RuleId::Raa, CaseTag::EfqBelow | CaseTag::RaaBelow) => redex.active.len() == 1 && actual == redex.active,
        (RuleId::ImpI, CaseTag::ImpIntroNegative) | (RuleId::ForallI, CaseTag::ForallIntroNegative) => actual == [0],
        (rule, case) => actual == redex.active && dispatch(rule, &actual) == Some(case),
    };
    if !consistent {
        return Err(RewriteError::ShapeMismatch(format!(
            "redex {} does not match {} with raa premises {actual:?}",
            redex, s.rule
        )));
    }
    match redex.case {
        CaseTag::NotIntro | CaseTag::EfqBelow | CaseTag::RaaBelow => bottom_below(s, redex.active[0], labels),
        CaseTag::NotElimMinor => {
            let mut s = s;
            let r = open_raa(take(&mut s.premises[1]))?;
            let major = take(&mut s.premises[0]);
            Ok(r.premise.plug(r.label, &major, labels))
        }
        CaseTag::NotElimMajor
        | CaseTag::AndIntroLeft
        | CaseTag::AndIntroRight
        | CaseTag::AndElim1
        | CaseTag::AndElim2
        | CaseTag::OrIntro1
        | CaseTag::OrIntro2
        | CaseTag::ImpElimMajor
        | CaseTag::ImpElimMinor
        | CaseTag::ForallElim
        | CaseTag::ExistsIntro => Ok(single(s, redex.active[0], labels)?),
        CaseTag::NotElimBoth | CaseTag::AndIntroBoth | CaseTag::ImpElimBoth => both(s, labels, opts.swap_symmetric),
        CaseTag::OrElimMajor
        | CaseTag::OrElimLeft
        | CaseTag::OrElimRight
        | CaseTag::OrElimMinors
        | CaseTag::OrElimMajorLeft
        | CaseTag::OrElimMajorRight
        | CaseTag::OrElimAll => or_elim(s, labels),
        CaseTag::ExistsElimMajor | CaseTag::ExistsElimMinor | CaseTag::ExistsElimBoth => exists_elim(s, labels),
        CaseTag::ImpIntro => imp_intro(s, labels),
        CaseTag::ImpIntroNegative | CaseTag::ForallIntroNegative => {
            Err(internal("negative-formula cases are fired by reduce_at_negative"))
        }
    }
}

/// The focused raa concludes ⊥: its `¬⊥` leaves become closed proofs of `¬⊥`.
fn bottom_below(mut s: Inference, i: usize, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let r = open_raa(take(&mut s.premises[i]))?;
    if !r.conclusion.is_bottom() {
        return Err(internal(format!("raa above {} must conclude ⊥, found {}", s.rule, r.conclusion)));
    }
    let filler = not_bottom(labels);
    s.premises[i] = r.premise.plug(r.label, &filler, labels);
    Ok(Derivation::Inference(s))
}

/// One active premise: the anchor moves above the raa, applied to a fresh hypothesis.
///
/// For a `not_e` anchor the anchor already concludes ⊥ and no new raa is needed.
fn single(mut s: Inference, i: usize, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let r = open_raa(take(&mut s.premises[i]))?;
    let k = labels.fresh();
    s.premises[i] = hyp(r.conclusion.clone(), k);
    if s.rule == RuleId::NotE {
        let filler = not_i(k, r.conclusion, Derivation::Inference(s));
        return Ok(r.premise.plug(r.label, &filler, labels));
    }
    let c = s.conclusion.clone();
    let m = labels.fresh();
    let core = not_e(hyp(Formula::neg(c.clone()), m), Derivation::Inference(s));
    let filler = not_i(k, r.conclusion, core);
    Ok(raa(m, c, r.premise.plug(r.label, &filler, labels)))
}

/// Both premises active: the second refutation is nested inside the first one
/// (or the other way round when `swap` is set).
fn both(mut s: Inference, labels: &mut LabelSource, swap: bool) -> Result<Derivation, RewriteError> {
    let r0 = open_raa(take(&mut s.premises[0]))?;
    let r1 = open_raa(take(&mut s.premises[1]))?;
    let k_outer = labels.fresh();
    let k_inner = labels.fresh();
    let (outer, inner, outer_idx) = if swap { (r1, r0, 1) } else { (r0, r1, 0) };
    s.premises[outer_idx] = hyp(outer.conclusion.clone(), k_outer);
    s.premises[1 - outer_idx] = hyp(inner.conclusion.clone(), k_inner);
    let wrap = s.rule != RuleId::NotE;
    let c = s.conclusion.clone();
    let m = labels.fresh();
    let core = if wrap {
        not_e(hyp(Formula::neg(c.clone()), m), Derivation::Inference(s))
    } else {
        Derivation::Inference(s)
    };
    let inner_filler = not_i(k_inner, inner.conclusion, core);
    let middle = inner.premise.plug(inner.label, &inner_filler, labels);
    let outer_filler = not_i(k_outer, outer.conclusion, middle);
    let body = outer.premise.plug(outer.label, &outer_filler, labels);
    Ok(if wrap { raa(m, c, body) } else { body })
}

fn or_elim(s: Inference, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let l = s.discharge.ok_or_else(|| internal("or_e without label"))?;
    let c = s.conclusion;
    let [major, left, right]: [Derivation; 3] = s.premises.try_into().map_err(|_| internal("or_e arity"))?;
    let disjunction = major.conclusion().clone();
    let m = [&left, &right]
        .iter()
        .find_map(|p| p.as_inference().filter(|i| i.rule == RuleId::Raa).and_then(|i| i.discharge))
        .unwrap_or_else(|| labels.fresh());
    let branch = |minor: Derivation| -> Result<Derivation, RewriteError> {
        if minor.is_raa() {
            let r = open_raa(minor)?;
            Ok(r.premise.relabel_leaves(r.label, m))
        } else {
            Ok(not_e(hyp(Formula::neg(c.clone()), m), minor))
        }
    };
    let b1 = branch(left)?;
    let b2 = branch(right)?;
    let body = if major.is_raa() {
        let r = open_raa(major)?;
        let k = labels.fresh();
        let filler = not_i(k, disjunction.clone(), or_e(l, hyp(disjunction, k), b1, b2));
        r.premise.plug(r.label, &filler, labels)
    } else {
        or_e(l, major, b1, b2)
    };
    Ok(raa(m, c, body))
}

fn exists_elim(s: Inference, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let l = s.discharge.ok_or_else(|| internal("exists_e without label"))?;
    let Annotation::Eigen(y) = s.annotation else { return Err(internal("exists_e without eigenvariable")) };
    let c = s.conclusion;
    let [major, minor]: [Derivation; 2] = s.premises.try_into().map_err(|_| internal("exists_e arity"))?;
    let existential = major.conclusion().clone();
    let (m, b) = if minor.is_raa() {
        let r = open_raa(minor)?;
        (r.label, r.premise)
    } else {
        let m = labels.fresh();
        (m, not_e(hyp(Formula::neg(c.clone()), m), minor))
    };
    let body = if major.is_raa() {
        let r = open_raa(major)?;
        let k = labels.fresh();
        let filler = not_i(k, existential.clone(), exists_e(l, &y, hyp(existential, k), b));
        r.premise.plug(r.label, &filler, labels)
    } else {
        exists_e(l, &y, major, b)
    };
    Ok(raa(m, c, body))
}

/// The only case that introduces an efq.
fn imp_intro(mut s: Inference, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    let l2 = s.discharge.ok_or_else(|| internal("imp_i without label"))?;
    let (a, b) = s.conclusion.as_imp().map(|(a, b)| (a.clone(), b.clone())).ok_or_else(|| internal("imp_i conclusion"))?;
    let r = open_raa(take(&mut s.premises[0]))?;
    let neg_c = Formula::neg(s.conclusion.clone());
    let m = labels.fresh();
    let k1 = labels.fresh();
    let k0 = labels.fresh();
    let e = labels.fresh();
    let filler = not_i(k1, b.clone(), not_e(hyp(neg_c.clone(), m), imp_i(k0, a.clone(), hyp(b.clone(), k1))));
    let efq = raa(e, b, r.premise.plug(r.label, &filler, labels));
    Ok(raa(m, s.conclusion, not_e(hyp(neg_c, m), imp_i(l2, a, efq))))
}
