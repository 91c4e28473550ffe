//! Classical equivalence of a formula and its translation, by induction on the formula.

use std::collections::BTreeSet;

use crate::kernel::build::{
    and_e1, and_e2, and_i, assume, exists_e, exists_i, forall_e, forall_i, hyp, imp_e, imp_i, not_e, not_i, or_e, or_i1, or_i2, raa,
};
use crate::kernel::{check, fresh_var, Derivation, Formula, LabelSource, Term};

use super::{embed, Embedding, GlivenkoError};

/// `fwd : {A} ⊢ A'` and `bwd : {A'} ⊢ A`, both in NK.
#[derive(Debug, Clone)]
pub struct Equivalence {
    pub fwd: Derivation,
    pub bwd: Derivation,
}

pub fn classical_equiv(a: &Formula, e: Embedding, labels: &mut LabelSource) -> Equivalence {
    let fwd = forward(a, assume(a.clone()), e, labels);
    let bwd = backward(a, assume(embed(a, e)), e, labels);
    Equivalence { fwd, bwd }
}

/// A variable for instantiating `∀x`/`∃x` that is not free in `h`'s assumptions nor in `a`.
fn instance_var(x: &str, a: &Formula, h: &Derivation) -> String {
    let mut avoid: BTreeSet<String> = a.free_vars();
    for f in h.open_assumptions() {
        f.free_vars_into(&mut avoid);
    }
    if avoid.contains(x) {
        fresh_var(x, |c| avoid.contains(c))
    } else {
        x.to_string()
    }
}

const SHAPE: &str = "elimination built on a matching conclusion";

/// Turns `h : Γ ⊢ a` into a derivation of `Γ ⊢ a'`.
pub fn forward(a: &Formula, h: Derivation, e: Embedding, labels: &mut LabelSource) -> Derivation {
    match a {
        Formula::Atom(..) | Formula::Bottom | Formula::Top => h,
        Formula::Not(b) => {
            let k = labels.fresh();
            let b_ = embed(b, e);
            let back = backward(b, hyp(b_.clone(), k), e, labels);
            not_i(k, b_, not_e(h, back))
        }
        Formula::And(b, c) => {
            let h2 = h.clone_fresh(labels);
            let l = forward(b, and_e1(h).expect(SHAPE), e, labels);
            let r = forward(c, and_e2(h2).expect(SHAPE), e, labels);
            and_i(l, r)
        }
        Formula::Or(b, c) => {
            let k = labels.fresh();
            let l = or_i1(forward(b, hyp((**b).clone(), k), e, labels), embed(c, e));
            let r = or_i2(embed(b, e), forward(c, hyp((**c).clone(), k), e, labels));
            or_e(k, h, l, r)
        }
        Formula::Imp(b, c) => {
            let (b_, c_) = (embed(b, e), embed(c, e));
            match e {
                Embedding::Intuitionistic => {
                    let k = labels.fresh();
                    let arg = backward(b, hyp(b_.clone(), k), e, labels);
                    imp_i(k, b_, forward(c, imp_e(h, arg).expect(SHAPE), e, labels))
                }
                Embedding::Minimal => {
                    let target = Formula::or(Formula::neg(b_.clone()), c_.clone());
                    let neg_target = Formula::neg(target.clone());
                    let k = labels.fresh();
                    let j = labels.fresh();
                    let arg = backward(b, hyp(b_.clone(), j), e, labels);
                    let right = or_i2(Formula::neg(b_.clone()), forward(c, imp_e(h, arg).expect(SHAPE), e, labels));
                    let not_b = not_i(j, b_, not_e(hyp(neg_target.clone(), k), right));
                    raa(k, target, not_e(hyp(neg_target, k), or_i1(not_b, c_)))
                }
            }
        }
        Formula::Forall(x, b) => {
            let z = instance_var(x, a, &h);
            let zt = Term::Var(z.clone());
            let b_ = embed(b, e);
            let target = Formula::exists(x.clone(), Formula::neg(b_.clone()));
            let k = labels.fresh();
            let j = labels.fresh();
            let inst = forward(&b.subst(x, &zt), forall_e(h, zt.clone()).expect(SHAPE), e, labels);
            let refute = not_e(hyp(Formula::neg(b_.subst(x, &zt)), j), inst);
            not_i(k, target.clone(), exists_e(j, &z, hyp(target, k), refute))
        }
        Formula::Exists(x, b) => {
            let z = instance_var(x, a, &h);
            let zt = Term::Var(z.clone());
            let k = labels.fresh();
            let inst = b.subst(x, &zt);
            let body = forward(&inst, hyp(inst.clone(), k), e, labels);
            exists_e(k, &z, h, exists_i(embed(a, e), zt, body))
        }
    }
}

/// Turns `h : Γ ⊢ a'` into a derivation of `Γ ⊢ a`.
pub fn backward(a: &Formula, h: Derivation, e: Embedding, labels: &mut LabelSource) -> Derivation {
    match a {
        Formula::Atom(..) | Formula::Bottom | Formula::Top => h,
        Formula::Not(b) => {
            let k = labels.fresh();
            let there = forward(b, hyp((**b).clone(), k), e, labels);
            not_i(k, (**b).clone(), not_e(h, there))
        }
        Formula::And(b, c) => {
            let h2 = h.clone_fresh(labels);
            let l = backward(b, and_e1(h).expect(SHAPE), e, labels);
            let r = backward(c, and_e2(h2).expect(SHAPE), e, labels);
            and_i(l, r)
        }
        Formula::Or(b, c) => {
            let k = labels.fresh();
            let l = or_i1(backward(b, hyp(embed(b, e), k), e, labels), (**c).clone());
            let r = or_i2((**b).clone(), backward(c, hyp(embed(c, e), k), e, labels));
            or_e(k, h, l, r)
        }
        Formula::Imp(b, c) => {
            let (b_, c_) = (embed(b, e), embed(c, e));
            let k = labels.fresh();
            match e {
                Embedding::Intuitionistic => {
                    let arg = forward(b, hyp((**b).clone(), k), e, labels);
                    imp_i(k, (**b).clone(), backward(c, imp_e(h, arg).expect(SHAPE), e, labels))
                }
                Embedding::Minimal => {
                    let j = labels.fresh();
                    let arg = forward(b, hyp((**b).clone(), k), e, labels);
                    let efq = raa(labels.fresh(), (**c).clone(), not_e(hyp(Formula::neg(b_), j), arg));
                    let right = backward(c, hyp(c_, j), e, labels);
                    imp_i(k, (**b).clone(), or_e(j, h, efq, right))
                }
            }
        }
        Formula::Forall(x, b) => {
            let z = instance_var(x, a, &h);
            let zt = Term::Var(z.clone());
            let b_ = embed(b, e);
            let inst_ = b_.subst(x, &zt);
            let k = labels.fresh();
            let target = Formula::exists(x.clone(), Formula::neg(b_));
            let witness = exists_i(target, zt.clone(), hyp(Formula::neg(inst_.clone()), k));
            let refuted = raa(k, inst_, not_e(h, witness));
            forall_i(&z, backward(&b.subst(x, &zt), refuted, e, labels))
        }
        Formula::Exists(x, b) => {
            let z = instance_var(x, a, &h);
            let zt = Term::Var(z.clone());
            let k = labels.fresh();
            let inst = b.subst(x, &zt);
            let body = backward(&inst, hyp(embed(&inst, e), k), e, labels);
            exists_e(k, &z, h, exists_i(a.clone(), zt, body))
        }
    }
}

/// Recovers an NK derivation of `Γ ⊢ A` from one of `Γ' ⊢ ¬¬A'`.
pub fn inverse_glivenko(
    d: &Derivation,
    original: &Formula,
    gamma: &[Formula],
    e: Embedding,
    labels: &mut LabelSource,
) -> Result<Derivation, GlivenkoError> {
    let j = check(d)?;
    let a_ = embed(original, e);
    let want = Formula::neg(Formula::neg(a_.clone()));
    if j.conclusion != want {
        return Err(GlivenkoError::JudgmentMismatch(format!("expected conclusion {want}, found {}", j.conclusion)));
    }
    let gamma_: Vec<(Formula, &Formula)> = gamma.iter().map(|g| (embed(g, e), g)).collect();
    if let Some(extra) = j.assumptions.iter().find(|f| !gamma_.iter().any(|(g_, _)| g_ == *f)) {
        return Err(GlivenkoError::JudgmentMismatch(format!("assumption {extra} is not a translated member of the context")));
    }
    labels.reserve_above(d);
    let opened = d.clone().map_leaves(&mut |formula, label| match label {
        Some(_) => Derivation::Assumption { formula, label },
        None => {
            let (_, g) = gamma_.iter().find(|(g_, _)| *g_ == formula).expect("checked above");
            forward(g, assume((*g).clone()), e, labels)
        }
    });
    let k = labels.fresh();
    let refuted = raa(k, a_.clone(), not_e(opened, hyp(Formula::neg(a_), k)));
    Ok(backward(original, refuted, e, labels))
}
