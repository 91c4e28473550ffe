use crate::kernel::build::{exists_e, exists_i, hyp, not_e, not_i, or_e, or_i1, or_i2, raa};
use crate::kernel::{Annotation, Derivation, Formula, Inference, LabelSource, RuleId};
use crate::rewrite::is_negative;

use super::{Embedding, GlivenkoError};

/// Formula translations. `MinimalStar` is partial.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationMode {
    Minimal,
    Intuitionistic,
    MinimalStar,
}

impl From<Embedding> for TranslationMode {
    fn from(e: Embedding) -> TranslationMode {
        match e {
            Embedding::Minimal => TranslationMode::Minimal,
            Embedding::Intuitionistic => TranslationMode::Intuitionistic,
        }
    }
}

pub fn translate(f: &Formula, mode: TranslationMode) -> Result<Formula, GlivenkoError> {
    let tr = |g: &Formula| translate(g, mode);
    Ok(match f {
        Formula::Atom(..) | Formula::Bottom | Formula::Top => f.clone(),
        Formula::Not(a) => Formula::neg(tr(a)?),
        Formula::And(a, b) => Formula::and(tr(a)?, tr(b)?),
        Formula::Or(a, b) => Formula::or(tr(a)?, tr(b)?),
        Formula::Exists(x, a) => Formula::exists(x.clone(), tr(a)?),
        Formula::Imp(a, b) => match mode {
            TranslationMode::Minimal => Formula::or(Formula::neg(tr(a)?), tr(b)?),
            TranslationMode::Intuitionistic => Formula::imp(tr(a)?, tr(b)?),
            TranslationMode::MinimalStar => {
                let b = tr(b)?;
                if !is_negative(&b) {
                    return Err(GlivenkoError::StarRestrictionViolated(b));
                }
                Formula::imp(tr(a)?, Formula::neg(Formula::neg(b)))
            }
        },
        Formula::Forall(x, a) => match mode {
            TranslationMode::MinimalStar => {
                let a = tr(a)?;
                if !is_negative(&a) {
                    return Err(GlivenkoError::StarRestrictionViolated(a));
                }
                Formula::forall(x.clone(), a)
            }
            _ => Formula::neg(Formula::exists(x.clone(), Formula::neg(tr(a)?))),
        },
    })
}

/// Total translation for the two pipeline embeddings.
pub fn embed(f: &Formula, e: Embedding) -> Formula {
    translate(f, e.into()).expect("only the star translation is partial")
}

/// Kuroda-style variant with `(∀x A)' = ∀x ¬¬A'`. Not used by the pipeline.
pub fn translate_kuroda_prime(f: &Formula, e: Embedding) -> Formula {
    let tr = |g: &Formula| translate_kuroda_prime(g, e);
    match f {
        Formula::Atom(..) | Formula::Bottom | Formula::Top => f.clone(),
        Formula::Not(a) => Formula::neg(tr(a)),
        Formula::And(a, b) => Formula::and(tr(a), tr(b)),
        Formula::Or(a, b) => Formula::or(tr(a), tr(b)),
        Formula::Exists(x, a) => Formula::exists(x.clone(), tr(a)),
        Formula::Imp(a, b) => match e {
            Embedding::Minimal => Formula::or(Formula::neg(tr(a)), tr(b)),
            Embedding::Intuitionistic => Formula::imp(tr(a), tr(b)),
        },
        Formula::Forall(x, a) => Formula::forall(x.clone(), Formula::neg(Formula::neg(tr(a)))),
    }
}

/// `¬A ∨ A` by raa, in NK without → and ∀ rules.
fn excluded_middle(a: &Formula, labels: &mut LabelSource) -> Derivation {
    let k1 = labels.fresh();
    let k2 = labels.fresh();
    let em = Formula::or(Formula::neg(a.clone()), a.clone());
    let neg_em = Formula::neg(em.clone());
    let not_a = not_i(k1, a.clone(), not_e(hyp(neg_em.clone(), k2), or_i2(Formula::neg(a.clone()), hyp(a.clone(), k1))));
    raa(k2, em, not_e(hyp(neg_em, k2), or_i1(not_a, a.clone())))
}

/// Rebuilds a derivation of `Γ ⊢ A` as one of `Γ' ⊢ A'` rule by rule.
///
/// `labels` must be above every label of `d`. The minimal embedding emits no →
/// or ∀ rule; the intuitionistic one emits no ∀ rule.
pub fn translate_derivation(d: &Derivation, e: Embedding, labels: &mut LabelSource) -> Result<Derivation, GlivenkoError> {
    labels.reserve_above(d);
    go(d, e, labels)
}

fn go(d: &Derivation, e: Embedding, labels: &mut LabelSource) -> Result<Derivation, GlivenkoError> {
    let inf = match d {
        Derivation::Assumption { formula, label } => {
            return Ok(Derivation::Assumption { formula: embed(formula, e), label: *label });
        }
        Derivation::Inference(inf) => inf,
    };
    let mut premises = inf.premises.iter().map(|p| go(p, e, labels)).collect::<Result<Vec<_>, _>>()?;
    let tr = |f: &Formula| embed(f, e);
    let minimal = e == Embedding::Minimal;
    let out = match inf.rule {
        RuleId::ImpI if minimal => {
            let l = inf.discharge.expect("imp_i binds a label");
            let (a, b) = inf.conclusion.as_imp().expect("checked imp_i");
            let (a, b) = (tr(a), tr(b));
            let body = premises.pop().unwrap();
            let left = or_i1(hyp(Formula::neg(a.clone()), l), b);
            let right = or_i2(Formula::neg(a.clone()), body);
            or_e(l, excluded_middle(&a, labels), left, right)
        }
        RuleId::ImpE if minimal => {
            let minor = premises.pop().unwrap();
            let major = premises.pop().unwrap();
            let a = tr(inf.premises[1].conclusion());
            let b = tr(&inf.conclusion);
            let k = labels.fresh();
            let efq = raa(labels.fresh(), b.clone(), not_e(hyp(Formula::neg(a), k), minor));
            or_e(k, major, efq, hyp(b, k))
        }
        RuleId::ForallI => {
            let Annotation::Eigen(x) = &inf.annotation else { unreachable!("checked forall_i") };
            let (_, body) = inf.conclusion.as_forall().expect("checked forall_i");
            let body = tr(body);
            let target = Formula::exists(x.clone(), Formula::neg(body.clone()));
            let k1 = labels.fresh();
            let k2 = labels.fresh();
            let refute = not_e(hyp(Formula::neg(body), k1), premises.pop().unwrap());
            not_i(k2, target.clone(), exists_e(k1, x, hyp(target, k2), refute))
        }
        RuleId::ForallE => {
            let Annotation::Witness(t) = &inf.annotation else { unreachable!("checked forall_e") };
            let (x, body) = inf.premises[0].conclusion().as_forall().expect("checked forall_e");
            let body = tr(body);
            let inst = body.subst(x, t);
            let k = labels.fresh();
            let target = Formula::exists(x.to_string(), Formula::neg(body));
            let witness = exists_i(target, t.clone(), hyp(Formula::neg(inst.clone()), k));
            raa(k, inst, not_e(premises.pop().unwrap(), witness))
        }
        rule => Derivation::Inference(Inference {
            rule,
            premises,
            conclusion: tr(&inf.conclusion),
            discharge: inf.discharge,
            annotation: inf.annotation.clone(),
        }),
    };
    Ok(out)
}
