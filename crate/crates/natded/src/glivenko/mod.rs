//! Double-negation embeddings of classical derivations into intuitionistic and
//! minimal logic.

mod equiv;
mod translate;

use thiserror::Error;

use crate::kernel::build::{assume, hyp, imp_e, imp_i, not_e, not_i};
use crate::kernel::{check, check_in, CheckError, Derivation, Formula, Inference, LabelSource, RuleId, SystemId};
use crate::strategy::{postpone, StrategyError, Target};

pub use equiv::{backward, classical_equiv, forward, inverse_glivenko, Equivalence};
pub use translate::{embed, translate, translate_derivation, translate_kuroda_prime, TranslationMode};

/// Target of a derivation-level embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Embedding {
    Minimal,
    Intuitionistic,
}

impl Embedding {
    /// NM or NJ.
    pub fn system(self) -> SystemId {
        match self {
            Embedding::Minimal => SystemId::nm(),
            Embedding::Intuitionistic => SystemId::nj(),
        }
    }

    fn target(self) -> Target {
        match self {
            Embedding::Minimal => Target::M,
            Embedding::Intuitionistic => Target::J,
        }
    }

    /// Whether `f` lies in the fragment on which the translation is the identity.
    pub fn preserves(self, f: &Formula) -> bool {
        match self {
            Embedding::Minimal => !f.contains_imp() && !f.contains_forall(),
            Embedding::Intuitionistic => !f.contains_forall(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GlivenkoError {
    #[error("{0} is not negative, as the star translation requires")]
    StarRestrictionViolated(Formula),
    #[error("input does not check: {0}")]
    Check(#[from] CheckError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("conclusion {0} is not ⊥")]
    NotRefutation(Formula),
    #[error("assumption {0} is outside the fragment of the chosen logic")]
    VocabularyViolation(Formula),
    #[error("judgment mismatch: {0}")]
    JudgmentMismatch(String),
    #[error("internal error: {0}")]
    Internal(String),
}

#[derive(Debug, Clone)]
pub struct GlivenkoOutput {
    /// `Γ' ⊢ ¬¬A'`.
    pub double_negation: Derivation,
    /// `Γ', ¬A' ⊢ ⊥`.
    pub refutation: Derivation,
}

/// Translates `d : Γ ⊢ A`, postpones every raa to the root, and turns that raa into `¬i`.
pub fn glivenko(d: &Derivation, e: Embedding, labels: &mut LabelSource) -> Result<GlivenkoOutput, GlivenkoError> {
    check(d)?;
    let translated = translate_derivation(d, e, labels)?;
    let (standard, _) = postpone(translated, e.target())?;
    labels.reserve_above(&standard);
    let a_ = standard.conclusion().clone();
    let not_a = Formula::neg(a_.clone());
    let out = match standard {
        Derivation::Inference(Inference { rule: RuleId::Raa, mut premises, discharge: Some(l), .. }) => {
            let body = premises.pop().expect("raa has a premise");
            GlivenkoOutput { double_negation: not_i(l, not_a, body.clone()), refutation: body.open_leaves(l) }
        }
        p => {
            let k = labels.fresh();
            GlivenkoOutput {
                double_negation: not_i(k, not_a.clone(), not_e(hyp(not_a.clone(), k), p.clone())),
                refutation: not_e(assume(not_a), p),
            }
        }
    };
    for part in [&out.double_negation, &out.refutation] {
        check_in(part, &e.system()).map_err(|err| GlivenkoError::Internal(format!("embedded derivation: {err}")))?;
    }
    Ok(out)
}

/// `d : Γ ⊢ ¬¬¬B` becomes `Γ ⊢ ¬B` through `¬¬¬B → ¬B`, using only minimal rules.
pub fn strip_triple_negation(d: Derivation, labels: &mut LabelSource) -> Result<Derivation, GlivenkoError> {
    let j = check(&d)?;
    let b = j
        .conclusion
        .as_not()
        .and_then(Formula::as_not)
        .and_then(Formula::as_not)
        .ok_or_else(|| GlivenkoError::ShapeMismatch(format!("{} is not a triple negation", j.conclusion)))?
        .clone();
    labels.reserve_above(&d);
    let k1 = labels.fresh();
    let k2 = labels.fresh();
    let k3 = labels.fresh();
    let nnn = j.conclusion.clone();
    let nb = Formula::neg(b.clone());
    let nnb = not_i(k1, nb.clone(), not_e(hyp(nb, k1), hyp(b.clone(), k2)));
    let lemma = imp_i(k3, nnn.clone(), not_i(k2, b, not_e(hyp(nnn, k3), nnb)));
    imp_e(lemma, d).map_err(|err| GlivenkoError::Internal(err.to_string()))
}

/// Turns a classical refutation `Γ ⊢ ⊥` into a minimal or intuitionistic one.
pub fn consistency_transfer(d: &Derivation, e: Embedding, labels: &mut LabelSource) -> Result<Derivation, GlivenkoError> {
    let j = check(d)?;
    if !j.conclusion.is_bottom() {
        return Err(GlivenkoError::NotRefutation(j.conclusion));
    }
    if let Some(bad) = j.assumptions.iter().find(|g| !e.preserves(g)) {
        return Err(GlivenkoError::VocabularyViolation(bad.clone()));
    }
    let out = glivenko(d, e, labels)?;
    let not_bot = Formula::neg(Formula::Bottom);
    let out = out.refutation.map_leaves(&mut |formula, label| {
        if label.is_none() && formula == not_bot {
            let k = labels.fresh();
            not_i(k, Formula::Bottom, hyp(Formula::Bottom, k))
        } else {
            Derivation::Assumption { formula, label }
        }
    });
    Ok(out)
}
