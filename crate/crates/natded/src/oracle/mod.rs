//! Propositional decision procedures and a random derivation generator.

mod enumerate;
mod generate;
mod prover;

use thiserror::Error;

use crate::kernel::Formula;

pub use enumerate::{connective_count, enumerate_by_size, random_formula, sample_formulas, Connective, Vocabulary};
pub use generate::{gen_derivation, GeneratorProfile};
pub use prover::{
    classical_entails, classical_valid, intuitionistic_provable, minimal_provable, SequentProver,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("{0} is not propositional")]
    NotPropositional(Formula),
    #[error("{0} atoms is too many for a truth table")]
    TooManyAtoms(usize),
    #[error("no derivation matched the profile after {0} attempts")]
    GenerationExhausted(usize),
    #[error("internal error: {0}")]
    Internal(String),
}
