//! Natural-deduction workbench: an NK proof checker, mechanical postponement of
//! reductio ad absurdum, and double-negation embeddings of classical proofs into
//! intuitionistic and minimal logic.

pub mod kernel;
pub mod syntax;
pub mod rewrite;
pub mod strategy;
pub mod glivenko;
pub mod oracle;
