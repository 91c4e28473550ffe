//! S-expression format for formulas and derivations, plus display renderers.

mod parse;
mod render;
mod sexp;

pub use parse::{parse_derivation, parse_formula, parse_formulas, parse_term, SyntaxError};
pub use render::{formula_latex, formula_sexp, render, render_ascii, render_latex, render_text, rule_tag, term_sexp, RenderFormat};
pub use sexp::SourceSpan;
