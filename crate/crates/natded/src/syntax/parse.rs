use std::collections::HashMap;

use thiserror::Error;

use super::sexp::{read_all, read_one, ReadError, Sexp, SourceSpan};
use crate::kernel::build;
use crate::kernel::{Derivation, Formula, Label, Term};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxError {
    #[error("parse error at {span}: {message}")]
    Parse { span: SourceSpan, message: String },
    #[error("arity mismatch at {span}: {symbol} used with {found} arguments, earlier with {expected}")]
    ArityMismatch { span: SourceSpan, symbol: String, expected: usize, found: usize },
    /// A node whose conclusion cannot be computed from its premises.
    #[error("ill-formed inference at {span}: {message}")]
    Schema { span: SourceSpan, message: String },
}

impl SyntaxError {
    pub fn span(&self) -> SourceSpan {
        match self {
            SyntaxError::Parse { span, .. } | SyntaxError::ArityMismatch { span, .. } | SyntaxError::Schema { span, .. } => *span,
        }
    }
}

impl From<ReadError> for SyntaxError {
    fn from(e: ReadError) -> SyntaxError {
        SyntaxError::Parse { span: e.span, message: e.message }
    }
}

fn parse_err(span: SourceSpan, message: impl Into<String>) -> SyntaxError {
    SyntaxError::Parse { span, message: message.into() }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    Parser::default().formula(&read_one(text)?)
}

/// Parses every top-level formula in `text`, sharing one symbol table.
pub fn parse_formulas(text: &str) -> Result<Vec<Formula>, SyntaxError> {
    let mut p = Parser::default();
    read_all(text)?.iter().map(|s| p.formula(s)).collect()
}

pub fn parse_term(text: &str) -> Result<Term, SyntaxError> {
    Parser::default().term(&read_one(text)?)
}

pub fn parse_derivation(text: &str) -> Result<Derivation, SyntaxError> {
    Parser::default().derivation(&read_one(text)?)
}

#[derive(Default)]
struct Parser {
    preds: HashMap<String, usize>,
    funs: HashMap<String, usize>,
}

fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && chars.all(|c| c.is_alphanumeric() || c == '_' || c == '\'' || c == '-')
}

fn head(s: &Sexp) -> Option<(&str, &[Sexp])> {
    match s {
        Sexp::List(items, _) => match items.split_first() {
            Some((Sexp::Atom(h, _), rest)) => Some((h.as_str(), rest)),
            _ => None,
        },
        Sexp::Atom(..) => None,
    }
}

impl Parser {
    fn declare(table: &mut HashMap<String, usize>, name: &str, arity: usize, span: SourceSpan) -> Result<(), SyntaxError> {
        match table.get(name) {
            Some(&expected) if expected != arity => Err(SyntaxError::ArityMismatch {
                span,
                symbol: name.to_string(),
                expected,
                found: arity,
            }),
            _ => {
                table.insert(name.to_string(), arity);
                Ok(())
            }
        }
    }

    fn ident(&self, s: &Sexp, what: &str) -> Result<String, SyntaxError> {
        match s {
            Sexp::Atom(a, _) if is_identifier(a) => Ok(a.clone()),
            _ => Err(parse_err(s.span(), format!("expected {what}"))),
        }
    }

    fn label(&self, s: &Sexp) -> Result<Label, SyntaxError> {
        match s {
            Sexp::Atom(a, span) => a.parse::<u32>().map(Label).map_err(|_| parse_err(*span, "expected a numeric label")),
            _ => Err(parse_err(s.span(), "expected a numeric label")),
        }
    }

    fn arity(s: &Sexp, args: &[Sexp], n: usize, form: &str) -> Result<(), SyntaxError> {
        if args.len() == n {
            Ok(())
        } else {
            Err(parse_err(s.span(), format!("{form} takes {n} argument(s), found {}", args.len())))
        }
    }

    fn term(&mut self, s: &Sexp) -> Result<Term, SyntaxError> {
        match s {
            Sexp::Atom(..) => Ok(Term::Var(self.ident(s, "a variable")?)),
            Sexp::List(..) => match head(s) {
                Some(("fun", rest)) if !rest.is_empty() => {
                    let name = self.ident(&rest[0], "a function symbol")?;
                    let args = rest[1..].iter().map(|a| self.term(a)).collect::<Result<Vec<_>, _>>()?;
                    Self::declare(&mut self.funs, &name, args.len(), s.span())?;
                    Ok(Term::App(name, args))
                }
                _ => Err(parse_err(s.span(), "expected a term: a variable or (fun NAME term*)")),
            },
        }
    }

    fn formula(&mut self, s: &Sexp) -> Result<Formula, SyntaxError> {
        if let Sexp::Atom(a, span) = s {
            return match a.as_str() {
                "bot" => Ok(Formula::Bottom),
                "top" => Ok(Formula::Top),
                _ => Err(parse_err(*span, format!("unexpected atom '{a}' where a formula was expected"))),
            };
        }
        let (h, args) = head(s).ok_or_else(|| parse_err(s.span(), "expected a formula"))?;
        match h {
            "pred" => {
                let (name, rest) = args.split_first().ok_or_else(|| parse_err(s.span(), "pred needs a name"))?;
                let name = self.ident(name, "a predicate symbol")?;
                let terms = rest.iter().map(|t| self.term(t)).collect::<Result<Vec<_>, _>>()?;
                Self::declare(&mut self.preds, &name, terms.len(), s.span())?;
                Ok(Formula::Atom(name, terms))
            }
            "not" => {
                Self::arity(s, args, 1, "not")?;
                Ok(Formula::neg(self.formula(&args[0])?))
            }
            "and" | "or" | "imp" => {
                Self::arity(s, args, 2, h)?;
                let a = self.formula(&args[0])?;
                let b = self.formula(&args[1])?;
                Ok(match h {
                    "and" => Formula::and(a, b),
                    "or" => Formula::or(a, b),
                    _ => Formula::imp(a, b),
                })
            }
            "forall" | "exists" => {
                Self::arity(s, args, 2, h)?;
                let x = self.ident(&args[0], "a bound variable")?;
                let a = self.formula(&args[1])?;
                Ok(if h == "forall" { Formula::forall(x, a) } else { Formula::exists(x, a) })
            }
            _ => Err(parse_err(s.span(), format!("unknown formula constructor '{h}'"))),
        }
    }

    fn derivation(&mut self, s: &Sexp) -> Result<Derivation, SyntaxError> {
        let (h, args) = head(s).ok_or_else(|| parse_err(s.span(), "expected a derivation"))?;
        let span = s.span();
        let schema = |e: build::ShapeError| SyntaxError::Schema { span, message: e.to_string() };
        match h {
            "assume" => match args.len() {
                1 => Ok(build::assume(self.formula(&args[0])?)),
                2 => {
                    let l = self.label(&args[0])?;
                    Ok(build::hyp(self.formula(&args[1])?, l))
                }
                _ => Err(parse_err(span, "assume takes an optional label and a formula")),
            },
            "raa" | "not-i" => {
                if !(2..=3).contains(&args.len()) {
                    return Err(parse_err(span, format!("{h} takes a label, an optional formula and a derivation")));
                }
                let l = self.label(&args[0])?;
                let given = if args.len() == 3 { Some(self.formula(&args[1])?) } else { None };
                let premise = self.derivation(args.last().unwrap())?;
                let formula = match given {
                    Some(f) => f,
                    None => infer_discharged(&premise, l, h == "raa", span)?,
                };
                Ok(if h == "raa" { build::raa(l, formula, premise) } else { build::not_i(l, formula, premise) })
            }
            "top-i" => {
                Self::arity(s, args, 0, h)?;
                Ok(build::top_i())
            }
            "not-e" | "and-i" | "imp-e" => {
                Self::arity(s, args, 2, h)?;
                let a = self.derivation(&args[0])?;
                let b = self.derivation(&args[1])?;
                match h {
                    "not-e" => Ok(build::not_e(a, b)),
                    "and-i" => Ok(build::and_i(a, b)),
                    _ => build::imp_e(a, b).map_err(schema),
                }
            }
            "and-e1" | "and-e2" => {
                Self::arity(s, args, 1, h)?;
                let p = self.derivation(&args[0])?;
                if h == "and-e1" { build::and_e1(p) } else { build::and_e2(p) }.map_err(schema)
            }
            "or-i1" | "or-i2" => {
                Self::arity(s, args, 2, h)?;
                let other = self.formula(&args[0])?;
                let p = self.derivation(&args[1])?;
                Ok(if h == "or-i1" { build::or_i1(p, other) } else { build::or_i2(other, p) })
            }
            "or-e" => {
                Self::arity(s, args, 4, h)?;
                let l = self.label(&args[0])?;
                let major = self.derivation(&args[1])?;
                let left = self.derivation(&args[2])?;
                let right = self.derivation(&args[3])?;
                Ok(build::or_e(l, major, left, right))
            }
            "imp-i" => {
                Self::arity(s, args, 3, h)?;
                let l = self.label(&args[0])?;
                let a = self.formula(&args[1])?;
                let p = self.derivation(&args[2])?;
                Ok(build::imp_i(l, a, p))
            }
            "forall-i" => {
                Self::arity(s, args, 2, h)?;
                let x = self.ident(&args[0], "an eigenvariable")?;
                let p = self.derivation(&args[1])?;
                Ok(build::forall_i(&x, p))
            }
            "forall-e" => {
                Self::arity(s, args, 2, h)?;
                let t = self.term(&args[0])?;
                let p = self.derivation(&args[1])?;
                build::forall_e(p, t).map_err(schema)
            }
            "exists-i" => {
                Self::arity(s, args, 3, h)?;
                let target = self.formula(&args[0])?;
                let t = self.term(&args[1])?;
                let p = self.derivation(&args[2])?;
                Ok(build::exists_i(target, t, p))
            }
            "exists-e" => {
                Self::arity(s, args, 4, h)?;
                let l = self.label(&args[0])?;
                let y = self.ident(&args[1], "an eigenvariable")?;
                let major = self.derivation(&args[2])?;
                let minor = self.derivation(&args[3])?;
                Ok(build::exists_e(l, &y, major, minor))
            }
            _ => Err(parse_err(span, format!("unknown rule '{h}'"))),
        }
    }
}

/// Reads the discharged formula of a `raa`/`not-i` off its first bound leaf.
fn infer_discharged(premise: &Derivation, l: Label, is_raa: bool, span: SourceSpan) -> Result<Formula, SyntaxError> {
    let mut leaf = None;
    premise.walk(&mut |_, d| {
        if let Derivation::Assumption { formula, label: Some(x) } = d {
            if *x == l && leaf.is_none() {
                leaf = Some(formula.clone());
            }
        }
    });
    let rule = if is_raa { "raa" } else { "not-i" };
    let leaf = leaf.ok_or_else(|| SyntaxError::Schema {
        span,
        message: format!("{rule} {l} discharges nothing, so its formula must be written out"),
    })?;
    if !is_raa {
        return Ok(leaf);
    }
    leaf.as_not().cloned().ok_or_else(|| SyntaxError::Schema {
        span,
        message: format!("raa {l} discharges {leaf}, which is not a negation"),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::check;

    #[test]
    fn formula_examples() {
        let f = parse_formula("(imp (not (not (pred P))) (pred P))").unwrap();
        assert_eq!(f.to_string(), "¬¬P → P");
        let g = parse_formula("(forall x (pred P x))").unwrap();
        assert_eq!(g.to_string(), "∀x P(x)");
        assert!(matches!(parse_formula("(and (pred P))"), Err(SyntaxError::Parse { .. })));
    }

    #[test]
    fn arity_must_be_consistent() {
        let e = parse_formula("(and (pred P x) (pred P))").unwrap_err();
        assert!(matches!(e, SyntaxError::ArityMismatch { expected: 1, found: 0, .. }));
        let e = parse_formula("(and (pred P (fun f x)) (pred P (fun f x y)))").unwrap_err();
        assert!(matches!(e, SyntaxError::ArityMismatch { .. }));
    }

    #[test]
    fn derivation_examples() {
        let d = parse_derivation("(raa 1 (not-e (assume 1 (not (pred P))) (assume (pred P))))").unwrap();
        let j = check(&d).unwrap();
        assert_eq!(j.to_string(), "P ⊢ P");
        assert!(matches!(parse_derivation("(raa (assume bot))"), Err(SyntaxError::Parse { .. })));
    }

    #[test]
    fn vacuous_raa_needs_its_formula() {
        assert!(matches!(parse_derivation("(raa 1 (assume bot))"), Err(SyntaxError::Schema { .. })));
        let d = parse_derivation("(raa 1 (pred P) (assume bot))").unwrap();
        assert_eq!(check(&d).unwrap().to_string(), "⊥ ⊢ P");
    }
}
