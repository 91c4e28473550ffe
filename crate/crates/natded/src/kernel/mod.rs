//! Terms, formulas, derivations and the NK checker.

pub mod build;
mod check;
mod derivation;
mod formula;
mod measure;
mod term;

pub use check::{check, check_in, CheckError, Judgment, Logic, SystemId};
pub use derivation::{Annotation, Derivation, Inference, Label, LabelSource, Position, RuleId};
pub use formula::Formula;
pub use measure::{efq_count, maximal_raa, raa_report, standard_form, uses_rule, RaaInstance, RaaReport, RaaSelection, RuleQuery, StandardForm};
pub use term::{fresh_var, Term};

/// Structural equality in which binder labels may differ by a consistent renaming.
pub fn eq_up_to_labels(a: &Derivation, b: &Derivation) -> bool {
    fn go(a: &Derivation, b: &Derivation, map: &mut Vec<(Label, Label)>) -> bool {
        match (a, b) {
            (Derivation::Assumption { formula: f, label: la }, Derivation::Assumption { formula: g, label: lb }) => {
                f == g
                    && match (la, lb) {
                        (None, None) => true,
                        (Some(x), Some(y)) => match map.iter().rev().find(|(p, _)| p == x) {
                            Some((_, q)) => q == y,
                            None => x == y && !map.iter().any(|(_, q)| q == y),
                        },
                        _ => false,
                    }
            }
            (Derivation::Inference(x), Derivation::Inference(y)) => {
                if x.rule != y.rule
                    || x.conclusion != y.conclusion
                    || x.annotation != y.annotation
                    || x.premises.len() != y.premises.len()
                    || x.discharge.is_some() != y.discharge.is_some()
                {
                    return false;
                }
                x.premises.iter().zip(&y.premises).enumerate().all(|(i, (p, q))| {
                    match (x.discharge, y.discharge) {
                        (Some(l), Some(m)) if x.rule.scopes_premise(i) => {
                            map.push((l, m));
                            let r = go(p, q, map);
                            map.pop();
                            r
                        }
                        _ => go(p, q, map),
                    }
                })
            }
            _ => false,
        }
    }
    go(a, b, &mut Vec::new())
}
