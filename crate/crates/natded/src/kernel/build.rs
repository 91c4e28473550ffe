//! Constructors for rule instances.
//!
//! Builders whose conclusion is read off a premise return [`ShapeError`] when the
//! premise has the wrong main connective.

use thiserror::Error;

use super::derivation::{Annotation, Derivation, Inference, Label, RuleId};
use super::formula::Formula;
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{rule}: premise concludes {found}, expected {expected}")]
pub struct ShapeError {
    pub rule: RuleId,
    pub expected: &'static str,
    pub found: String,
}

fn shape(rule: RuleId, expected: &'static str, f: &Formula) -> ShapeError {
    ShapeError { rule, expected, found: f.to_string() }
}

fn node(rule: RuleId, premises: Vec<Derivation>, conclusion: Formula, discharge: Option<Label>, annotation: Annotation) -> Derivation {
    Derivation::Inference(Inference { rule, premises, conclusion, discharge, annotation })
}

pub fn assume(f: Formula) -> Derivation {
    Derivation::Assumption { formula: f, label: None }
}

pub fn hyp(f: Formula, label: Label) -> Derivation {
    Derivation::Assumption { formula: f, label: Some(label) }
}

/// `raa` concluding `a`; an efq when no leaf carries `label`.
pub fn raa(label: Label, a: Formula, premise: Derivation) -> Derivation {
    node(RuleId::Raa, vec![premise], a, Some(label), Annotation::None)
}

pub fn top_i() -> Derivation {
    node(RuleId::TopI, vec![], Formula::Top, None, Annotation::None)
}

/// `not_i` discharging `a`, concluding `¬a`.
pub fn not_i(label: Label, a: Formula, premise: Derivation) -> Derivation {
    node(RuleId::NotI, vec![premise], Formula::neg(a), Some(label), Annotation::None)
}

pub fn not_e(major: Derivation, minor: Derivation) -> Derivation {
    node(RuleId::NotE, vec![major, minor], Formula::Bottom, None, Annotation::None)
}

pub fn and_i(left: Derivation, right: Derivation) -> Derivation {
    let c = Formula::and(left.conclusion().clone(), right.conclusion().clone());
    node(RuleId::AndI, vec![left, right], c, None, Annotation::None)
}

pub fn and_e1(p: Derivation) -> Result<Derivation, ShapeError> {
    let (a, _) = p.conclusion().as_and().ok_or_else(|| shape(RuleId::AndE1, "a conjunction", p.conclusion()))?;
    let a = a.clone();
    Ok(node(RuleId::AndE1, vec![p], a, None, Annotation::None))
}

pub fn and_e2(p: Derivation) -> Result<Derivation, ShapeError> {
    let (_, b) = p.conclusion().as_and().ok_or_else(|| shape(RuleId::AndE2, "a conjunction", p.conclusion()))?;
    let b = b.clone();
    Ok(node(RuleId::AndE2, vec![p], b, None, Annotation::None))
}

pub fn or_i1(p: Derivation, right: Formula) -> Derivation {
    let c = Formula::or(p.conclusion().clone(), right);
    node(RuleId::OrI1, vec![p], c, None, Annotation::None)
}

pub fn or_i2(left: Formula, p: Derivation) -> Derivation {
    let c = Formula::or(left, p.conclusion().clone());
    node(RuleId::OrI2, vec![p], c, None, Annotation::None)
}

pub fn or_e(label: Label, major: Derivation, left: Derivation, right: Derivation) -> Derivation {
    let c = left.conclusion().clone();
    node(RuleId::OrE, vec![major, left, right], c, Some(label), Annotation::None)
}

/// `imp_i` discharging `a`.
pub fn imp_i(label: Label, a: Formula, premise: Derivation) -> Derivation {
    let c = Formula::imp(a, premise.conclusion().clone());
    node(RuleId::ImpI, vec![premise], c, Some(label), Annotation::None)
}

pub fn imp_e(major: Derivation, minor: Derivation) -> Result<Derivation, ShapeError> {
    let (_, b) = major.conclusion().as_imp().ok_or_else(|| shape(RuleId::ImpE, "an implication", major.conclusion()))?;
    let b = b.clone();
    Ok(node(RuleId::ImpE, vec![major, minor], b, None, Annotation::None))
}

/// `forall_i` generalizing over the eigenvariable `x`.
pub fn forall_i(x: &str, premise: Derivation) -> Derivation {
    let c = Formula::forall(x, premise.conclusion().clone());
    node(RuleId::ForallI, vec![premise], c, None, Annotation::Eigen(x.to_string()))
}

pub fn forall_e(p: Derivation, t: Term) -> Result<Derivation, ShapeError> {
    let (x, body) = p.conclusion().as_forall().ok_or_else(|| shape(RuleId::ForallE, "a universal", p.conclusion()))?;
    let c = body.subst(x, &t);
    Ok(node(RuleId::ForallE, vec![p], c, None, Annotation::Witness(t)))
}

/// `exists_i` concluding `target` from an instance of its body at `t`.
pub fn exists_i(target: Formula, t: Term, p: Derivation) -> Derivation {
    node(RuleId::ExistsI, vec![p], target, None, Annotation::Witness(t))
}

pub fn exists_e(label: Label, y: &str, major: Derivation, minor: Derivation) -> Derivation {
    let c = minor.conclusion().clone();
    node(RuleId::ExistsE, vec![major, minor], c, Some(label), Annotation::Eigen(y.to_string()))
}
