use std::collections::{BTreeSet, HashSet};
use std::fmt;

use thiserror::Error;

use super::derivation::{Annotation, Derivation, Inference, Label, Position, RuleId};
use super::formula::Formula;
use super::term::Term;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CheckError {
    #[error("schema mismatch at {at}: {detail}")]
    SchemaMismatch { at: Position, detail: String },
    #[error("bad discharge at {at}: {detail}")]
    BadDischarge { at: Position, detail: String },
    #[error("eigenvariable violation at {at}: {detail}")]
    EigenvariableViolation { at: Position, detail: String },
    #[error("unbound label {label} at {at}")]
    UnboundLabel { at: Position, label: Label },
    #[error("annotation mismatch at {at}: {detail}")]
    AnnotationMismatch { at: Position, detail: String },
    #[error("label {label} bound twice (second binder at {at})")]
    DuplicateLabel { at: Position, label: Label },
    #[error("rule {rule} at {at} is not admitted by {system}")]
    OutsideSystem { at: Position, rule: RuleId, system: SystemId },
}

impl CheckError {
    pub fn position(&self) -> &Position {
        match self {
            CheckError::SchemaMismatch { at, .. }
            | CheckError::BadDischarge { at, .. }
            | CheckError::EigenvariableViolation { at, .. }
            | CheckError::UnboundLabel { at, .. }
            | CheckError::AnnotationMismatch { at, .. }
            | CheckError::DuplicateLabel { at, .. }
            | CheckError::OutsideSystem { at, .. } => at,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CheckError::SchemaMismatch { .. } => "SchemaMismatch",
            CheckError::BadDischarge { .. } => "BadDischarge",
            CheckError::EigenvariableViolation { .. } => "EigenvariableViolation",
            CheckError::UnboundLabel { .. } => "UnboundLabel",
            CheckError::AnnotationMismatch { .. } => "AnnotationMismatch",
            CheckError::DuplicateLabel { .. } => "DuplicateLabel",
            CheckError::OutsideSystem { .. } => "OutsideSystem",
        }
    }
}

/// `Γ ⊢ A` with Γ the exact set of undischarged assumptions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Judgment {
    pub assumptions: Vec<Formula>,
    pub conclusion: Formula,
}

impl Judgment {
    pub fn assumptions_within(&self, gamma: &[Formula]) -> bool {
        self.assumptions.iter().all(|a| gamma.contains(a))
    }

    pub fn same_assumptions(&self, other: &Judgment) -> bool {
        self.assumptions_within(&other.assumptions) && other.assumptions_within(&self.assumptions)
    }
}

impl fmt::Display for Judgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gamma: Vec<String> = self.assumptions.iter().map(|a| a.to_string()).collect();
        if gamma.is_empty() {
            write!(f, "⊢ {}", self.conclusion)
        } else {
            write!(f, "{} ⊢ {}", gamma.join(", "), self.conclusion)
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Logic {
    Minimal,
    Intuitionistic,
    Classical,
}

/// NM, NJ or NK, optionally with some rules removed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SystemId {
    pub logic: Logic,
    pub excluded: BTreeSet<RuleId>,
}

impl SystemId {
    pub fn nm() -> SystemId {
        SystemId { logic: Logic::Minimal, excluded: BTreeSet::new() }
    }

    pub fn nj() -> SystemId {
        SystemId { logic: Logic::Intuitionistic, excluded: BTreeSet::new() }
    }

    pub fn nk() -> SystemId {
        SystemId { logic: Logic::Classical, excluded: BTreeSet::new() }
    }

    pub fn without(mut self, rules: &[RuleId]) -> SystemId {
        self.excluded.extend(rules.iter().copied());
        self
    }

    /// First node not admitted by this system.
    pub fn violation(&self, d: &Derivation) -> Option<(Position, RuleId)> {
        let mut bad = None;
        d.walk(&mut |pos, n| {
            if bad.is_some() {
                return;
            }
            let Some(rule) = n.rule() else { return };
            let rejected = self.excluded.contains(&rule)
                || (rule == RuleId::Raa
                    && match self.logic {
                        Logic::Minimal => true,
                        Logic::Intuitionistic => n.discharges_any(),
                        Logic::Classical => false,
                    });
            if rejected {
                bad = Some((pos.clone(), rule));
            }
        });
        bad
    }

    pub fn admits(&self, d: &Derivation) -> bool {
        self.violation(d).is_none()
    }
}

impl fmt::Display for SystemId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let base = match self.logic {
            Logic::Minimal => "NM",
            Logic::Intuitionistic => "NJ",
            Logic::Classical => "NK",
        };
        f.write_str(base)?;
        if !self.excluded.is_empty() {
            let names: Vec<&str> = self.excluded.iter().map(|r| r.name()).collect();
            write!(f, "∖{{{}}}", names.join(", "))?;
        }
        Ok(())
    }
}

struct Open {
    formula: Formula,
    label: Option<Label>,
    at: Position,
}

/// Validates `d` against the rules of NK and returns its exact judgment.
pub fn check(d: &Derivation) -> Result<Judgment, CheckError> {
    let mut seen = HashSet::new();
    let mut dup = None;
    d.walk(&mut |pos, n| {
        if let Some(l) = n.as_inference().and_then(|i| i.discharge) {
            if !seen.insert(l) && dup.is_none() {
                dup = Some(CheckError::DuplicateLabel { at: pos.clone(), label: l });
            }
        }
    });
    if let Some(e) = dup {
        return Err(e);
    }
    let open = node(d, &mut Vec::new())?;
    let mut assumptions: Vec<Formula> = Vec::new();
    for o in open {
        if let Some(label) = o.label {
            return Err(CheckError::UnboundLabel { at: o.at, label });
        }
        if !assumptions.contains(&o.formula) {
            assumptions.push(o.formula);
        }
    }
    Ok(Judgment { assumptions, conclusion: d.conclusion().clone() })
}

/// [`check`] plus membership in `system`.
pub fn check_in(d: &Derivation, system: &SystemId) -> Result<Judgment, CheckError> {
    let j = check(d)?;
    match system.violation(d) {
        Some((at, rule)) => Err(CheckError::OutsideSystem { at, rule, system: system.clone() }),
        None => Ok(j),
    }
}

fn schema(at: &[usize], detail: impl Into<String>) -> CheckError {
    CheckError::SchemaMismatch { at: Position(at.to_vec()), detail: detail.into() }
}

fn expect_eq(at: &[usize], found: &Formula, expected: &Formula, what: &str) -> Result<(), CheckError> {
    if found == expected {
        Ok(())
    } else {
        Err(schema(at, format!("{what}: expected {expected}, found {found}")))
    }
}

/// Removes the leaves labelled `label` from `opens`, checking each against `expected`.
fn bind(opens: Vec<Open>, label: Label, expected: &Formula) -> Result<Vec<Open>, CheckError> {
    let mut rest = Vec::with_capacity(opens.len());
    for o in opens {
        if o.label == Some(label) {
            if o.formula != *expected {
                return Err(CheckError::BadDischarge {
                    at: o.at,
                    detail: format!("label {label} discharges {expected}, leaf is {}", o.formula),
                });
            }
        } else {
            rest.push(o);
        }
    }
    Ok(rest)
}

fn node(d: &Derivation, path: &mut Vec<usize>) -> Result<Vec<Open>, CheckError> {
    let inf = match d {
        Derivation::Assumption { formula, label } => {
            return Ok(vec![Open { formula: formula.clone(), label: *label, at: Position(path.clone()) }]);
        }
        Derivation::Inference(inf) => inf,
    };
    let Inference { rule, premises, conclusion, discharge, annotation } = inf;
    let rule = *rule;
    if premises.len() != rule.arity() {
        return Err(schema(path, format!("{rule} takes {} premises, found {}", rule.arity(), premises.len())));
    }
    if rule.binds() != discharge.is_some() {
        return Err(schema(path, format!("{rule} {} a discharge label", if rule.binds() { "requires" } else { "takes no" })));
    }
    let annotation_ok = match rule {
        RuleId::ForallE | RuleId::ExistsI => matches!(annotation, Annotation::Witness(_)),
        RuleId::ForallI | RuleId::ExistsE => matches!(annotation, Annotation::Eigen(_)),
        _ => matches!(annotation, Annotation::None),
    };
    if !annotation_ok {
        return Err(schema(path, format!("{rule} has the wrong kind of annotation")));
    }

    let mut opens = Vec::with_capacity(premises.len());
    for (i, p) in premises.iter().enumerate() {
        path.push(i);
        let r = node(p, path);
        path.pop();
        opens.push(r?);
    }
    let concl = |i: usize| premises[i].conclusion();
    let at = path.as_slice();
    let bottom = Formula::Bottom;

    let mut out: Option<Vec<Open>> = None;
    match rule {
        RuleId::Raa => {
            expect_eq(at, concl(0), &bottom, "raa premise")?;
            let o = opens.pop().unwrap();
            out = Some(bind(o, discharge.unwrap(), &Formula::neg(conclusion.clone()))?);
        }
        RuleId::TopI => expect_eq(at, conclusion, &Formula::Top, "top_i conclusion")?,
        RuleId::NotI => {
            let a = conclusion.as_not().ok_or_else(|| schema(at, "not_i must conclude a negation"))?;
            expect_eq(at, concl(0), &bottom, "not_i premise")?;
            let o = opens.pop().unwrap();
            out = Some(bind(o, discharge.unwrap(), a)?);
        }
        RuleId::NotE => {
            let a = concl(0).as_not().ok_or_else(|| schema(at, "not_e major premise must be a negation"))?;
            expect_eq(at, concl(1), a, "not_e minor premise")?;
            expect_eq(at, conclusion, &bottom, "not_e conclusion")?;
        }
        RuleId::AndI => {
            let want = Formula::and(concl(0).clone(), concl(1).clone());
            expect_eq(at, conclusion, &want, "and_i conclusion")?;
        }
        RuleId::AndE1 | RuleId::AndE2 => {
            let (a, b) = concl(0).as_and().ok_or_else(|| schema(at, format!("{rule} premise must be a conjunction")))?;
            let want = if rule == RuleId::AndE1 { a } else { b };
            expect_eq(at, conclusion, want, "conjunct")?;
        }
        RuleId::OrI1 | RuleId::OrI2 => {
            let (a, b) = conclusion.as_or().ok_or_else(|| schema(at, format!("{rule} must conclude a disjunction")))?;
            let want = if rule == RuleId::OrI1 { a } else { b };
            expect_eq(at, concl(0), want, "disjunct")?;
        }
        RuleId::OrE => {
            let (a, b) = concl(0).as_or().ok_or_else(|| schema(at, "or_e major premise must be a disjunction"))?;
            expect_eq(at, concl(1), conclusion, "or_e left minor")?;
            expect_eq(at, concl(2), conclusion, "or_e right minor")?;
            let l = discharge.unwrap();
            let right = bind(opens.pop().unwrap(), l, b)?;
            let left = bind(opens.pop().unwrap(), l, a)?;
            let mut all = opens.pop().unwrap();
            all.extend(left);
            all.extend(right);
            out = Some(all);
        }
        RuleId::ImpI => {
            let (a, b) = conclusion.as_imp().ok_or_else(|| schema(at, "imp_i must conclude an implication"))?;
            expect_eq(at, concl(0), b, "imp_i premise")?;
            out = Some(bind(opens.pop().unwrap(), discharge.unwrap(), a)?);
        }
        RuleId::ImpE => {
            let (a, b) = concl(0).as_imp().ok_or_else(|| schema(at, "imp_e major premise must be an implication"))?;
            expect_eq(at, concl(1), a, "imp_e minor premise")?;
            expect_eq(at, conclusion, b, "imp_e conclusion")?;
        }
        RuleId::ForallI => {
            let Annotation::Eigen(x) = annotation else { unreachable!() };
            expect_eq(at, conclusion, &Formula::forall(x.clone(), concl(0).clone()), "forall_i conclusion")?;
            if let Some(o) = opens[0].iter().find(|o| o.formula.has_free(x)) {
                return Err(CheckError::EigenvariableViolation {
                    at: Position(at.to_vec()),
                    detail: format!("{x} is free in the open assumption {}", o.formula),
                });
            }
        }
        RuleId::ForallE => {
            let Annotation::Witness(t) = annotation else { unreachable!() };
            let (x, body) = concl(0).as_forall().ok_or_else(|| schema(at, "forall_e premise must be universal"))?;
            let want = body.subst(x, t);
            if *conclusion != want {
                return Err(CheckError::AnnotationMismatch {
                    at: Position(at.to_vec()),
                    detail: format!("instantiating at {t} gives {want}, conclusion is {conclusion}"),
                });
            }
        }
        RuleId::ExistsI => {
            let Annotation::Witness(t) = annotation else { unreachable!() };
            let (x, body) = conclusion.as_exists().ok_or_else(|| schema(at, "exists_i must conclude an existential"))?;
            let want = body.subst(x, t);
            if *concl(0) != want {
                return Err(CheckError::AnnotationMismatch {
                    at: Position(at.to_vec()),
                    detail: format!("instantiating at {t} gives {want}, premise is {}", concl(0)),
                });
            }
        }
        RuleId::ExistsE => {
            let Annotation::Eigen(y) = annotation else { unreachable!() };
            let major = concl(0);
            let (x, body) = major.as_exists().ok_or_else(|| schema(at, "exists_e major premise must be existential"))?;
            expect_eq(at, concl(1), conclusion, "exists_e minor premise")?;
            let instance = body.subst(x, &Term::Var(y.clone()));
            let minor = bind(opens.pop().unwrap(), discharge.unwrap(), &instance)?;
            let violation = if conclusion.has_free(y) {
                Some(format!("{y} is free in the conclusion {conclusion}"))
            } else if major.has_free(y) {
                Some(format!("{y} is free in the major premise {major}"))
            } else {
                minor.iter().find(|o| o.formula.has_free(y)).map(|o| format!("{y} is free in the open assumption {}", o.formula))
            };
            if let Some(detail) = violation {
                return Err(CheckError::EigenvariableViolation { at: Position(at.to_vec()), detail });
            }
            let mut all = opens.pop().unwrap();
            all.extend(minor);
            out = Some(all);
        }
    }
    Ok(out.unwrap_or_else(|| opens.into_iter().flatten().collect()))
}
