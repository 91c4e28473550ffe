//! Single-step reductions that push a raa instance one rule further down.

mod cases;
mod negative;

use std::fmt;

use thiserror::Error;

use crate::kernel::{build::ShapeError, Derivation, Formula, LabelSource, Position, RuleId};

pub use negative::{dne_for_negative, dne_from, find_redex_negative, is_negative, reduce_at_negative};

/// Which reduction scheme fires, determined by the anchor rule and its active premises.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    NotIntro,
    NotElimMajor,
    NotElimMinor,
    NotElimBoth,
    AndIntroLeft,
    AndIntroRight,
    AndIntroBoth,
    AndElim1,
    AndElim2,
    OrIntro1,
    OrIntro2,
    OrElimMajor,
    OrElimLeft,
    OrElimRight,
    OrElimMinors,
    OrElimMajorLeft,
    OrElimMajorRight,
    OrElimAll,
    ImpIntro,
    ImpElimMajor,
    ImpElimMinor,
    ImpElimBoth,
    ForallElim,
    ExistsIntro,
    ExistsElimMajor,
    ExistsElimMinor,
    ExistsElimBoth,
    EfqBelow,
    RaaBelow,
    ImpIntroNegative,
    ForallIntroNegative,
}

impl CaseTag {
    pub fn name(self) -> &'static str {
        match self {
            CaseTag::NotIntro => "not_i",
            CaseTag::NotElimMajor => "not_e.major",
            CaseTag::NotElimMinor => "not_e.minor",
            CaseTag::NotElimBoth => "not_e.both",
            CaseTag::AndIntroLeft => "and_i.left",
            CaseTag::AndIntroRight => "and_i.right",
            CaseTag::AndIntroBoth => "and_i.both",
            CaseTag::AndElim1 => "and_e1",
            CaseTag::AndElim2 => "and_e2",
            CaseTag::OrIntro1 => "or_i1",
            CaseTag::OrIntro2 => "or_i2",
            CaseTag::OrElimMajor => "or_e.major",
            CaseTag::OrElimLeft => "or_e.left",
            CaseTag::OrElimRight => "or_e.right",
            CaseTag::OrElimMinors => "or_e.minors",
            CaseTag::OrElimMajorLeft => "or_e.major_left",
            CaseTag::OrElimMajorRight => "or_e.major_right",
            CaseTag::OrElimAll => "or_e.all",
            CaseTag::ImpIntro => "imp_i",
            CaseTag::ImpElimMajor => "imp_e.major",
            CaseTag::ImpElimMinor => "imp_e.minor",
            CaseTag::ImpElimBoth => "imp_e.both",
            CaseTag::ForallElim => "forall_e",
            CaseTag::ExistsIntro => "exists_i",
            CaseTag::ExistsElimMajor => "exists_e.major",
            CaseTag::ExistsElimMinor => "exists_e.minor",
            CaseTag::ExistsElimBoth => "exists_e.both",
            CaseTag::EfqBelow => "efq_below",
            CaseTag::RaaBelow => "raa_below",
            CaseTag::ImpIntroNegative => "imp_i.negative",
            CaseTag::ForallIntroNegative => "forall_i.negative",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// The case fired when `rule` sits below raa instances in exactly the `active` premises.
///
/// Anchors that are themselves raa are handled by [`find_redex`], which needs to know
/// whether the anchor discharges anything.
pub fn dispatch(rule: RuleId, active: &[usize]) -> Option<CaseTag> {
    use CaseTag::*;
    Some(match (rule, active) {
        (RuleId::NotI, [0]) => NotIntro,
        (RuleId::NotE, [0]) => NotElimMajor,
        (RuleId::NotE, [1]) => NotElimMinor,
        (RuleId::NotE, [0, 1]) => NotElimBoth,
        (RuleId::AndI, [0]) => AndIntroLeft,
        (RuleId::AndI, [1]) => AndIntroRight,
        (RuleId::AndI, [0, 1]) => AndIntroBoth,
        (RuleId::AndE1, [0]) => AndElim1,
        (RuleId::AndE2, [0]) => AndElim2,
        (RuleId::OrI1, [0]) => OrIntro1,
        (RuleId::OrI2, [0]) => OrIntro2,
        (RuleId::OrE, [0]) => OrElimMajor,
        (RuleId::OrE, [1]) => OrElimLeft,
        (RuleId::OrE, [2]) => OrElimRight,
        (RuleId::OrE, [1, 2]) => OrElimMinors,
        (RuleId::OrE, [0, 1]) => OrElimMajorLeft,
        (RuleId::OrE, [0, 2]) => OrElimMajorRight,
        (RuleId::OrE, [0, 1, 2]) => OrElimAll,
        (RuleId::ImpI, [0]) => ImpIntro,
        (RuleId::ImpE, [0]) => ImpElimMajor,
        (RuleId::ImpE, [1]) => ImpElimMinor,
        (RuleId::ImpE, [0, 1]) => ImpElimBoth,
        (RuleId::ForallE, [0]) => ForallElim,
        (RuleId::ExistsI, [0]) => ExistsIntro,
        (RuleId::ExistsE, [0]) => ExistsElimMajor,
        (RuleId::ExistsE, [1]) => ExistsElimMinor,
        (RuleId::ExistsE, [0, 1]) => ExistsElimBoth,
        _ => return None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Redex {
    /// The rule instance immediately below the focused raa.
    pub anchor: Position,
    /// Premise indices of the anchor that are consumed by the step.
    pub active: Vec<usize>,
    pub case: CaseTag,
}

impl fmt::Display for Redex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "case {} at {}", self.case, self.anchor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RewriteError {
    #[error("no node at position {0}")]
    InvalidPosition(Position),
    #[error("node at {0} is not a raa instance")]
    NotRaa(Position),
    #[error("the raa instance is the last rule of the derivation")]
    RootRaa,
    #[error("raa at {0} sits above forall_i, which has no reduction")]
    ForallIntroBlock(Position),
    #[error("{0} is not a negative formula")]
    NotNegative(Formula),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("internal shape error: {0}")]
    InternalShapeError(String),
}

impl From<ShapeError> for RewriteError {
    fn from(e: ShapeError) -> RewriteError {
        RewriteError::InternalShapeError(e.to_string())
    }
}

/// Options for [`reduce_at_with`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ReduceOptions {
    /// Nest the left refutation inside the right one in the two-raa cases of
    /// `not_e`, `and_i` and `imp_e`.
    pub swap_symmetric: bool,
}

/// Locates the redex whose focused raa sits at `raa_pos`.
pub fn find_redex(d: &Derivation, raa_pos: &Position) -> Result<Redex, RewriteError> {
    let node = d.get(raa_pos).ok_or_else(|| RewriteError::InvalidPosition(raa_pos.clone()))?;
    if !node.is_raa() {
        return Err(RewriteError::NotRaa(raa_pos.clone()));
    }
    let anchor = raa_pos.parent().ok_or(RewriteError::RootRaa)?;
    let s = d.get(&anchor).expect("parent of a valid position");
    let rule = s.rule().expect("parent is an inference");
    let index = *raa_pos.0.last().unwrap();
    let (active, case) = match rule {
        RuleId::ForallI => return Err(RewriteError::ForallIntroBlock(anchor)),
        RuleId::Raa => {
            let case = if s.discharges_any() { CaseTag::RaaBelow } else { CaseTag::EfqBelow };
            (vec![index], case)
        }
        _ => {
            let active: Vec<usize> = s.premises().iter().enumerate().filter(|(_, p)| p.is_raa()).map(|(i, _)| i).collect();
            let case = dispatch(rule, &active)
                .ok_or_else(|| RewriteError::InternalShapeError(format!("no case for {rule} with active premises {active:?}")))?;
            (active, case)
        }
    };
    Ok(Redex { anchor, active, case })
}

pub fn reduce_at(d: Derivation, redex: &Redex, labels: &mut LabelSource) -> Result<Derivation, RewriteError> {
    reduce_at_with(d, redex, labels, ReduceOptions::default())
}

pub fn reduce_at_with(d: Derivation, redex: &Redex, labels: &mut LabelSource, opts: ReduceOptions) -> Result<Derivation, RewriteError> {
    replace_subtree(d, &redex.anchor, |s| cases::reduce_local(s, redex, labels, opts))
}

/// Applies `f` to the subtree at `pos` and puts the result back.
pub(crate) fn replace_subtree(
    mut d: Derivation,
    pos: &Position,
    f: impl FnOnce(Derivation) -> Result<Derivation, RewriteError>,
) -> Result<Derivation, RewriteError> {
    let slot = d.get_mut(pos).ok_or_else(|| RewriteError::InvalidPosition(pos.clone()))?;
    let sub = std::mem::replace(slot, Derivation::Assumption { formula: Formula::Bottom, label: None });
    *slot = f(sub)?;
    Ok(d)
}
