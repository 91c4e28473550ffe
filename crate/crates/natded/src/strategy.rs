//! Driving reductions to a standard form, with step-by-step traces.

use std::fmt;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::kernel::{
    check, maximal_raa, raa_report, standard_form, CheckError, Derivation, Judgment, LabelSource, Position, RaaSelection, RuleId,
};
use crate::rewrite::{find_redex, reduce_at, Redex, RewriteError};

/// Which standard form a postponement run aims for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    /// At most one discharging raa, at the root.
    J,
    /// At most one raa of any kind, at the root.
    M,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StrategyError {
    #[error("precondition: forall_i present")]
    PreconditionForallIntro,
    #[error("precondition: imp_i present")]
    PreconditionImpIntro,
    #[error("input does not check: {0}")]
    Check(#[from] CheckError),
    #[error(transparent)]
    Rewrite(#[from] RewriteError),
    #[error("invariant breach: {0}")]
    InvariantBreach(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TraceStep {
    pub redex: Redex,
    /// Position of the raa instance that selected the redex.
    pub focus: Position,
    pub size_raa: (usize, usize),
    pub size_raa_plus: (usize, usize),
}

#[derive(Debug, Clone)]
pub struct ReductionTrace {
    pub steps: Vec<TraceStep>,
    pub final_derivation: Derivation,
}

impl ReductionTrace {
    /// One line per step.
    pub fn to_log(&self) -> String {
        let mut out = String::new();
        for (k, s) in self.steps.iter().enumerate() {
            out.push_str(&format!(
                "step {}: case {} at {}; size_raa {}→{}; size_raa+ {}→{}\n",
                k + 1,
                s.redex.case,
                s.redex.anchor,
                s.size_raa.0,
                s.size_raa.1,
                s.size_raa_plus.0,
                s.size_raa_plus.1
            ));
        }
        out
    }
}

fn require_no(d: &Derivation, rules: &[RuleId]) -> Result<(), StrategyError> {
    for &r in rules {
        if d.uses(r) {
            return Err(match r {
                RuleId::ImpI => StrategyError::PreconditionImpIntro,
                _ => StrategyError::PreconditionForallIntro,
            });
        }
    }
    Ok(())
}

/// Reduces a maximal instance until the tracked size reaches zero.
pub fn postpone(d: Derivation, target: Target) -> Result<(Derivation, ReductionTrace), StrategyError> {
    let input = check(&d)?;
    match target {
        Target::J => require_no(&d, &[RuleId::ForallI])?,
        Target::M => require_no(&d, &[RuleId::ForallI, RuleId::ImpI])?,
    }
    let selection = match target {
        Target::J => RaaSelection::Discharging,
        Target::M => RaaSelection::All,
    };
    let tracked = |r: &crate::kernel::RaaReport| match target {
        Target::J => r.size_raa_plus,
        Target::M => r.size_raa,
    };
    let mut labels = LabelSource::above(&d);
    let mut d = d;
    let mut steps = Vec::new();
    let mut before = raa_report(&d);
    while tracked(&before) > 0 {
        let focus = maximal_raa(&d, selection).ok_or_else(|| StrategyError::InvariantBreach("positive size without a raa".into()))?;
        let redex = find_redex(&d, &focus)?;
        let next = reduce_at(d, &redex, &mut labels)?;
        verify_step(&input, &next)?;
        let after = raa_report(&next);
        if tracked(&after) >= tracked(&before) {
            return Err(StrategyError::InvariantBreach(format!(
                "{redex} did not decrease the size ({} to {})",
                tracked(&before),
                tracked(&after)
            )));
        }
        steps.push(TraceStep {
            redex,
            focus,
            size_raa: (before.size_raa, after.size_raa),
            size_raa_plus: (before.size_raa_plus, after.size_raa_plus),
        });
        d = next;
        before = after;
    }
    let trace = ReductionTrace { steps, final_derivation: d.clone() };
    Ok((d, trace))
}

pub fn postpone_j(d: Derivation) -> Result<(Derivation, ReductionTrace), StrategyError> {
    postpone(d, Target::J)
}

pub fn postpone_m(d: Derivation) -> Result<(Derivation, ReductionTrace), StrategyError> {
    postpone(d, Target::M)
}

fn verify_step(input: &Judgment, next: &Derivation) -> Result<(), StrategyError> {
    let j = check(next).map_err(|e| StrategyError::InvariantBreach(format!("reduct does not check: {e}")))?;
    if j.conclusion != input.conclusion {
        return Err(StrategyError::InvariantBreach(format!("conclusion changed to {}", j.conclusion)));
    }
    if !j.assumptions_within(&input.assumptions) {
        return Err(StrategyError::InvariantBreach("reduct gained an assumption".into()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Strategy {
    /// Leftmost RAA⁺-maximal discharging instance.
    Maximal,
    /// Uniform choice among all non-root raa instances.
    Random(u64),
    /// First non-root raa instance in post-order.
    Innermost,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExploreOutcome {
    Terminated { steps: usize },
    FuelExhausted { size_raa: usize, size_raa_plus: usize },
}

impl fmt::Display for ExploreOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExploreOutcome::Terminated { steps } => write!(f, "terminated after {steps} steps"),
            ExploreOutcome::FuelExhausted { size_raa, size_raa_plus } => {
                write!(f, "fuel exhausted; size_raa {size_raa}; size_raa+ {size_raa_plus}")
            }
        }
    }
}

fn non_root_raa_postorder(d: &Derivation) -> Vec<Position> {
    fn go(d: &Derivation, pos: &mut Vec<usize>, out: &mut Vec<Position>) {
        for (i, p) in d.premises().iter().enumerate() {
            pos.push(i);
            go(p, pos, out);
            pos.pop();
        }
        if d.is_raa() && !pos.is_empty() {
            out.push(Position(pos.clone()));
        }
    }
    let mut out = Vec::new();
    go(d, &mut Vec::new(), &mut out);
    out
}

/// Fires redexes chosen by `strategy` until the derivation is j-standard or `fuel` runs out.
///
/// Experimental: only the maximal strategy is known to terminate.
pub fn explore(d: Derivation, strategy: Strategy, fuel: usize) -> Result<(ExploreOutcome, Derivation), StrategyError> {
    let input = check(&d)?;
    require_no(&d, &[RuleId::ForallI])?;
    let mut rng = match strategy {
        Strategy::Random(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        _ => None,
    };
    let mut labels = LabelSource::above(&d);
    let mut d = d;
    for steps in 0..=fuel {
        if standard_form(&d).j_standard {
            return Ok((ExploreOutcome::Terminated { steps }, d));
        }
        if steps == fuel {
            break;
        }
        let focus = match strategy {
            Strategy::Maximal => maximal_raa(&d, RaaSelection::Discharging),
            Strategy::Random(_) => non_root_raa_postorder(&d).choose(rng.as_mut().expect("seeded")).cloned(),
            Strategy::Innermost => non_root_raa_postorder(&d).into_iter().next(),
        }
        .ok_or_else(|| StrategyError::InvariantBreach("not j-standard but no redex".into()))?;
        let redex = find_redex(&d, &focus)?;
        d = reduce_at(d, &redex, &mut labels)?;
        verify_step(&input, &d)?;
    }
    let r = raa_report(&d);
    Ok((ExploreOutcome::FuelExhausted { size_raa: r.size_raa, size_raa_plus: r.size_raa_plus }, d))
}

/// Runs [`postpone`] and re-verifies its output from scratch: the result checks,
/// is in the target standard form, keeps the conclusion up to alpha-equivalence,
/// adds no assumptions, and every trace step strictly decreases the tracked size.
pub fn verify_postponement(d: &Derivation, target: Target) -> Result<ReductionTrace, String> {
    let before = check(d).map_err(|e| format!("input does not check: {e}"))?;
    let (out, trace) = postpone(d.clone(), target).map_err(|e| e.to_string())?;
    let after = check(&out).map_err(|e| format!("output does not check: {e}"))?;
    let form = standard_form(&out);
    match target {
        Target::J if !form.j_standard => return Err("output is not j-standard".into()),
        Target::M if !form.m_standard => return Err("output is not m-standard".into()),
        _ => {}
    }
    if target == Target::M && (out.uses(RuleId::ImpI) || out.uses(RuleId::ForallI)) {
        return Err("m-mode output contains imp_i or forall_i".into());
    }
    if !after.conclusion.alpha_eq(&before.conclusion) {
        return Err(format!("conclusion changed from {} to {}", before.conclusion, after.conclusion));
    }
    if !after.assumptions_within(&before.assumptions) {
        return Err("output has an assumption the input lacks".into());
    }
    for (k, s) in trace.steps.iter().enumerate() {
        let (a, b) = match target {
            Target::J => s.size_raa_plus,
            Target::M => s.size_raa,
        };
        if b >= a {
            return Err(format!("step {} did not decrease the tracked size ({a} to {b})", k + 1));
        }
    }
    Ok(trace)
}
