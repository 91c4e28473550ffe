use std::fmt;

use super::derivation::{Derivation, Position, RuleId};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaaInstance {
    pub position: Position,
    /// Number of rule instances strictly below this one on its thread.
    pub distance: usize,
    pub discharging: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RaaReport {
    pub instances: Vec<RaaInstance>,
    pub size_raa: usize,
    pub size_raa_plus: usize,
}

impl fmt::Display for RaaReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.instances {
            let kind = if r.discharging { "raa" } else { "efq" };
            writeln!(f, "{kind} at {} distance {}", r.position, r.distance)?;
        }
        writeln!(f, "size_raa {}", self.size_raa)?;
        write!(f, "size_raa+ {}", self.size_raa_plus)
    }
}

/// Every raa instance in pre-order, with distances and sizes.
pub fn raa_report(d: &Derivation) -> RaaReport {
    let counts = d.label_counts();
    let mut instances = Vec::new();
    d.walk(&mut |pos, n| {
        if let Some(inf) = n.as_inference().filter(|i| i.rule == RuleId::Raa) {
            let discharging = inf.discharge.is_some_and(|l| counts.get(&l).copied().unwrap_or(0) > 0);
            instances.push(RaaInstance { position: pos.clone(), distance: pos.depth(), discharging });
        }
    });
    let size_raa = instances.iter().map(|r| r.distance).sum();
    let size_raa_plus = instances.iter().filter(|r| r.discharging).map(|r| r.distance).sum();
    RaaReport { instances, size_raa, size_raa_plus }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct StandardForm {
    pub j_standard: bool,
    pub m_standard: bool,
}

pub fn standard_form(d: &Derivation) -> StandardForm {
    let report = raa_report(d);
    let only_root = |pred: &dyn Fn(&RaaInstance) -> bool| {
        let picked: Vec<&RaaInstance> = report.instances.iter().filter(|r| pred(r)).collect();
        picked.len() <= 1 && picked.iter().all(|r| r.position.is_root())
    };
    let j_structural = only_root(&|r| r.discharging);
    let m_structural = only_root(&|_| true);
    debug_assert_eq!(j_structural, report.size_raa_plus == 0);
    debug_assert_eq!(m_structural, report.size_raa == 0);
    StandardForm { j_standard: j_structural, m_standard: m_structural }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RaaSelection {
    All,
    Discharging,
}

/// Position of the leftmost raa instance of maximal distance.
pub fn maximal_raa(d: &Derivation, mode: RaaSelection) -> Option<Position> {
    let report = raa_report(d);
    let mut best: Option<&RaaInstance> = None;
    for r in report.instances.iter().filter(|r| mode == RaaSelection::All || r.discharging) {
        if best.map_or(true, |b| r.distance > b.distance) {
            best = Some(r);
        }
    }
    best.map(|r| r.position.clone())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleQuery {
    Rule(RuleId),
    DischargingRaa,
}

impl From<RuleId> for RuleQuery {
    fn from(r: RuleId) -> RuleQuery {
        RuleQuery::Rule(r)
    }
}

pub fn uses_rule(d: &Derivation, q: impl Into<RuleQuery>) -> bool {
    match q.into() {
        RuleQuery::Rule(r) => d.uses(r),
        RuleQuery::DischargingRaa => raa_report(d).instances.iter().any(|r| r.discharging),
    }
}

/// Number of raa instances that discharge nothing.
pub fn efq_count(d: &Derivation) -> usize {
    raa_report(d).instances.iter().filter(|r| !r.discharging).count()
}
