use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::build::{
    and_e1, and_e2, and_i, assume, exists_e, exists_i, forall_e, forall_i, hyp, imp_e, imp_i, not_e, not_i, or_e, or_i1, or_i2, raa, top_i,
};
use crate::kernel::{check, Derivation, Formula, Label, LabelSource, Logic, RuleId, SystemId, Term};

use super::OracleError;

/// Knobs for [`gen_derivation`].
#[derive(Debug, Clone, PartialEq)]
pub struct GeneratorProfile {
    /// Longest branch, counted in rule applications.
    pub max_depth: usize,
    pub atoms: Vec<String>,
    /// Rules the output may use; raa follows the system's logic.
    pub system: SystemId,
    /// Chance of closing a goal with raa when the system allows it.
    pub raa_density: f64,
    pub seed: u64,
    /// Reject outputs without any raa instance.
    pub require_raa: bool,
    /// Allow vacuous ∀ and ∃ in generated formulas.
    pub quantifiers: bool,
    /// Attempts before giving up.
    pub retries: usize,
}

impl GeneratorProfile {
    pub fn new(max_depth: usize, atoms: &[&str], system: SystemId, raa_density: f64, seed: u64) -> GeneratorProfile {
        GeneratorProfile {
            max_depth,
            atoms: atoms.iter().map(|a| a.to_string()).collect(),
            require_raa: system.logic != Logic::Minimal,
            system,
            raa_density,
            seed,
            quantifiers: false,
            retries: 200,
        }
    }
}

impl Default for GeneratorProfile {
    fn default() -> GeneratorProfile {
        GeneratorProfile::new(4, &["P", "Q"], SystemId::nk().without(&[RuleId::ForallI]), 0.5, 0)
    }
}

struct Gen<'a> {
    p: &'a GeneratorProfile,
    rng: ChaCha8Rng,
    labels: LabelSource,
    ctx: Vec<(Formula, Label)>,
}

#[derive(Clone, Copy)]
enum Step {
    Leaf,
    Intro,
    AndE1,
    AndE2,
    OrE,
    ImpE,
    NotE,
    ForallE,
    ExistsE,
}

impl<'a> Gen<'a> {
    fn allowed(&self, r: RuleId) -> bool {
        !self.p.system.excluded.contains(&r) && (r != RuleId::Raa || self.p.system.logic != Logic::Minimal)
    }

    fn formula(&mut self, depth: usize) -> Formula {
        let leaf_only = depth == 0 || self.rng.gen_bool(0.3);
        if leaf_only {
            return match self.rng.gen_range(0..self.p.atoms.len() + 1) {
                i if i < self.p.atoms.len() => Formula::atom(self.p.atoms[i].clone()),
                _ => Formula::Bottom,
            };
        }
        let kinds = if self.p.quantifiers { 6 } else { 4 };
        match self.rng.gen_range(0..kinds) {
            0 => Formula::neg(self.formula(depth - 1)),
            1 => Formula::and(self.formula(depth - 1), self.formula(depth - 1)),
            2 => Formula::or(self.formula(depth - 1), self.formula(depth - 1)),
            3 => Formula::imp(self.formula(depth - 1), self.formula(depth - 1)),
            4 => Formula::forall("x", self.formula(depth - 1)),
            _ => Formula::exists("x", self.formula(depth - 1)),
        }
    }

    fn scoped(&mut self, f: Formula, l: Label, goal: &Formula, depth: usize) -> Derivation {
        self.ctx.push((f, l));
        let d = self.derive(goal, depth);
        self.ctx.pop();
        d
    }

    fn intro_allowed(&self, goal: &Formula) -> bool {
        let rule = match goal {
            Formula::Top => RuleId::TopI,
            Formula::Not(_) => RuleId::NotI,
            Formula::And(..) => RuleId::AndI,
            Formula::Or(..) => return self.allowed(RuleId::OrI1) || self.allowed(RuleId::OrI2),
            Formula::Imp(..) => RuleId::ImpI,
            Formula::Forall(..) => RuleId::ForallI,
            Formula::Exists(..) => RuleId::ExistsI,
            Formula::Atom(..) | Formula::Bottom => return false,
        };
        self.allowed(rule)
    }

    fn derive_raa(&mut self, goal: &Formula, depth: usize) -> Derivation {
        let l = self.labels.fresh();
        let body = if self.p.system.logic == Logic::Classical {
            self.scoped(Formula::neg(goal.clone()), l, &Formula::Bottom, depth - 1)
        } else {
            self.derive(&Formula::Bottom, depth - 1)
        };
        raa(l, goal.clone(), body)
    }

    fn derive(&mut self, goal: &Formula, depth: usize) -> Derivation {
        let matching: Vec<Label> = self.ctx.iter().filter(|(f, _)| f == goal).map(|(_, l)| *l).collect();
        if !matching.is_empty() && (depth == 0 || self.rng.gen_bool(0.5)) {
            return hyp(goal.clone(), *matching.choose(&mut self.rng).unwrap());
        }
        if depth == 0 {
            return if matches!(goal, Formula::Top) && self.allowed(RuleId::TopI) { top_i() } else { assume(goal.clone()) };
        }
        if self.allowed(RuleId::Raa) && !goal.is_bottom() && self.rng.gen_bool(self.p.raa_density) {
            return self.derive_raa(goal, depth);
        }
        let mut steps = vec![Step::Leaf];
        if self.intro_allowed(goal) {
            steps.extend([Step::Intro, Step::Intro, Step::Intro]);
        }
        for (rule, step) in [
            (RuleId::AndE1, Step::AndE1),
            (RuleId::AndE2, Step::AndE2),
            (RuleId::OrE, Step::OrE),
            (RuleId::ImpE, Step::ImpE),
            (RuleId::ForallE, Step::ForallE),
            (RuleId::ExistsE, Step::ExistsE),
        ] {
            let quantified = matches!(rule, RuleId::ForallE | RuleId::ExistsE);
            if self.allowed(rule) && (!quantified || self.p.quantifiers) {
                steps.push(step);
            }
        }
        if goal.is_bottom() && self.allowed(RuleId::NotE) {
            steps.extend([Step::NotE, Step::NotE, Step::NotE, Step::NotE]);
        }
        let d = depth - 1;
        match *steps.choose(&mut self.rng).unwrap() {
            Step::Leaf => assume(goal.clone()),
            Step::Intro => self.intro(goal, d),
            Step::AndE1 => {
                let other = self.formula(1);
                and_e1(self.derive(&Formula::and(goal.clone(), other), d)).expect("conjunction")
            }
            Step::AndE2 => {
                let other = self.formula(1);
                and_e2(self.derive(&Formula::and(other, goal.clone()), d)).expect("conjunction")
            }
            Step::OrE => {
                let (a, b) = (self.formula(1), self.formula(1));
                let major = self.derive(&Formula::or(a.clone(), b.clone()), d);
                let l = self.labels.fresh();
                let left = self.scoped(a, l, goal, d);
                let right = self.scoped(b, l, goal, d);
                or_e(l, major, left, right)
            }
            Step::ImpE => {
                let a = self.formula(1);
                let major = self.derive(&Formula::imp(a.clone(), goal.clone()), d);
                let minor = self.derive(&a, d);
                imp_e(major, minor).expect("implication")
            }
            Step::NotE => {
                let negs: Vec<(Formula, Label)> =
                    self.ctx.iter().filter_map(|(f, l)| f.as_not().map(|a| (a.clone(), *l))).collect();
                if !negs.is_empty() && self.rng.gen_bool(0.8) {
                    let (a, l) = negs.choose(&mut self.rng).unwrap().clone();
                    let minor = self.derive(&a, d);
                    not_e(hyp(Formula::neg(a), l), minor)
                } else {
                    let a = self.formula(1);
                    let major = self.derive(&Formula::neg(a.clone()), d);
                    let minor = self.derive(&a, d);
                    not_e(major, minor)
                }
            }
            Step::ForallE => {
                let p = self.derive(&Formula::forall("x", goal.clone()), d);
                forall_e(p, Term::var("x")).expect("universal")
            }
            Step::ExistsE => {
                let a = self.formula(1);
                let major = self.derive(&Formula::exists("y", a.clone()), d);
                let l = self.labels.fresh();
                let minor = self.scoped(a, l, goal, d);
                exists_e(l, "y", major, minor)
            }
        }
    }

    fn intro(&mut self, goal: &Formula, d: usize) -> Derivation {
        match goal {
            Formula::Top => top_i(),
            Formula::Not(a) => {
                let l = self.labels.fresh();
                not_i(l, (**a).clone(), self.scoped((**a).clone(), l, &Formula::Bottom, d))
            }
            Formula::And(a, b) => and_i(self.derive(a, d), self.derive(b, d)),
            Formula::Or(a, b) => {
                let left = self.allowed(RuleId::OrI1) && (!self.allowed(RuleId::OrI2) || self.rng.gen_bool(0.5));
                if left {
                    or_i1(self.derive(a, d), (**b).clone())
                } else {
                    or_i2((**a).clone(), self.derive(b, d))
                }
            }
            Formula::Imp(a, b) => {
                let l = self.labels.fresh();
                imp_i(l, (**a).clone(), self.scoped((**a).clone(), l, b, d))
            }
            // Generated formulas are closed, so the bound variable is never free in an assumption.
            Formula::Forall(x, a) => forall_i(x, self.derive(a, d)),
            Formula::Exists(x, a) => exists_i(goal.clone(), Term::var(x.clone()), self.derive(a, d)),
            Formula::Atom(..) | Formula::Bottom => unreachable!("no introduction rule"),
        }
    }
}

/// A random derivation that checks and stays inside `profile.system`. Deterministic per seed.
pub fn gen_derivation(profile: &GeneratorProfile) -> Result<Derivation, OracleError> {
    if profile.atoms.is_empty() {
        return Err(OracleError::GenerationExhausted(0));
    }
    let mut g = Gen { p: profile, rng: ChaCha8Rng::seed_from_u64(profile.seed), labels: LabelSource::starting_at(1), ctx: Vec::new() };
    for _ in 0..profile.retries.max(1) {
        g.labels = LabelSource::starting_at(1);
        g.ctx.clear();
        let goal = g.formula(2);
        let d = g.derive(&goal, profile.max_depth);
        if let Err(e) = check(&d) {
            return Err(OracleError::Internal(format!("generated derivation does not check: {e}")));
        }
        if profile.system.admits(&d) && (!profile.require_raa || d.uses(RuleId::Raa)) {
            return Ok(d);
        }
    }
    if profile.require_raa && g.allowed(RuleId::Raa) && profile.max_depth > 0 {
        // Low densities rarely draw a raa; force one at the root.
        for _ in 0..profile.retries.max(1) {
            g.labels = LabelSource::starting_at(1);
            g.ctx.clear();
            let goal = Formula::atom(profile.atoms[g.rng.gen_range(0..profile.atoms.len())].clone());
            let d = g.derive_raa(&goal, profile.max_depth);
            if let Err(e) = check(&d) {
                return Err(OracleError::Internal(format!("generated derivation does not check: {e}")));
            }
            if profile.system.admits(&d) {
                return Ok(d);
            }
        }
    }
    Err(OracleError::GenerationExhausted(profile.retries))
}
