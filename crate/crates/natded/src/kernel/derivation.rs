use std::collections::{BTreeSet, HashMap};
use std::fmt;

use super::formula::Formula;
use super::term::{fresh_var, Term};

/// Discharge marker shared by a binder and the assumption leaves it closes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(pub u32);

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RuleId {
    Raa,
    TopI,
    NotI,
    NotE,
    AndI,
    AndE1,
    AndE2,
    OrI1,
    OrI2,
    OrE,
    ImpI,
    ImpE,
    ForallI,
    ForallE,
    ExistsI,
    ExistsE,
}

impl RuleId {
    pub const ALL: [RuleId; 16] = [
        RuleId::Raa,
        RuleId::TopI,
        RuleId::NotI,
        RuleId::NotE,
        RuleId::AndI,
        RuleId::AndE1,
        RuleId::AndE2,
        RuleId::OrI1,
        RuleId::OrI2,
        RuleId::OrE,
        RuleId::ImpI,
        RuleId::ImpE,
        RuleId::ForallI,
        RuleId::ForallE,
        RuleId::ExistsI,
        RuleId::ExistsE,
    ];

    pub fn name(self) -> &'static str {
        match self {
            RuleId::Raa => "raa",
            RuleId::TopI => "top_i",
            RuleId::NotI => "not_i",
            RuleId::NotE => "not_e",
            RuleId::AndI => "and_i",
            RuleId::AndE1 => "and_e1",
            RuleId::AndE2 => "and_e2",
            RuleId::OrI1 => "or_i1",
            RuleId::OrI2 => "or_i2",
            RuleId::OrE => "or_e",
            RuleId::ImpI => "imp_i",
            RuleId::ImpE => "imp_e",
            RuleId::ForallI => "forall_i",
            RuleId::ForallE => "forall_e",
            RuleId::ExistsI => "exists_i",
            RuleId::ExistsE => "exists_e",
        }
    }

    pub fn from_name(s: &str) -> Option<RuleId> {
        RuleId::ALL.into_iter().find(|r| r.name() == s)
    }

    pub fn arity(self) -> usize {
        match self {
            RuleId::TopI => 0,
            RuleId::NotE | RuleId::AndI | RuleId::ImpE | RuleId::ExistsE => 2,
            RuleId::OrE => 3,
            _ => 1,
        }
    }

    /// Rules that bind a discharge label.
    pub fn binds(self) -> bool {
        matches!(self, RuleId::Raa | RuleId::NotI | RuleId::ImpI | RuleId::OrE | RuleId::ExistsE)
    }

    /// Whether the binder's label scopes over premise `i`.
    pub fn scopes_premise(self, i: usize) -> bool {
        match self {
            RuleId::Raa | RuleId::NotI | RuleId::ImpI => i == 0,
            RuleId::OrE => i == 1 || i == 2,
            RuleId::ExistsE => i == 1,
            _ => false,
        }
    }
}

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Annotation {
    None,
    /// Witness term of `forall_e` and `exists_i`.
    Witness(Term),
    /// Eigenvariable of `forall_i` and `exists_e`.
    Eigen(String),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inference {
    pub rule: RuleId,
    pub premises: Vec<Derivation>,
    pub conclusion: Formula,
    pub discharge: Option<Label>,
    pub annotation: Annotation,
}

/// Natural-deduction proof tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Derivation {
    /// An assumption leaf; labelled leaves are closed by the binder carrying the same label.
    Assumption { formula: Formula, label: Option<Label> },
    Inference(Inference),
}

/// Path of premise indices from the root.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Position(pub Vec<usize>);

impl Position {
    pub fn root() -> Position {
        Position(Vec::new())
    }

    pub fn is_root(&self) -> bool {
        self.0.is_empty()
    }

    pub fn child(&self, i: usize) -> Position {
        let mut v = self.0.clone();
        v.push(i);
        Position(v)
    }

    pub fn parent(&self) -> Option<Position> {
        let (_, init) = self.0.split_last()?;
        Some(Position(init.to_vec()))
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("root");
        }
        let parts: Vec<String> = self.0.iter().map(|i| i.to_string()).collect();
        f.write_str(&parts.join("."))
    }
}

/// Strictly increasing supply of discharge labels.
#[derive(Clone, Debug)]
pub struct LabelSource {
    next: u32,
}

impl LabelSource {
    pub fn starting_at(next: u32) -> LabelSource {
        LabelSource { next }
    }

    /// A source whose labels all exceed every label in `d`.
    pub fn above(d: &Derivation) -> LabelSource {
        LabelSource { next: d.max_label().map_or(1, |l| l.0 + 1) }
    }

    pub fn fresh(&mut self) -> Label {
        let l = Label(self.next);
        self.next += 1;
        l
    }

    pub fn peek(&self) -> u32 {
        self.next
    }

    /// Skips past every label used in `d`.
    pub fn reserve_above(&mut self, d: &Derivation) {
        self.next = self.next.max(LabelSource::above(d).next);
    }
}

impl Derivation {
    pub fn conclusion(&self) -> &Formula {
        match self {
            Derivation::Assumption { formula, .. } => formula,
            Derivation::Inference(inf) => &inf.conclusion,
        }
    }

    pub fn rule(&self) -> Option<RuleId> {
        match self {
            Derivation::Assumption { .. } => None,
            Derivation::Inference(inf) => Some(inf.rule),
        }
    }

    pub fn as_inference(&self) -> Option<&Inference> {
        match self {
            Derivation::Inference(inf) => Some(inf),
            Derivation::Assumption { .. } => None,
        }
    }

    pub fn premises(&self) -> &[Derivation] {
        match self {
            Derivation::Assumption { .. } => &[],
            Derivation::Inference(inf) => &inf.premises,
        }
    }

    pub fn is_raa(&self) -> bool {
        self.rule() == Some(RuleId::Raa)
    }

    pub fn get(&self, pos: &Position) -> Option<&Derivation> {
        pos.0.iter().try_fold(self, |d, &i| d.premises().get(i))
    }

    pub fn get_mut(&mut self, pos: &Position) -> Option<&mut Derivation> {
        let mut d = self;
        for &i in &pos.0 {
            d = match d {
                Derivation::Inference(inf) => inf.premises.get_mut(i)?,
                Derivation::Assumption { .. } => return None,
            };
        }
        Some(d)
    }

    /// Replaces the subtree at `pos`; returns `None` if the path is invalid.
    pub fn replace_at(mut self, pos: &Position, sub: Derivation) -> Option<Derivation> {
        *self.get_mut(pos)? = sub;
        Some(self)
    }

    /// Pre-order visit of every node with its position.
    pub fn walk<'a>(&'a self, f: &mut impl FnMut(&Position, &'a Derivation)) {
        fn go<'a>(d: &'a Derivation, pos: &mut Vec<usize>, f: &mut impl FnMut(&Position, &'a Derivation)) {
            let p = Position(pos.clone());
            f(&p, d);
            for (i, q) in d.premises().iter().enumerate() {
                pos.push(i);
                go(q, pos, f);
                pos.pop();
            }
        }
        go(self, &mut Vec::new(), f)
    }

    pub fn node_count(&self) -> usize {
        1 + self.premises().iter().map(Derivation::node_count).sum::<usize>()
    }

    pub fn height(&self) -> usize {
        1 + self.premises().iter().map(Derivation::height).max().unwrap_or(0)
    }

    pub fn max_label(&self) -> Option<Label> {
        let mut m: Option<Label> = None;
        self.walk(&mut |_, d| {
            let l = match d {
                Derivation::Assumption { label, .. } => *label,
                Derivation::Inference(inf) => inf.discharge,
            };
            if let Some(l) = l {
                m = Some(m.map_or(l, |x| x.max(l)));
            }
        });
        m
    }

    /// Number of assumption leaves carrying `label`.
    pub fn count_label(&self, label: Label) -> usize {
        let mut n = 0;
        self.walk(&mut |_, d| {
            if let Derivation::Assumption { label: Some(l), .. } = d {
                if *l == label {
                    n += 1;
                }
            }
        });
        n
    }

    /// Label counts for every labelled leaf.
    pub fn label_counts(&self) -> HashMap<Label, usize> {
        let mut m = HashMap::new();
        self.walk(&mut |_, d| {
            if let Derivation::Assumption { label: Some(l), .. } = d {
                *m.entry(*l).or_insert(0) += 1;
            }
        });
        m
    }

    /// True if the binder at this node closes at least one leaf.
    pub fn discharges_any(&self) -> bool {
        match self {
            Derivation::Inference(Inference { rule, premises, discharge: Some(l), .. }) => premises
                .iter()
                .enumerate()
                .any(|(i, p)| rule.scopes_premise(i) && p.count_label(*l) > 0),
            _ => false,
        }
    }

    /// Formulas of leaves not closed by a binder inside this derivation, in leaf order.
    pub fn open_assumptions(&self) -> Vec<Formula> {
        fn go(d: &Derivation, bound: &mut Vec<Label>, out: &mut Vec<Formula>) {
            match d {
                Derivation::Assumption { formula, label } => {
                    if label.map_or(true, |l| !bound.contains(&l)) {
                        out.push(formula.clone());
                    }
                }
                Derivation::Inference(inf) => {
                    for (i, p) in inf.premises.iter().enumerate() {
                        let scoped = inf.rule.scopes_premise(i) && inf.discharge.is_some();
                        if scoped {
                            bound.push(inf.discharge.unwrap());
                        }
                        go(p, bound, out);
                        if scoped {
                            bound.pop();
                        }
                    }
                }
            }
        }
        let mut out = Vec::new();
        go(self, &mut Vec::new(), &mut out);
        out
    }

    /// Open assumptions deduplicated up to alpha-equivalence.
    pub fn open_assumption_set(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = Vec::new();
        for f in self.open_assumptions() {
            if !out.contains(&f) {
                out.push(f);
            }
        }
        out
    }

    pub fn uses(&self, rule: RuleId) -> bool {
        let mut found = false;
        self.walk(&mut |_, d| found |= d.rule() == Some(rule));
        found
    }

    /// Every variable name occurring in formulas, terms or annotations.
    pub fn all_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.walk(&mut |_, d| match d {
            Derivation::Assumption { formula, .. } => formula.all_vars_into(&mut out),
            Derivation::Inference(inf) => {
                inf.conclusion.all_vars_into(&mut out);
                match &inf.annotation {
                    Annotation::Witness(t) => t.free_vars_into(&mut out),
                    Annotation::Eigen(x) => {
                        out.insert(x.clone());
                    }
                    Annotation::None => {}
                }
            }
        });
        out
    }

    /// Replaces the label `from` by `to` on every leaf.
    pub fn relabel_leaves(self, from: Label, to: Label) -> Derivation {
        self.map_leaves(&mut |formula, label| Derivation::Assumption {
            formula,
            label: if label == Some(from) { Some(to) } else { label },
        })
    }

    /// Drops the label of every leaf carrying `label`, turning them into open assumptions.
    pub fn open_leaves(self, label: Label) -> Derivation {
        self.map_leaves(&mut |formula, l| Derivation::Assumption {
            formula,
            label: if l == Some(label) { None } else { l },
        })
    }

    pub fn map_leaves(self, f: &mut impl FnMut(Formula, Option<Label>) -> Derivation) -> Derivation {
        match self {
            Derivation::Assumption { formula, label } => f(formula, label),
            Derivation::Inference(mut inf) => {
                inf.premises = inf.premises.into_iter().map(|p| p.map_leaves(f)).collect();
                Derivation::Inference(inf)
            }
        }
    }

    /// Copy in which every binder of this tree gets a fresh label; free labels are kept.
    pub fn clone_fresh(&self, labels: &mut LabelSource) -> Derivation {
        fn go(d: &Derivation, map: &mut Vec<(Label, Label)>, labels: &mut LabelSource) -> Derivation {
            match d {
                Derivation::Assumption { formula, label } => Derivation::Assumption {
                    formula: formula.clone(),
                    label: label.map(|l| map.iter().rev().find(|(a, _)| *a == l).map_or(l, |(_, b)| *b)),
                },
                Derivation::Inference(inf) => {
                    let new = inf.discharge.map(|l| (l, labels.fresh()));
                    let premises = inf
                        .premises
                        .iter()
                        .enumerate()
                        .map(|(i, p)| match new {
                            Some(pair) if inf.rule.scopes_premise(i) => {
                                map.push(pair);
                                let r = go(p, map, labels);
                                map.pop();
                                r
                            }
                            _ => go(p, map, labels),
                        })
                        .collect();
                    Derivation::Inference(Inference {
                        rule: inf.rule,
                        premises,
                        conclusion: inf.conclusion.clone(),
                        discharge: new.map(|(_, b)| b),
                        annotation: inf.annotation.clone(),
                    })
                }
            }
        }
        go(self, &mut Vec::new(), labels)
    }

    /// Replaces every leaf labelled `label` with a fresh copy of `filler`.
    ///
    /// Eigenvariables of `self` that would capture free variables of the filler's
    /// open assumptions are renamed first.
    pub fn plug(self, label: Label, filler: &Derivation, labels: &mut LabelSource) -> Derivation {
        if self.count_label(label) == 0 {
            return self;
        }
        let mut avoid = BTreeSet::new();
        for f in filler.open_assumptions() {
            f.free_vars_into(&mut avoid);
        }
        let host = self.freshen_eigenvariables(&avoid);
        host.map_leaves(&mut |formula, l| {
            if l == Some(label) {
                filler.clone_fresh(labels)
            } else {
                Derivation::Assumption { formula, label: l }
            }
        })
    }

    /// Renames the free variable `x` to `z` throughout, annotations included.
    ///
    /// `z` must not occur anywhere in the tree.
    pub fn rename_var(self, x: &str, z: &str) -> Derivation {
        let zt = Term::Var(z.to_string());
        match self {
            Derivation::Assumption { formula, label } => Derivation::Assumption { formula: formula.subst(x, &zt), label },
            Derivation::Inference(inf) => Derivation::Inference(Inference {
                rule: inf.rule,
                premises: inf.premises.into_iter().map(|p| p.rename_var(x, z)).collect(),
                conclusion: inf.conclusion.subst(x, &zt),
                discharge: inf.discharge,
                annotation: match inf.annotation {
                    Annotation::Witness(t) => Annotation::Witness(t.subst(x, &zt)),
                    Annotation::Eigen(y) if y == x => Annotation::Eigen(z.to_string()),
                    other => other,
                },
            }),
        }
    }

    /// Renames eigenvariables that belong to `avoid` to globally fresh names.
    pub fn freshen_eigenvariables(self, avoid: &BTreeSet<String>) -> Derivation {
        if avoid.is_empty() {
            return self;
        }
        let mut taken = self.all_vars();
        taken.extend(avoid.iter().cloned());
        freshen(self, avoid, &mut taken)
    }
}

fn freshen(d: Derivation, avoid: &BTreeSet<String>, taken: &mut BTreeSet<String>) -> Derivation {
    let Derivation::Inference(mut inf) = d else { return d };
    if let Annotation::Eigen(y) = &inf.annotation {
        if avoid.contains(y) {
            let y = y.clone();
            let z = fresh_var(&y, |c| taken.contains(c));
            taken.insert(z.clone());
            match inf.rule {
                RuleId::ForallI => {
                    let p = inf.premises.pop().expect("forall_i has one premise");
                    inf.premises.push(p.rename_var(&y, &z));
                }
                _ => {
                    let minor = inf.premises.pop().expect("exists_e has a minor premise");
                    inf.premises.push(minor.rename_var(&y, &z));
                }
            }
            inf.annotation = Annotation::Eigen(z);
        }
    }
    inf.premises = inf.premises.into_iter().map(|p| freshen(p, avoid, taken)).collect();
    Derivation::Inference(inf)
}
