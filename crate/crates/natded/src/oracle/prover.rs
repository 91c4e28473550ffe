//! Propositional decision procedures: truth tables and a contraction-free sequent search.

use std::collections::{BTreeSet, HashMap};

use crate::kernel::Formula;

use super::OracleError;

fn atoms_of(f: &Formula, out: &mut Vec<String>) -> Result<(), OracleError> {
    match f {
        Formula::Atom(p, args) if args.is_empty() => {
            if !out.contains(p) {
                out.push(p.clone());
            }
            Ok(())
        }
        Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => Err(OracleError::NotPropositional(f.clone())),
        Formula::Bottom | Formula::Top => Ok(()),
        Formula::Not(a) => atoms_of(a, out),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            atoms_of(a, out)?;
            atoms_of(b, out)
        }
    }
}

fn eval(f: &Formula, atoms: &[String], row: u64) -> bool {
    match f {
        Formula::Atom(p, _) => row >> atoms.iter().position(|a| a == p).expect("collected") & 1 == 1,
        Formula::Bottom => false,
        Formula::Top => true,
        Formula::Not(a) => !eval(a, atoms, row),
        Formula::And(a, b) => eval(a, atoms, row) && eval(b, atoms, row),
        Formula::Or(a, b) => eval(a, atoms, row) || eval(b, atoms, row),
        Formula::Imp(a, b) => !eval(a, atoms, row) || eval(b, atoms, row),
        Formula::Forall(..) | Formula::Exists(..) => unreachable!("rejected by atoms_of"),
    }
}

/// Truth-table validity.
pub fn classical_valid(f: &Formula) -> Result<bool, OracleError> {
    let mut atoms = Vec::new();
    atoms_of(f, &mut atoms)?;
    if atoms.len() > 24 {
        return Err(OracleError::TooManyAtoms(atoms.len()));
    }
    Ok((0..1u64 << atoms.len()).all(|row| eval(f, &atoms, row)))
}

type Id = u32;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
enum Node {
    Atom(u32),
    Bot,
    And(Id, Id),
    Or(Id, Id),
    Imp(Id, Id),
}

/// G4ip search over hash-consed formulas, memoised across calls.
///
/// ¬A is read as A → ⊥ and ⊤ as ⊥ → ⊥.
#[derive(Default)]
pub struct SequentProver {
    nodes: Vec<Node>,
    ids: HashMap<Node, Id>,
    atoms: HashMap<String, u32>,
    memo: HashMap<(Vec<Id>, Id), bool>,
}

impl SequentProver {
    fn mk(&mut self, n: Node) -> Id {
        if let Some(&id) = self.ids.get(&n) {
            return id;
        }
        let id = self.nodes.len() as Id;
        self.nodes.push(n);
        self.ids.insert(n, id);
        id
    }

    fn atom(&mut self, name: &str) -> Id {
        let next = self.atoms.len() as u32;
        let a = *self.atoms.entry(name.to_string()).or_insert(next);
        self.mk(Node::Atom(a))
    }

    fn intern(&mut self, f: &Formula, falsum: Id) -> Result<Id, OracleError> {
        Ok(match f {
            Formula::Atom(p, args) if args.is_empty() => self.atom(p),
            Formula::Atom(..) | Formula::Forall(..) | Formula::Exists(..) => return Err(OracleError::NotPropositional(f.clone())),
            Formula::Bottom => falsum,
            Formula::Top => self.mk(Node::Imp(falsum, falsum)),
            Formula::Not(a) => {
                let a = self.intern(a, falsum)?;
                self.mk(Node::Imp(a, falsum))
            }
            Formula::And(a, b) => {
                let (a, b) = (self.intern(a, falsum)?, self.intern(b, falsum)?);
                self.mk(Node::And(a, b))
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.intern(a, falsum)?, self.intern(b, falsum)?);
                self.mk(Node::Or(a, b))
            }
            Formula::Imp(a, b) => {
                let (a, b) = (self.intern(a, falsum)?, self.intern(b, falsum)?);
                self.mk(Node::Imp(a, b))
            }
        })
    }

    fn prove(&mut self, gamma: BTreeSet<Id>, goal: Id) -> bool {
        let key = (gamma.iter().copied().collect::<Vec<_>>(), goal);
        if let Some(&r) = self.memo.get(&key) {
            return r;
        }
        let r = self.search(gamma, goal);
        self.memo.insert(key, r);
        r
    }

    fn with(gamma: &BTreeSet<Id>, remove: Id, add: &[Id]) -> BTreeSet<Id> {
        let mut g = gamma.clone();
        g.remove(&remove);
        g.extend(add.iter().copied());
        g
    }

    fn search(&mut self, gamma: BTreeSet<Id>, goal: Id) -> bool {
        let bot = self.mk(Node::Bot);
        if gamma.contains(&goal) || gamma.contains(&bot) {
            return true;
        }
        // Invertible left rules.
        for &h in &gamma {
            match self.nodes[h as usize] {
                Node::And(a, b) => return self.prove(Self::with(&gamma, h, &[a, b]), goal),
                Node::Or(a, b) => {
                    return self.prove(Self::with(&gamma, h, &[a]), goal) && self.prove(Self::with(&gamma, h, &[b]), goal);
                }
                Node::Imp(a, b) => match self.nodes[a as usize] {
                    Node::Bot => return self.prove(Self::with(&gamma, h, &[]), goal),
                    Node::Atom(_) if gamma.contains(&a) => return self.prove(Self::with(&gamma, h, &[b]), goal),
                    Node::And(c, d) => {
                        let inner = self.mk(Node::Imp(d, b));
                        let curried = self.mk(Node::Imp(c, inner));
                        return self.prove(Self::with(&gamma, h, &[curried]), goal);
                    }
                    Node::Or(c, d) => {
                        let l = self.mk(Node::Imp(c, b));
                        let r = self.mk(Node::Imp(d, b));
                        return self.prove(Self::with(&gamma, h, &[l, r]), goal);
                    }
                    _ => {}
                },
                _ => {}
            }
        }
        // Invertible right rules.
        match self.nodes[goal as usize] {
            Node::And(a, b) => return self.prove(gamma.clone(), a) && self.prove(gamma, b),
            Node::Imp(a, b) => return self.prove(Self::with(&gamma, u32::MAX, &[a]), b),
            _ => {}
        }
        if let Node::Or(a, b) = self.nodes[goal as usize] {
            if self.prove(gamma.clone(), a) || self.prove(gamma.clone(), b) {
                return true;
            }
        }
        let nested: Vec<(Id, Id, Id, Id)> = gamma
            .iter()
            .filter_map(|&h| match self.nodes[h as usize] {
                Node::Imp(a, b) => match self.nodes[a as usize] {
                    Node::Imp(c, d) => Some((h, c, d, b)),
                    _ => None,
                },
                _ => None,
            })
            .collect();
        for (h, c, d, b) in nested {
            let db = self.mk(Node::Imp(d, b));
            if self.prove(Self::with(&gamma, h, &[c, db]), d) && self.prove(Self::with(&gamma, h, &[b]), goal) {
                return true;
            }
        }
        false
    }
}

impl SequentProver {
    pub fn new() -> SequentProver {
        SequentProver::default()
    }

    fn decide(&mut self, gamma: &[Formula], goal: &Formula, minimal: bool) -> Result<bool, OracleError> {
        let falsum = if minimal {
            // No parsed identifier can start with '#'.
            self.atom("#falsum")
        } else {
            self.mk(Node::Bot)
        };
        let mut g = BTreeSet::new();
        for f in gamma {
            g.insert(self.intern(f, falsum)?);
        }
        let goal = self.intern(goal, falsum)?;
        Ok(self.prove(g, goal))
    }

    /// Intuitionistic provability of `Γ ⊢ A`.
    pub fn intuitionistic(&mut self, gamma: &[Formula], goal: &Formula) -> Result<bool, OracleError> {
        self.decide(gamma, goal, false)
    }

    /// Minimal provability of `Γ ⊢ A`, reading ⊥ as an ordinary atom.
    pub fn minimal(&mut self, gamma: &[Formula], goal: &Formula) -> Result<bool, OracleError> {
        self.decide(gamma, goal, true)
    }
}

pub fn intuitionistic_provable(f: &Formula) -> Result<bool, OracleError> {
    SequentProver::new().intuitionistic(&[], f)
}

pub fn minimal_provable(f: &Formula) -> Result<bool, OracleError> {
    SequentProver::new().minimal(&[], f)
}

/// Classical validity of `Γ ⊢ A`.
pub fn classical_entails(gamma: &[Formula], goal: &Formula) -> Result<bool, OracleError> {
    let f = gamma.iter().rev().fold(goal.clone(), |acc, g| Formula::imp(g.clone(), acc));
    classical_valid(&f)
}
