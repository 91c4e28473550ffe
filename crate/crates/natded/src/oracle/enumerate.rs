use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::kernel::Formula;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Connective {
    Not,
    And,
    Or,
    Imp,
}

/// Vocabulary of an enumeration: leaves are the atoms plus, optionally, ⊥ and ⊤.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    pub atoms: Vec<String>,
    pub constants: bool,
    pub connectives: Vec<Connective>,
}

impl Vocabulary {
    pub fn new(atoms: &[&str], constants: bool, connectives: &[Connective]) -> Vocabulary {
        Vocabulary { atoms: atoms.iter().map(|a| a.to_string()).collect(), constants, connectives: connectives.to_vec() }
    }

    fn leaves(&self) -> Vec<Formula> {
        let mut out: Vec<Formula> = self.atoms.iter().map(Formula::atom).collect();
        if self.constants {
            out.push(Formula::Bottom);
            out.push(Formula::Top);
        }
        out
    }

    fn binaries(&self) -> impl Iterator<Item = Connective> + '_ {
        self.connectives.iter().copied().filter(|c| *c != Connective::Not)
    }

    fn has_not(&self) -> bool {
        self.connectives.contains(&Connective::Not)
    }
}

fn binary(c: Connective, a: Formula, b: Formula) -> Formula {
    match c {
        Connective::And => Formula::and(a, b),
        Connective::Or => Formula::or(a, b),
        Connective::Imp => Formula::imp(a, b),
        Connective::Not => unreachable!("not is unary"),
    }
}

/// Every formula with at most `max_nodes` nodes, leaves included, smallest first.
pub fn enumerate_by_size(v: &Vocabulary, max_nodes: usize) -> Vec<Formula> {
    let mut by_size: Vec<Vec<Formula>> = vec![Vec::new(), v.leaves()];
    for n in 2..=max_nodes {
        let mut layer = Vec::new();
        if v.has_not() {
            layer.extend(by_size[n - 1].iter().map(|a| Formula::neg(a.clone())));
        }
        for c in v.binaries() {
            for left in 1..n - 1 {
                for a in &by_size[left] {
                    for b in &by_size[n - 1 - left] {
                        layer.push(binary(c, a.clone(), b.clone()));
                    }
                }
            }
        }
        by_size.push(layer);
    }
    by_size.into_iter().take(max_nodes + 1).flatten().collect()
}

/// Number of connective nodes.
pub fn connective_count(f: &Formula) -> usize {
    match f {
        Formula::Atom(..) | Formula::Bottom | Formula::Top => 0,
        Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + connective_count(a),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + connective_count(a) + connective_count(b),
    }
}

/// Uniform-shape random formula with exactly `connectives` connective nodes.
pub fn random_formula(v: &Vocabulary, connectives: usize, rng: &mut impl Rng) -> Formula {
    if connectives == 0 {
        let leaves = v.leaves();
        return leaves[rng.gen_range(0..leaves.len())].clone();
    }
    let pick = v.connectives[rng.gen_range(0..v.connectives.len())];
    match pick {
        Connective::Not => Formula::neg(random_formula(v, connectives - 1, rng)),
        c => {
            let left = rng.gen_range(0..connectives);
            binary(c, random_formula(v, left, rng), random_formula(v, connectives - 1 - left, rng))
        }
    }
}

/// `count` seeded random formulas with between `min` and `max` connective nodes.
pub fn sample_formulas(v: &Vocabulary, min: usize, max: usize, count: usize, seed: u64) -> Vec<Formula> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| {
        let n = rng.gen_range(min..=max);
        random_formula(v, n, &mut rng)
    }).collect()
}
