use std::collections::BTreeSet;
use std::fmt;
use std::hash::{Hash, Hasher};

use super::term::{fresh_var, Term};

/// First-order formula. Negation is primitive.
///
/// `==` and `Hash` identify formulas up to renaming of bound variables;
/// [`Formula::same_syntax`] compares names literally.
#[derive(Clone, Debug)]
pub enum Formula {
    Atom(String, Vec<Term>),
    Bottom,
    Top,
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Imp(Box<Formula>, Box<Formula>),
    Forall(String, Box<Formula>),
    Exists(String, Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<String>) -> Formula {
        Formula::Atom(name.into(), Vec::new())
    }

    pub fn pred(name: impl Into<String>, args: Vec<Term>) -> Formula {
        Formula::Atom(name.into(), args)
    }

    pub fn neg(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn imp(a: Formula, b: Formula) -> Formula {
        Formula::Imp(Box::new(a), Box::new(b))
    }

    pub fn forall(x: impl Into<String>, a: Formula) -> Formula {
        Formula::Forall(x.into(), Box::new(a))
    }

    pub fn exists(x: impl Into<String>, a: Formula) -> Formula {
        Formula::Exists(x.into(), Box::new(a))
    }

    pub fn as_not(&self) -> Option<&Formula> {
        match self {
            Formula::Not(a) => Some(a),
            _ => None,
        }
    }

    pub fn as_and(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::And(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_or(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Or(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_imp(&self) -> Option<(&Formula, &Formula)> {
        match self {
            Formula::Imp(a, b) => Some((a, b)),
            _ => None,
        }
    }

    pub fn as_forall(&self) -> Option<(&str, &Formula)> {
        match self {
            Formula::Forall(x, a) => Some((x, a)),
            _ => None,
        }
    }

    pub fn as_exists(&self) -> Option<(&str, &Formula)> {
        match self {
            Formula::Exists(x, a) => Some((x, a)),
            _ => None,
        }
    }

    pub fn is_bottom(&self) -> bool {
        matches!(self, Formula::Bottom)
    }

    /// Number of nodes in the formula tree (atoms and constants included).
    pub fn size(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Bottom | Formula::Top => 1,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.size(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.size() + b.size(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            Formula::Atom(..) | Formula::Bottom | Formula::Top => 0,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => 1 + a.depth().max(b.depth()),
        }
    }

    /// True if any subformula satisfies `pred`.
    pub fn any_sub(&self, pred: &impl Fn(&Formula) -> bool) -> bool {
        if pred(self) {
            return true;
        }
        match self {
            Formula::Atom(..) | Formula::Bottom | Formula::Top => false,
            Formula::Not(a) | Formula::Forall(_, a) | Formula::Exists(_, a) => a.any_sub(pred),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.any_sub(pred) || b.any_sub(pred),
        }
    }

    pub fn contains_imp(&self) -> bool {
        self.any_sub(&|f| matches!(f, Formula::Imp(..)))
    }

    pub fn contains_forall(&self) -> bool {
        self.any_sub(&|f| matches!(f, Formula::Forall(..)))
    }

    /// No quantifiers and only 0-ary predicates.
    pub fn is_propositional(&self) -> bool {
        !self.any_sub(&|f| match f {
            Formula::Atom(_, args) => !args.is_empty(),
            Formula::Forall(..) | Formula::Exists(..) => true,
            _ => false,
        })
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.free_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.free_vars_into(out);
                b.free_vars_into(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let mut inner = BTreeSet::new();
                a.free_vars_into(&mut inner);
                inner.remove(x);
                out.extend(inner);
            }
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn has_free(&self, var: &str) -> bool {
        match self {
            Formula::Atom(_, args) => args.iter().any(|t| t.occurs(var)),
            Formula::Bottom | Formula::Top => false,
            Formula::Not(a) => a.has_free(var),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => a.has_free(var) || b.has_free(var),
            Formula::Forall(x, a) | Formula::Exists(x, a) => x != var && a.has_free(var),
        }
    }

    /// Every variable name occurring anywhere, bound or free.
    pub fn all_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Formula::Atom(_, args) => args.iter().for_each(|t| t.free_vars_into(out)),
            Formula::Bottom | Formula::Top => {}
            Formula::Not(a) => a.all_vars_into(out),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
                a.all_vars_into(out);
                b.all_vars_into(out);
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                out.insert(x.clone());
                a.all_vars_into(out);
            }
        }
    }

    /// Capture-avoiding substitution of `t` for the free occurrences of `var`.
    pub fn subst(&self, var: &str, t: &Term) -> Formula {
        match self {
            Formula::Atom(p, args) => Formula::Atom(p.clone(), args.iter().map(|a| a.subst(var, t)).collect()),
            Formula::Bottom | Formula::Top => self.clone(),
            Formula::Not(a) => Formula::neg(a.subst(var, t)),
            Formula::And(a, b) => Formula::and(a.subst(var, t), b.subst(var, t)),
            Formula::Or(a, b) => Formula::or(a.subst(var, t), b.subst(var, t)),
            Formula::Imp(a, b) => Formula::imp(a.subst(var, t), b.subst(var, t)),
            Formula::Forall(y, a) | Formula::Exists(y, a) => {
                let rebuilt = |y: String, a: Formula| match self {
                    Formula::Forall(..) => Formula::forall(y, a),
                    _ => Formula::exists(y, a),
                };
                if y == var || !a.has_free(var) {
                    self.clone()
                } else if t.occurs(y) {
                    let z = fresh_var(y, |c| c == var || t.occurs(c) || a.has_free(c));
                    let renamed = a.subst(y, &Term::Var(z.clone()));
                    rebuilt(z, renamed.subst(var, t))
                } else {
                    rebuilt(y.clone(), a.subst(var, t))
                }
            }
        }
    }

    pub fn alpha_eq(&self, other: &Formula) -> bool {
        alpha_eq_in(self, other, &mut Vec::new(), &mut Vec::new())
    }

    /// Literal structural equality, bound variable names included.
    pub fn same_syntax(&self, other: &Formula) -> bool {
        match (self, other) {
            (Formula::Atom(p, xs), Formula::Atom(q, ys)) => p == q && xs == ys,
            (Formula::Bottom, Formula::Bottom) | (Formula::Top, Formula::Top) => true,
            (Formula::Not(a), Formula::Not(b)) => a.same_syntax(b),
            (Formula::And(a1, b1), Formula::And(a2, b2))
            | (Formula::Or(a1, b1), Formula::Or(a2, b2))
            | (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => a1.same_syntax(a2) && b1.same_syntax(b2),
            (Formula::Forall(x, a), Formula::Forall(y, b)) | (Formula::Exists(x, a), Formula::Exists(y, b)) => {
                x == y && a.same_syntax(b)
            }
            _ => false,
        }
    }

    fn precedence(&self) -> u8 {
        match self {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Forall(..) | Formula::Exists(..) => 4,
            _ => 5,
        }
    }
}

fn term_alpha_eq<'a>(s: &'a Term, t: &'a Term, ea: &[&'a str], eb: &[&'a str]) -> bool {
    match (s, t) {
        (Term::Var(x), Term::Var(y)) => {
            let ix = ea.iter().rposition(|v| v == x);
            let iy = eb.iter().rposition(|v| v == y);
            match (ix, iy) {
                (Some(i), Some(j)) => ea.len() - i == eb.len() - j,
                (None, None) => x == y,
                _ => false,
            }
        }
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g && xs.len() == ys.len() && xs.iter().zip(ys).all(|(a, b)| term_alpha_eq(a, b, ea, eb))
        }
        _ => false,
    }
}

fn alpha_eq_in<'a>(a: &'a Formula, b: &'a Formula, ea: &mut Vec<&'a str>, eb: &mut Vec<&'a str>) -> bool {
    match (a, b) {
        (Formula::Atom(p, xs), Formula::Atom(q, ys)) => {
            p == q && xs.len() == ys.len() && xs.iter().zip(ys).all(|(s, t)| term_alpha_eq(s, t, ea, eb))
        }
        (Formula::Bottom, Formula::Bottom) | (Formula::Top, Formula::Top) => true,
        (Formula::Not(x), Formula::Not(y)) => alpha_eq_in(x, y, ea, eb),
        (Formula::And(a1, b1), Formula::And(a2, b2))
        | (Formula::Or(a1, b1), Formula::Or(a2, b2))
        | (Formula::Imp(a1, b1), Formula::Imp(a2, b2)) => alpha_eq_in(a1, a2, ea, eb) && alpha_eq_in(b1, b2, ea, eb),
        (Formula::Forall(x, a1), Formula::Forall(y, a2)) | (Formula::Exists(x, a1), Formula::Exists(y, a2)) => {
            ea.push(x);
            eb.push(y);
            let r = alpha_eq_in(a1, a2, ea, eb);
            ea.pop();
            eb.pop();
            r
        }
        _ => false,
    }
}

fn hash_term<'a, H: Hasher>(t: &'a Term, env: &[&'a str], h: &mut H) {
    match t {
        Term::Var(x) => match env.iter().rposition(|v| v == x) {
            Some(i) => {
                0u8.hash(h);
                (env.len() - i).hash(h);
            }
            None => {
                1u8.hash(h);
                x.hash(h);
            }
        },
        Term::App(f, args) => {
            2u8.hash(h);
            f.hash(h);
            args.len().hash(h);
            args.iter().for_each(|a| hash_term(a, env, h));
        }
    }
}

fn hash_formula<'a, H: Hasher>(f: &'a Formula, env: &mut Vec<&'a str>, h: &mut H) {
    std::mem::discriminant(f).hash(h);
    match f {
        Formula::Atom(p, args) => {
            p.hash(h);
            args.len().hash(h);
            args.iter().for_each(|a| hash_term(a, env, h));
        }
        Formula::Bottom | Formula::Top => {}
        Formula::Not(a) => hash_formula(a, env, h),
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Imp(a, b) => {
            hash_formula(a, env, h);
            hash_formula(b, env, h);
        }
        Formula::Forall(x, a) | Formula::Exists(x, a) => {
            env.push(x);
            hash_formula(a, env, h);
            env.pop();
        }
    }
}

impl PartialEq for Formula {
    fn eq(&self, other: &Formula) -> bool {
        self.alpha_eq(other)
    }
}

impl Eq for Formula {}

impl Hash for Formula {
    fn hash<H: Hasher>(&self, state: &mut H) {
        hash_formula(self, &mut Vec::new(), state);
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let child = |f: &mut fmt::Formatter<'_>, c: &Formula, min: u8| {
            if c.precedence() < min {
                write!(f, "({c})")
            } else {
                write!(f, "{c}")
            }
        };
        match self {
            Formula::Atom(p, args) if args.is_empty() => write!(f, "{p}"),
            Formula::Atom(p, args) => {
                write!(f, "{p}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
            Formula::Bottom => write!(f, "⊥"),
            Formula::Top => write!(f, "⊤"),
            Formula::Not(a) => {
                write!(f, "¬")?;
                child(f, a, 4)
            }
            Formula::And(a, b) | Formula::Or(a, b) => {
                let op = if matches!(self, Formula::And(..)) { "∧" } else { "∨" };
                let p = self.precedence();
                child(f, a, p + 1)?;
                write!(f, " {op} ")?;
                child(f, b, p + 1)
            }
            Formula::Imp(a, b) => {
                child(f, a, 2)?;
                write!(f, " → ")?;
                child(f, b, 1)
            }
            Formula::Forall(x, a) | Formula::Exists(x, a) => {
                let q = if matches!(self, Formula::Forall(..)) { "∀" } else { "∃" };
                write!(f, "{q}{x} ")?;
                child(f, a, 4)
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(x: &str) -> Formula {
        Formula::pred("P", vec![Term::var(x)])
    }

    fn r(x: Term, y: Term) -> Formula {
        Formula::pred("R", vec![x, y])
    }

    #[test]
    fn subst_direct_and_bound() {
        let c = Term::constant("c");
        assert!(p("x").subst("x", &c).same_syntax(&Formula::pred("P", vec![c.clone()])));
        let all = Formula::forall("x", p("x"));
        assert!(all.subst("x", &c).same_syntax(&all));
    }

    #[test]
    fn subst_renames_capturing_binder() {
        let f = Formula::exists("y", r(Term::var("x"), Term::var("y")));
        let t = Term::app("f", vec![Term::var("y")]);
        let out = f.subst("x", &t);
        let (z, body) = out.as_exists().unwrap();
        assert_ne!(z, "y");
        assert!(body.same_syntax(&r(t.clone(), Term::var(z))));
        assert_eq!(out, Formula::exists("z", r(t, Term::var("z"))));
    }

    #[test]
    fn alpha_eq_examples() {
        assert_eq!(Formula::forall("x", p("x")), Formula::forall("y", p("y")));
        assert_ne!(Formula::forall("x", p("x")), Formula::forall("y", Formula::pred("P", vec![Term::constant("c")])));
        let a = Formula::exists("x", Formula::forall("y", r(Term::var("x"), Term::var("y"))));
        let b = Formula::exists("y", Formula::forall("x", r(Term::var("y"), Term::var("x"))));
        assert_eq!(a, b);
        let c = Formula::exists("y", Formula::forall("x", r(Term::var("x"), Term::var("y"))));
        assert_ne!(a, c);
    }

    #[test]
    fn free_and_bound_occurrences_differ() {
        assert_ne!(Formula::forall("x", p("y")), Formula::forall("y", p("y")));
    }

    #[test]
    fn display_uses_minimal_parentheses() {
        let pp = Formula::atom("P");
        let q = Formula::atom("Q");
        let f = Formula::and(
            Formula::imp(Formula::neg(Formula::neg(pp.clone())), pp.clone()),
            Formula::imp(Formula::neg(Formula::neg(q.clone())), q.clone()),
        );
        assert_eq!(f.to_string(), "(¬¬P → P) ∧ (¬¬Q → Q)");
        let g = Formula::imp(Formula::imp(pp.clone(), q.clone()), Formula::imp(q, pp));
        assert_eq!(g.to_string(), "(P → Q) → Q → P");
    }
}
