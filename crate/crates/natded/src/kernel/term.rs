use std::collections::BTreeSet;
use std::fmt;

/// First-order term: a variable or a function symbol applied to arguments.
///
/// The arity of an application is the length of its argument list.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(name: impl Into<String>) -> Term {
        Term::Var(name.into())
    }

    pub fn app(name: impl Into<String>, args: Vec<Term>) -> Term {
        Term::App(name.into(), args)
    }

    pub fn constant(name: impl Into<String>) -> Term {
        Term::App(name.into(), Vec::new())
    }

    pub fn free_vars_into(&self, out: &mut BTreeSet<String>) {
        match self {
            Term::Var(x) => {
                out.insert(x.clone());
            }
            Term::App(_, args) => args.iter().for_each(|a| a.free_vars_into(out)),
        }
    }

    pub fn free_vars(&self) -> BTreeSet<String> {
        let mut out = BTreeSet::new();
        self.free_vars_into(&mut out);
        out
    }

    pub fn occurs(&self, var: &str) -> bool {
        match self {
            Term::Var(x) => x == var,
            Term::App(_, args) => args.iter().any(|a| a.occurs(var)),
        }
    }

    pub fn subst(&self, var: &str, t: &Term) -> Term {
        match self {
            Term::Var(x) if x == var => t.clone(),
            Term::Var(_) => self.clone(),
            Term::App(f, args) => Term::App(f.clone(), args.iter().map(|a| a.subst(var, t)).collect()),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(x) => write!(f, "{x}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        write!(f, ", ")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

/// Returns a variable name derived from `base` that `taken` rejects.
pub fn fresh_var(base: &str, taken: impl Fn(&str) -> bool) -> String {
    let stem = base.trim_end_matches(|c: char| c.is_ascii_digit());
    let stem = if stem.is_empty() { "v" } else { stem };
    (1..)
        .map(|i| format!("{stem}{i}"))
        .find(|cand| !taken(cand))
        .expect("unbounded search")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subst_replaces_nested_occurrences() {
        let t = Term::app("f", vec![Term::var("x"), Term::app("g", vec![Term::var("x")])]);
        let r = t.subst("x", &Term::constant("c"));
        assert_eq!(r.to_string(), "f(c, g(c))");
    }

    #[test]
    fn fresh_var_skips_taken_names() {
        let taken = ["y1", "y2"];
        assert_eq!(fresh_var("y", |s| taken.contains(&s)), "y3");
        assert_eq!(fresh_var("x7", |_| false), "x1");
    }
}
