use std::fmt::Write;

use crate::kernel::{Annotation, Derivation, Formula, RuleId, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RenderFormat {
    Text,
    AsciiTree,
    Latex,
}

pub fn render(d: &Derivation, format: RenderFormat) -> String {
    match format {
        RenderFormat::Text => render_text(d),
        RenderFormat::AsciiTree => render_ascii(d),
        RenderFormat::Latex => render_latex(d),
    }
}

pub fn term_sexp(t: &Term) -> String {
    match t {
        Term::Var(x) => x.clone(),
        Term::App(f, args) => {
            let mut s = format!("(fun {f}");
            for a in args {
                s.push(' ');
                s.push_str(&term_sexp(a));
            }
            s.push(')');
            s
        }
    }
}

pub fn formula_sexp(f: &Formula) -> String {
    match f {
        Formula::Atom(p, args) => {
            let mut s = format!("(pred {p}");
            for a in args {
                s.push(' ');
                s.push_str(&term_sexp(a));
            }
            s.push(')');
            s
        }
        Formula::Bottom => "bot".into(),
        Formula::Top => "top".into(),
        Formula::Not(a) => format!("(not {})", formula_sexp(a)),
        Formula::And(a, b) => format!("(and {} {})", formula_sexp(a), formula_sexp(b)),
        Formula::Or(a, b) => format!("(or {} {})", formula_sexp(a), formula_sexp(b)),
        Formula::Imp(a, b) => format!("(imp {} {})", formula_sexp(a), formula_sexp(b)),
        Formula::Forall(x, a) => format!("(forall {x} {})", formula_sexp(a)),
        Formula::Exists(x, a) => format!("(exists {x} {})", formula_sexp(a)),
    }
}

fn text_head(d: &Derivation) -> String {
    let inf = match d {
        Derivation::Assumption { formula, label: Some(l) } => return format!("(assume {l} {}", formula_sexp(formula)),
        Derivation::Assumption { formula, label: None } => return format!("(assume {}", formula_sexp(formula)),
        Derivation::Inference(inf) => inf,
    };
    let label = inf.discharge.map(|l| l.to_string()).unwrap_or_default();
    let witness = || match &inf.annotation {
        Annotation::Witness(t) => term_sexp(t),
        _ => String::new(),
    };
    let eigen = || match &inf.annotation {
        Annotation::Eigen(x) => x.clone(),
        _ => String::new(),
    };
    let c = &inf.conclusion;
    match inf.rule {
        RuleId::Raa => format!("(raa {label} {}", formula_sexp(c)),
        RuleId::TopI => "(top-i".into(),
        RuleId::NotI => format!("(not-i {label} {}", formula_sexp(c.as_not().unwrap_or(c))),
        RuleId::NotE => "(not-e".into(),
        RuleId::AndI => "(and-i".into(),
        RuleId::AndE1 => "(and-e1".into(),
        RuleId::AndE2 => "(and-e2".into(),
        RuleId::OrI1 => format!("(or-i1 {}", c.as_or().map_or_else(|| formula_sexp(c), |(_, b)| formula_sexp(b))),
        RuleId::OrI2 => format!("(or-i2 {}", c.as_or().map_or_else(|| formula_sexp(c), |(a, _)| formula_sexp(a))),
        RuleId::OrE => format!("(or-e {label}"),
        RuleId::ImpI => format!("(imp-i {label} {}", c.as_imp().map_or_else(|| formula_sexp(c), |(a, _)| formula_sexp(a))),
        RuleId::ImpE => "(imp-e".into(),
        RuleId::ForallI => format!("(forall-i {}", eigen()),
        RuleId::ForallE => format!("(forall-e {}", witness()),
        RuleId::ExistsI => format!("(exists-i {} {}", formula_sexp(c), witness()),
        RuleId::ExistsE => format!("(exists-e {label} {}", eigen()),
    }
}

/// S-expression text accepted by [`super::parse_derivation`].
pub fn render_text(d: &Derivation) -> String {
    fn go(d: &Derivation, indent: usize, out: &mut String) {
        out.push_str(&text_head(d));
        for p in d.premises() {
            out.push('\n');
            out.push_str(&" ".repeat(indent + 2));
            go(p, indent + 2, out);
        }
        out.push(')');
    }
    let mut out = String::new();
    go(d, 0, &mut out);
    out.push('\n');
    out
}

/// Rule name with its discharge label; zero-discharge raa prints as efq.
pub fn rule_tag(d: &Derivation) -> String {
    match d {
        Derivation::Assumption { label: Some(l), .. } => format!("hyp {l}"),
        Derivation::Assumption { label: None, .. } => "open".into(),
        Derivation::Inference(inf) => {
            if inf.rule == RuleId::Raa && !d.discharges_any() {
                return "efq".into();
            }
            match inf.discharge {
                Some(l) => format!("{} {l}", inf.rule),
                None => inf.rule.to_string(),
            }
        }
    }
}

pub fn render_ascii(d: &Derivation) -> String {
    fn go(d: &Derivation, prefix: &str, out: &mut String) {
        let kids = d.premises();
        for (i, p) in kids.iter().enumerate() {
            let last = i + 1 == kids.len();
            let _ = writeln!(out, "{prefix}{}{}  [{}]", if last { "`-- " } else { "|-- " }, p.conclusion(), rule_tag(p));
            let next = format!("{prefix}{}", if last { "    " } else { "|   " });
            go(p, &next, out);
        }
    }
    let mut out = format!("{}  [{}]\n", d.conclusion(), rule_tag(d));
    go(d, "", &mut out);
    out
}

fn term_latex(t: &Term) -> String {
    match t {
        Term::Var(x) => x.clone(),
        Term::App(f, args) if args.is_empty() => f.clone(),
        Term::App(f, args) => format!("{f}({})", args.iter().map(term_latex).collect::<Vec<_>>().join(", ")),
    }
}

pub fn formula_latex(f: &Formula) -> String {
    fn prec(f: &Formula) -> u8 {
        match f {
            Formula::Imp(..) => 1,
            Formula::Or(..) => 2,
            Formula::And(..) => 3,
            Formula::Not(_) | Formula::Forall(..) | Formula::Exists(..) => 4,
            _ => 5,
        }
    }
    fn wrap(f: &Formula, min: u8) -> String {
        let s = formula_latex(f);
        if prec(f) < min {
            format!("({s})")
        } else {
            s
        }
    }
    match f {
        Formula::Atom(p, args) if args.is_empty() => p.clone(),
        Formula::Atom(p, args) => format!("{p}({})", args.iter().map(term_latex).collect::<Vec<_>>().join(", ")),
        Formula::Bottom => "\\bot".into(),
        Formula::Top => "\\top".into(),
        Formula::Not(a) => format!("\\lnot {}", wrap(a, 4)),
        Formula::And(a, b) => format!("{} \\land {}", wrap(a, 4), wrap(b, 4)),
        Formula::Or(a, b) => format!("{} \\lor {}", wrap(a, 3), wrap(b, 3)),
        Formula::Imp(a, b) => format!("{} \\to {}", wrap(a, 2), wrap(b, 1)),
        Formula::Forall(x, a) => format!("\\forall {x}\\, {}", wrap(a, 4)),
        Formula::Exists(x, a) => format!("\\exists {x}\\, {}", wrap(a, 4)),
    }
}

fn rule_latex(d: &Derivation) -> String {
    let Derivation::Inference(inf) = d else { return String::new() };
    let sup = inf.discharge.map(|l| format!("^{{{l}}}")).unwrap_or_default();
    match inf.rule {
        RuleId::Raa if !d.discharges_any() => "\\mathsf{efq}".into(),
        RuleId::Raa => format!("\\mathsf{{raa}}{sup}"),
        RuleId::TopI => "\\top_{\\mathsf{i}}".into(),
        RuleId::NotI => format!("\\lnot_{{\\mathsf{{i}}}}{sup}"),
        RuleId::NotE => "\\lnot_{\\mathsf{e}}".into(),
        RuleId::AndI => "\\land_{\\mathsf{i}}".into(),
        RuleId::AndE1 => "\\land_{\\mathsf{e}1}".into(),
        RuleId::AndE2 => "\\land_{\\mathsf{e}2}".into(),
        RuleId::OrI1 => "\\lor_{\\mathsf{i}1}".into(),
        RuleId::OrI2 => "\\lor_{\\mathsf{i}2}".into(),
        RuleId::OrE => format!("\\lor_{{\\mathsf{{e}}}}{sup}"),
        RuleId::ImpI => format!("{{\\to_{{\\mathsf{{i}}}}}}{sup}"),
        RuleId::ImpE => "\\to_{\\mathsf{e}}".into(),
        RuleId::ForallI => "\\forall_{\\mathsf{i}}".into(),
        RuleId::ForallE => "\\forall_{\\mathsf{e}}".into(),
        RuleId::ExistsI => "\\exists_{\\mathsf{i}}".into(),
        RuleId::ExistsE => format!("\\exists_{{\\mathsf{{e}}}}{sup}"),
    }
}

/// A `bussproofs` prooftree block, one inference line per rule instance.
pub fn render_latex(d: &Derivation) -> String {
    fn go(d: &Derivation, out: &mut String) {
        match d {
            Derivation::Assumption { formula, label: Some(l) } => {
                let _ = writeln!(out, "\\AxiomC{{$[{}]^{{{l}}}$}}", formula_latex(formula));
            }
            Derivation::Assumption { formula, label: None } => {
                let _ = writeln!(out, "\\AxiomC{{${}$}}", formula_latex(formula));
            }
            Derivation::Inference(inf) => {
                if inf.premises.is_empty() {
                    out.push_str("\\AxiomC{}\n");
                }
                for p in &inf.premises {
                    go(p, out);
                }
                let cmd = match inf.premises.len() {
                    0 | 1 => "UnaryInfC",
                    2 => "BinaryInfC",
                    _ => "TrinaryInfC",
                };
                let _ = writeln!(out, "\\RightLabel{{\\scriptsize ${}$}}", rule_latex(d));
                let _ = writeln!(out, "\\{cmd}{{${}$}}", formula_latex(&inf.conclusion));
            }
        }
    }
    let mut out = String::from("\\begin{prooftree}\n");
    go(d, &mut out);
    out.push_str("\\end{prooftree}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_derivation;

    const EFQ: &str = "(not-i 2 (pred P) (not-e (assume (not (pred Q))) (raa 1 (pred Q) (not-e (assume 2 (not (pred P))) (assume 2 (pred P))))))";

    #[test]
    fn text_round_trips() {
        let d = parse_derivation(EFQ).unwrap();
        let text = render_text(&d);
        let back = parse_derivation(&text).unwrap();
        assert_eq!(d, back);
        assert_eq!(render_text(&back), text);
    }

    #[test]
    fn efq_is_named_in_display_formats() {
        let d = parse_derivation("(raa 1 (pred P) (assume bot))").unwrap();
        assert!(render_ascii(&d).contains("[efq]"));
        assert!(render_latex(&d).contains("\\mathsf{efq}"));
    }
}
