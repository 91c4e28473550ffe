use std::fmt;

/// Byte range `[start, end)` into the parsed text.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SourceSpan {
    pub start: usize,
    pub end: usize,
}

impl SourceSpan {
    pub fn new(start: usize, end: usize) -> SourceSpan {
        debug_assert!(start <= end);
        SourceSpan { start, end }
    }

    /// 1-based line and column of `start` within `text`.
    pub fn line_col(&self, text: &str) -> (usize, usize) {
        let before = &text[..self.start.min(text.len())];
        let line = before.matches('\n').count() + 1;
        let col = before.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        (line, col)
    }
}

impl fmt::Display for SourceSpan {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}..{}", self.start, self.end)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Sexp {
    Atom(String, SourceSpan),
    List(Vec<Sexp>, SourceSpan),
}

impl Sexp {
    pub fn span(&self) -> SourceSpan {
        match self {
            Sexp::Atom(_, s) | Sexp::List(_, s) => *s,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReadError {
    pub span: SourceSpan,
    pub message: String,
}

fn err(start: usize, end: usize, message: impl Into<String>) -> ReadError {
    ReadError { span: SourceSpan::new(start, end), message: message.into() }
}

/// Reads every top-level s-expression in `text`. `;` starts a comment.
pub fn read_all(text: &str) -> Result<Vec<Sexp>, ReadError> {
    let bytes = text.as_bytes();
    let mut stack: Vec<(usize, Vec<Sexp>)> = Vec::new();
    let mut top = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i];
        match c {
            b';' => {
                while i < bytes.len() && bytes[i] != b'\n' {
                    i += 1;
                }
            }
            b'(' => {
                stack.push((i, Vec::new()));
                i += 1;
            }
            b')' => {
                let (start, items) = stack.pop().ok_or_else(|| err(i, i + 1, "unbalanced ')'"))?;
                let list = Sexp::List(items, SourceSpan::new(start, i + 1));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(list),
                    None => top.push(list),
                }
                i += 1;
            }
            c if c.is_ascii_whitespace() => i += 1,
            _ => {
                let start = i;
                while i < bytes.len() && !bytes[i].is_ascii_whitespace() && !matches!(bytes[i], b'(' | b')' | b';') {
                    i += 1;
                }
                let atom = Sexp::Atom(text[start..i].to_string(), SourceSpan::new(start, i));
                match stack.last_mut() {
                    Some((_, parent)) => parent.push(atom),
                    None => top.push(atom),
                }
            }
        }
    }
    if let Some((start, _)) = stack.pop() {
        return Err(err(start, text.len(), "unclosed '('"));
    }
    Ok(top)
}

/// Reads exactly one s-expression.
pub fn read_one(text: &str) -> Result<Sexp, ReadError> {
    let mut all = read_all(text)?;
    match all.len() {
        0 => Err(err(0, text.len(), "empty input")),
        1 => Ok(all.pop().unwrap()),
        _ => {
            let s = all[1].span();
            Err(err(s.start, s.end, "trailing input after the first expression"))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_nested_lists_with_comments() {
        let s = read_one("; header\n(a (b c) ; note\n d)").unwrap();
        let Sexp::List(items, span) = s else { panic!() };
        assert_eq!(items.len(), 3);
        assert_eq!(span, SourceSpan::new(9, 28));
    }

    #[test]
    fn reports_unbalanced_parens() {
        assert!(read_one("(a (b)").is_err());
        assert!(read_one("(a))").is_err());
    }

    #[test]
    fn line_col_counts_from_one() {
        let text = "(a\n  b)";
        assert_eq!(SourceSpan::new(5, 6).line_col(text), (2, 3));
    }
}
