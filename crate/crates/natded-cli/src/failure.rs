use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;

use natded::glivenko::GlivenkoError;
use natded::kernel::{check, Derivation, Formula, Judgment};
use natded::oracle::OracleError;
use natded::strategy::StrategyError;
use natded::syntax::{parse_derivation, parse_formulas, SyntaxError};

/// A failed command, carrying its exit status.
#[derive(Debug)]
pub enum Failure {
    /// Input rejected by the checker or a precondition.
    Rejected(String),
    Parse(String),
    /// Something that should never happen on any input.
    Internal(String),
}

impl Failure {
    pub fn status(&self) -> u8 {
        match self {
            Failure::Rejected(_) => 1,
            Failure::Parse(_) => 2,
            Failure::Internal(_) => 3,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Rejected(m) | Failure::Parse(m) => f.write_str(m),
            Failure::Internal(m) => write!(f, "internal error: {m}"),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Failure {
        Failure::Rejected(e.to_string())
    }
}

impl From<StrategyError> for Failure {
    fn from(e: StrategyError) -> Failure {
        match e {
            StrategyError::PreconditionForallIntro | StrategyError::PreconditionImpIntro | StrategyError::Check(_) => {
                Failure::Rejected(e.to_string())
            }
            StrategyError::Rewrite(_) | StrategyError::InvariantBreach(_) => Failure::Internal(e.to_string()),
        }
    }
}

impl From<GlivenkoError> for Failure {
    fn from(e: GlivenkoError) -> Failure {
        match e {
            GlivenkoError::Strategy(s) => s.into(),
            GlivenkoError::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

impl From<OracleError> for Failure {
    fn from(e: OracleError) -> Failure {
        match e {
            OracleError::Internal(_) => Failure::Internal(e.to_string()),
            _ => Failure::Rejected(e.to_string()),
        }
    }
}

pub type Outcome = Result<(), Failure>;

/// Reads `path`, or standard input when it is "-".
fn read_input(path: &Path) -> Result<String, Failure> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| Failure::Rejected(format!("{}: {e}", path.display())))
    }
}

fn syntax_failure(path: &Path, text: &str, e: SyntaxError) -> Failure {
    let (line, col) = e.span().line_col(text);
    let msg = format!("{}:{line}:{col}: {e}", path.display());
    match e {
        SyntaxError::Schema { .. } => Failure::Rejected(msg),
        SyntaxError::Parse { .. } | SyntaxError::ArityMismatch { .. } => Failure::Parse(msg),
    }
}

pub fn load_derivation(path: &Path) -> Result<Derivation, Failure> {
    let text = read_input(path)?;
    parse_derivation(&text).map_err(|e| syntax_failure(path, &text, e))
}

/// Parses and checks a derivation file.
pub fn load_checked(path: &Path) -> Result<(Derivation, Judgment), Failure> {
    let d = load_derivation(path)?;
    let j = check(&d).map_err(|e| Failure::Rejected(format!("{}: {e}", path.display())))?;
    Ok((d, j))
}

pub fn load_formulas(path: &Path) -> Result<Vec<Formula>, Failure> {
    let text = read_input(path)?;
    let fs = parse_formulas(&text).map_err(|e| syntax_failure(path, &text, e))?;
    if fs.is_empty() {
        return Err(Failure::Parse(format!("{}: no formula found", path.display())));
    }
    Ok(fs)
}

/// Writes to `path`, or to standard output when there is none.
pub fn emit(path: Option<&Path>, text: &str) -> Outcome {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Rejected(format!("{}: {e}", p.display()))),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}
