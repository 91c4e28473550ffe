use std::path::{Path, PathBuf};

use natded::glivenko::{self, inverse_glivenko, Embedding, TranslationMode};
use natded::kernel::{self, check_in, raa_report, Derivation, Formula, LabelSource, SystemId};
use natded::oracle::{classical_entails, SequentProver};
use natded::strategy::{self, Strategy, Target};
use natded::syntax::{formula_sexp, parse_formula, render, render_text, RenderFormat};

use crate::failure::{emit, load_checked, load_formulas, Failure, Outcome};
use crate::{FormatArg, LogicArg, Mode, StrategyArg, SystemArg, TranslateMode};

fn target(mode: Mode) -> Target {
    match mode {
        Mode::J => Target::J,
        Mode::M => Target::M,
    }
}

fn embedding(mode: Mode) -> Embedding {
    match mode {
        Mode::J => Embedding::Intuitionistic,
        Mode::M => Embedding::Minimal,
    }
}

/// Re-checks a derivation about to be written; failure here is a bug.
fn recheck(d: &Derivation, what: &str) -> Outcome {
    kernel::check(d).map(|_| ()).map_err(|e| Failure::Internal(format!("{what} does not check: {e}")))
}

pub fn check(file: &Path, system: Option<SystemArg>) -> Outcome {
    let (d, j) = load_checked(file)?;
    if let Some(s) = system {
        let s = match s {
            SystemArg::Nm => SystemId::nm(),
            SystemArg::Nj => SystemId::nj(),
            SystemArg::Nk => SystemId::nk(),
        };
        check_in(&d, &s).map_err(|e| Failure::Rejected(format!("{}: {e}", file.display())))?;
    }
    println!("{j}");
    Ok(())
}

pub fn size(file: &Path) -> Outcome {
    let (d, _) = load_checked(file)?;
    println!("{}", raa_report(&d));
    Ok(())
}

pub fn postpone(mode: Mode, trace: Option<&Path>, file: &Path, out: Option<&Path>) -> Outcome {
    let (d, _) = load_checked(file)?;
    let (result, steps) = strategy::postpone(d, target(mode))?;
    recheck(&result, "postponed derivation")?;
    if let Some(log) = trace {
        emit(Some(log), &steps.to_log())?;
    }
    eprintln!("{} steps", steps.steps.len());
    emit(out, &render_text(&result))
}

pub fn translate(mode: TranslateMode, pretty: bool, file: &Path) -> Outcome {
    let mode = match mode {
        TranslateMode::M => TranslationMode::Minimal,
        TranslateMode::J => TranslationMode::Intuitionistic,
        TranslateMode::Mstar => TranslationMode::MinimalStar,
    };
    for f in load_formulas(file)? {
        let t = glivenko::translate(&f, mode)?;
        if pretty {
            println!("{t}");
        } else {
            println!("{}", formula_sexp(&t));
        }
    }
    Ok(())
}

fn refutation_path(out: &Path) -> PathBuf {
    out.with_extension("refutation.nd")
}

pub fn glivenko(mode: Mode, file: &Path, out: Option<&Path>) -> Outcome {
    let (d, _) = load_checked(file)?;
    let result = glivenko::glivenko(&d, embedding(mode), &mut LabelSource::above(&d))?;
    recheck(&result.double_negation, "double negation")?;
    recheck(&result.refutation, "refutation")?;
    let dn = render_text(&result.double_negation);
    let refutation = render_text(&result.refutation);
    match out {
        Some(p) => {
            emit(Some(p), &dn)?;
            emit(Some(&refutation_path(p)), &refutation)
        }
        None => emit(None, &format!("; double negation\n{dn}; refutation\n{refutation}")),
    }
}

fn formula_arg(arg: &str) -> Result<Formula, Failure> {
    let path = Path::new(arg);
    if path.is_file() {
        let mut fs = load_formulas(path)?;
        if fs.len() != 1 {
            return Err(Failure::Parse(format!("{arg}: expected exactly one formula")));
        }
        return Ok(fs.remove(0));
    }
    parse_formula(arg).map_err(|e| Failure::Parse(format!("{arg}: {e}")))
}

pub fn inverse(mode: Mode, original: &str, assumptions: &[String], file: &Path, out: Option<&Path>) -> Outcome {
    let (d, _) = load_checked(file)?;
    let original = formula_arg(original)?;
    let gamma = assumptions.iter().map(|a| formula_arg(a)).collect::<Result<Vec<_>, _>>()?;
    let e = embedding(mode);
    check_in(&d, &e.system()).map_err(|err| Failure::Rejected(format!("{}: {err}", file.display())))?;
    let result = inverse_glivenko(&d, &original, &gamma, e, &mut LabelSource::above(&d))?;
    recheck(&result, "recovered derivation")?;
    emit(out, &render_text(&result))
}

pub fn prove(logic: LogicArg, file: &Path) -> Outcome {
    let mut fs = load_formulas(file)?;
    let goal = fs.pop().expect("at least one formula");
    let verdict = match logic {
        LogicArg::C => classical_entails(&fs, &goal)?,
        LogicArg::I => SequentProver::new().intuitionistic(&fs, &goal)?,
        LogicArg::M => SequentProver::new().minimal(&fs, &goal)?,
    };
    println!("{}", if verdict { "provable" } else { "not provable" });
    Ok(())
}

pub fn render_derivation(format: FormatArg, file: &Path) -> Outcome {
    let format = match format {
        FormatArg::Text => RenderFormat::Text,
        FormatArg::Ascii => RenderFormat::AsciiTree,
        FormatArg::Latex => RenderFormat::Latex,
    };
    let (d, _) = load_checked(file)?;
    emit(None, &render(&d, format))
}

pub fn strategy_of(s: StrategyArg, seed: u64) -> Strategy {
    match s {
        StrategyArg::Maximal => Strategy::Maximal,
        StrategyArg::Random => Strategy::Random(seed),
        StrategyArg::Innermost => Strategy::Innermost,
    }
}

pub fn explore(s: StrategyArg, fuel: usize, seed: u64, file: &Path) -> Outcome {
    let (d, _) = load_checked(file)?;
    let (outcome, _) = strategy::explore(d, strategy_of(s, seed), fuel)?;
    println!("{outcome}");
    Ok(())
}
