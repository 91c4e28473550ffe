mod commands;
mod failure;
mod stress;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "natded", version, about = "Check, transform and render natural deduction derivations")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum Mode {
    J,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum TranslateMode {
    M,
    J,
    Mstar,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum LogicArg {
    C,
    I,
    M,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum SystemArg {
    Nm,
    Nj,
    Nk,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum FormatArg {
    Text,
    Ascii,
    Latex,
}

#[derive(Clone, Copy, ValueEnum)]
pub enum StrategyArg {
    Maximal,
    Random,
    Innermost,
}

#[derive(Subcommand)]
enum Command {
    /// Check a derivation and print its judgment.
    Check {
        file: PathBuf,
        /// Also require every rule to belong to this system.
        #[arg(long, value_enum)]
        system: Option<SystemArg>,
    },
    /// Print every raa instance with its distance, and the two sizes.
    Size { file: PathBuf },
    /// Push every raa to the root.
    Postpone {
        #[arg(long, value_enum)]
        mode: Mode,
        /// Write the step log here.
        #[arg(long, value_name = "LOG")]
        trace: Option<PathBuf>,
        file: PathBuf,
        #[arg(short, value_name = "OUT")]
        o: Option<PathBuf>,
    },
    /// Translate a formula.
    Translate {
        #[arg(long, value_enum)]
        mode: TranslateMode,
        /// Print with logical symbols instead of s-expressions.
        #[arg(long)]
        pretty: bool,
        formula_file: PathBuf,
    },
    /// Turn a classical derivation into a minimal or intuitionistic one of the double negation.
    Glivenko {
        #[arg(long, value_enum)]
        mode: Mode,
        file: PathBuf,
        /// Double negation goes to OUT, the refutation next to it with extension .refutation.nd.
        #[arg(short, value_name = "OUT")]
        o: Option<PathBuf>,
    },
    /// Recover a classical derivation from one of a translated double negation.
    Inverse {
        #[arg(long, value_enum)]
        mode: Mode,
        /// The untranslated conclusion, as an s-expression or a file holding one.
        #[arg(long)]
        original: String,
        /// An untranslated assumption; repeat for each one.
        #[arg(long = "assume", value_name = "FORMULA")]
        assumptions: Vec<String>,
        file: PathBuf,
        #[arg(short, value_name = "OUT")]
        o: Option<PathBuf>,
    },
    /// Decide a propositional formula; earlier formulas in the file are assumptions.
    Prove {
        #[arg(long, value_enum)]
        logic: LogicArg,
        formula_file: PathBuf,
    },
    /// Print a derivation as an indented tree, an ASCII proof tree or bussproofs LaTeX.
    Render {
        #[arg(long, value_enum, default_value = "text")]
        format: FormatArg,
        file: PathBuf,
    },
    /// Run the property suite on generated derivations.
    Stress {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 100)]
        count: u64,
        /// Comma-separated settings, for example "mode=m,depth=5,atoms=P:Q,density=0.5".
        #[arg(long, default_value = "mode=j")]
        profile: String,
    },
    /// Reduce with an alternative redex strategy and report whether it terminates.
    Explore {
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long)]
        fuel: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Explore this many generated derivations instead of FILE.
        #[arg(long, value_name = "COUNT")]
        generated: Option<u64>,
        /// Generator settings used with --generated.
        #[arg(long, default_value = "mode=j")]
        profile: String,
        #[arg(required_unless_present = "generated")]
        file: Option<PathBuf>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Check { file, system } => commands::check(&file, system),
        Command::Size { file } => commands::size(&file),
        Command::Postpone { mode, trace, file, o } => commands::postpone(mode, trace.as_deref(), &file, o.as_deref()),
        Command::Translate { mode, pretty, formula_file } => commands::translate(mode, pretty, &formula_file),
        Command::Glivenko { mode, file, o } => commands::glivenko(mode, &file, o.as_deref()),
        Command::Inverse { mode, original, assumptions, file, o } => {
            commands::inverse(mode, &original, &assumptions, &file, o.as_deref())
        }
        Command::Prove { logic, formula_file } => commands::prove(logic, &formula_file),
        Command::Render { format, file } => commands::render_derivation(format, &file),
        Command::Stress { seed, count, profile } => stress::stress(seed, count, &profile),
        Command::Explore { strategy, fuel, seed, generated, profile, file } => match generated {
            Some(n) => stress::explore_generated(strategy, fuel, seed, n, &profile),
            None => commands::explore(strategy, fuel, seed, file.as_deref().expect("required by clap")),
        },
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("natded: {f}");
            ExitCode::from(f.status())
        }
    }
}
