//! Command-line front end: Hilbert tables, verification suites and exact
//! evaluation.

mod eval;
mod report;
mod suites;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use shufflealg::arith::{int, parse_rational, rat, EvalContext, Rational};
use shufflealg::combinatorics::{hilbert_table, HilbertMode};
use shufflealg::shuffle::Normalization;

use report::{Format, Failure};

/// Largest `--n-max` accepted by enumeration commands.
const ENUMERATION_BOUND: usize = 10;

#[derive(Parser, Debug)]
#[command(name = "shufflealg", version, about = "Exact computations in the two-parameter shuffle algebra")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
struct GlobalArgs {
    /// q1 as a rational (default 2).
    #[arg(long, global = true, value_parser = parse_rat)]
    q1: Option<Rational>,
    /// q2 as a rational (default 3, or 1/4 in torsion mode).
    #[arg(long, global = true, value_parser = parse_rat)]
    q2: Option<Rational>,
    #[arg(long, global = true, value_parser = parse_rat, default_value = "1")]
    lambda: Rational,
    #[arg(long, global = true, value_enum, default_value_t = ModeArg::Generic)]
    mode: ModeArg,
    /// Torsion exponent of q1.
    #[arg(long, global = true, default_value_t = 2)]
    a: u32,
    /// Torsion exponent of q2.
    #[arg(long, global = true, default_value_t = 1)]
    b: u32,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[arg(long, global = true, value_enum, default_value_t = PrefactorArg::Paper)]
    prefactor: PrefactorArg,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum ModeArg {
    Generic,
    Torsion,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum PrefactorArg {
    Paper,
    ShuffleSum,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Dimensions of the graded pieces of the quotient.
    Hilbert {
        #[arg(long, default_value_t = 6)]
        n_max: usize,
    },
    /// Runs a property suite; exits 0 iff every check passes.
    Verify(VerifyArgs),
    /// Evaluates the expression described by a JSON file.
    Eval { file: PathBuf },
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(value_enum)]
    suite: Suite,
    /// Exponent window `-r..=r` for the relations suite.
    #[arg(long, default_value_t = 3)]
    range: i32,
    /// Largest subset size for the zero-locus suite, or largest degree for
    /// the torsion Hilbert comparison.
    #[arg(long)]
    n_max: Option<usize>,
    /// Semilength for the bijection suite.
    #[arg(long, default_value_t = 8)]
    n: usize,
    /// JSON array of `[a, b]` pairs for the multiplicity suite.
    #[arg(long, default_value = "[[0,0],[1,0],[0,1],[1,1]]")]
    subset: String,
    /// Number of random samples (suite-specific default).
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Suite {
    Relations,
    Associativity,
    ZeroLocus,
    Multiplicity,
    Bijection,
    Torsion,
}

fn parse_rat(s: &str) -> Result<Rational, String> {
    parse_rational(s).map_err(|e| e.to_string())
}

impl GlobalArgs {
    fn context(&self) -> EvalContext {
        let q1 = self.q1.clone().unwrap_or_else(|| int(2));
        match self.mode {
            ModeArg::Generic => EvalContext::generic(q1, self.q2.clone().unwrap_or_else(|| int(3)), self.lambda.clone()),
            ModeArg::Torsion => EvalContext::torsion(
                q1,
                self.q2.clone().unwrap_or_else(|| rat(1, 4)),
                self.lambda.clone(),
                self.a,
                self.b,
            ),
        }
    }

    fn normalization(&self) -> Normalization {
        match self.prefactor {
            PrefactorArg::Paper => Normalization::Paper,
            PrefactorArg::ShuffleSum => Normalization::ShuffleSum,
        }
    }

    fn hilbert_mode(&self) -> HilbertMode {
        match self.mode {
            ModeArg::Generic => HilbertMode::Generic,
            ModeArg::Torsion => HilbertMode::Torsion { a: self.a, b: self.b },
        }
    }
}

fn run(cli: Cli) -> Result<String, Failure> {
    let g = &cli.global;
    match cli.command {
        Command::Hilbert { n_max } => {
            if n_max > ENUMERATION_BOUND {
                return Err(Failure::Usage(format!("--n-max must be at most {ENUMERATION_BOUND}")));
            }
            if g.mode == ModeArg::Torsion && g.a + g.b == 0 {
                return Err(Failure::Usage("torsion needs a + b > 0".into()));
            }
            Ok(report::hilbert(&hilbert_table(n_max, g.hilbert_mode()), g.format))
        }
        Command::Verify(args) => {
            let ctx = g.context();
            ctx.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let rep = suites::run(args, &ctx, g.seed, g.normalization())?;
            let text = report::verify(&rep, g.format);
            if rep.passed {
                Ok(text)
            } else {
                Err(Failure::Check(text))
            }
        }
        Command::Eval { file } => {
            let ctx = g.context();
            ctx.validate().map_err(|e| Failure::Usage(e.to_string()))?;
            let source = std::fs::read_to_string(&file)
                .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", file.display())))?;
            let value = eval::run(&source, &ctx, g.normalization())?;
            Ok(report::value(&value, g.format))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(out) => {
            println!("{out}");
            ExitCode::SUCCESS
        }
        Err(Failure::Check(out)) => {
            println!("{out}");
            ExitCode::from(1)
        }
        Err(Failure::Eval(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
