use std::io::{self, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use berndt_core::Sign;
use berndt_forge::commands::{self, EvalArgs, Format, SumsArgs};
use berndt_forge::selftest::run_selftest;
use berndt_forge::{CliError, Exit};

#[derive(Parser)]
#[command(name = "berndt-forge", version, about = "Exact closed forms for ∫₀^∞ x^a/(cos x ± cosh x)^m dx")]
struct Cli {
    /// Directory holding sbar.json and s2.json to use instead of the
    /// embedded base-sum fixtures.
    #[arg(long, global = true, value_name = "DIR")]
    fixtures: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Latex,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Closed form of one integral.
    Eval {
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        m: u32,
        #[arg(long, value_enum, default_value = "plain")]
        format: FormatArg,
        /// Compare against adaptive quadrature.
        #[arg(long)]
        verify: bool,
        /// Working precision in decimal digits.
        #[arg(long, env = "BERNDT_FORGE_PREC", default_value_t = 60)]
        prec: u32,
        /// Verification passes when the difference is below 10^-TOL
        /// (default: two thirds of the precision).
        #[arg(long)]
        tol: Option<u32>,
    },
    /// Reproduce the published table of worked examples.
    Table {
        #[arg(long)]
        paper_examples: bool,
        #[arg(long, env = "BERNDT_FORGE_PREC", default_value_t = 60)]
        prec: u32,
    },
    /// Closed form of a hyperbolic sum family.
    Sums {
        /// One of sbar, ctilde, cprime, s2.
        #[arg(long)]
        family: String,
        #[arg(long)]
        p: u32,
        #[arg(long)]
        m: u32,
        /// Also compare with direct summation at this modulus (a rational in (0, 1)).
        #[arg(long)]
        x: Option<String>,
        #[arg(long, env = "BERNDT_FORGE_PREC", default_value_t = 60)]
        prec: u32,
    },
    /// Screen a conjectured closed-form shape.
    Conjecture {
        /// One of plus-x1, plus-x5, x9m6.
        #[arg(long)]
        id: String,
        #[arg(long, default_value_t = 2)]
        n_max: u32,
        #[arg(long, env = "BERNDT_FORGE_PREC", default_value_t = 60)]
        prec: u32,
    },
    /// Run internal consistency checks.
    Selftest {
        /// Certify every fixture at full precision and check more integrals.
        #[arg(long)]
        deep: bool,
    },
    /// Fit the shape-only base sums and write fixture files.
    FitBases {
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = 53)]
        max_index: u32,
    },
}

fn run(cli: Cli, out: &mut dyn Write) -> Result<Exit, CliError> {
    let fixtures = cli.fixtures.as_deref();
    match cli.command {
        Command::Eval { sign, a, m, format, verify, prec, tol } => {
            let args = EvalArgs {
                sign: match sign {
                    SignArg::Plus => Sign::Plus,
                    SignArg::Minus => Sign::Minus,
                },
                a,
                m,
                format: match format {
                    FormatArg::Plain => Format::Plain,
                    FormatArg::Latex => Format::Latex,
                    FormatArg::Json => Format::Json,
                },
                verify,
                prec,
                tol,
            };
            commands::cmd_eval(&args, commands::library(fixtures)?, out)
        }
        Command::Table { paper_examples, prec } => {
            if !paper_examples {
                return Err(CliError::new(Exit::InvalidSpec, "table needs --paper-examples"));
            }
            commands::cmd_table(prec, commands::library(fixtures)?, out)
        }
        Command::Sums { family, p, m, x, prec } => {
            commands::cmd_sums(&SumsArgs { family, p, m, x, prec }, commands::library(fixtures)?, out)
        }
        Command::Conjecture { id, n_max, prec } => commands::cmd_conjecture(&id, n_max, prec, out),
        Command::Selftest { deep } => run_selftest(commands::library(fixtures)?, deep, out),
        Command::FitBases { out: dir, max_index } => commands::cmd_fit_bases(&dir, max_index, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stdout = io::stdout();
    let mut out = stdout.lock();
    let exit = match run(cli, &mut out) {
        Ok(exit) => exit,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit
        }
    };
    out.flush().ok();
    ExitCode::from(exit.code() as u8)
}
