use std::path::PathBuf;
use std::process::ExitCode;

use clap::builder::{PossibleValuesParser, TypedValueParser};
use clap::{ArgGroup, Args, Parser, Subcommand, ValueEnum};
use repcount::groupdiv::PrimeSet;
use repcount::Mode;

mod commands;
mod output;

/// Counting polynomials for commuting matrix tuples over finite fields,
/// with brute-force verification and group divisibility checks.
#[derive(Parser, Debug)]
#[command(name = "repcount", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,

    /// Lift the enumeration and recursion-depth ceilings.
    #[arg(long, global = true)]
    budget_override: bool,

    /// Memo cache file; MONODROMY_CACHE takes precedence.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Table,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print a counting polynomial and its structural checks.
    Poly(PolyArgs),
    /// Compare polynomial values with brute-force counts.
    Verify(VerifyArgs),
    /// Compare factorization-type censuses with their predicted counts.
    Census(CensusArgs),
    /// Run divisibility checks over a group corpus.
    Divisibility(DivisibilityArgs),
}

fn mode_parser() -> impl TypedValueParser<Value = Mode> {
    PossibleValuesParser::new(["ss", "mixed", "conj"]).map(|s| s.parse::<Mode>().unwrap())
}

#[derive(Args, Debug)]
#[command(group(ArgGroup::new("arity").required(true).args(["k", "g"])))]
struct PolyArgs {
    #[arg(long)]
    n: usize,
    /// Tuple length.
    #[arg(long)]
    k: Option<usize>,
    /// Abelian variety dimension; counts tuples of length 2g.
    #[arg(long, conflicts_with = "mode")]
    g: Option<usize>,
    #[arg(long, requires = "g", value_parser = clap::value_parser!(u32).range(0..=1))]
    prank: Option<u32>,
    #[arg(long, value_parser = mode_parser())]
    mode: Option<Mode>,
    /// Field sizes to evaluate at.
    #[arg(long, value_delimiter = ',')]
    q: Vec<u64>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    k: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
    #[arg(long, value_parser = mode_parser(), default_value = "ss")]
    mode: Mode,
}

#[derive(Args, Debug)]
struct CensusArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    q: Vec<u64>,
}

#[derive(Args, Debug)]
struct DivisibilityArgs {
    /// Corpus file; the bundled corpus is used when absent.
    #[arg(long)]
    corpus: Option<PathBuf>,
    /// Only this group from the corpus.
    #[arg(long)]
    group: Option<String>,
    /// Tuple length for the hom-count report (default: 1, 2 and 3).
    #[arg(long)]
    k: Option<usize>,
    /// Comma-separated primes to avoid (default: {}, {2}, {3}, {2,3}).
    #[arg(long = "S", value_parser = clap::value_parser!(PrimeSetArg))]
    s: Option<PrimeSetArg>,
    /// Frobenius count for this n only.
    #[arg(long)]
    n: Option<u64>,
}

#[derive(Clone, Debug)]
struct PrimeSetArg(PrimeSet);

impl std::str::FromStr for PrimeSetArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        s.parse().map(PrimeSetArg).map_err(|e| format!("{e}"))
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let cache = std::env::var_os("MONODROMY_CACHE")
        .filter(|v| !v.is_empty())
        .map(PathBuf::from)
        .or(cli.cache);
    let ctx = commands::Context {
        format: cli.format,
        budget_override: cli.budget_override,
        cache,
        cache_writable: std::cell::Cell::new(true),
    };
    let result = match cli.command {
        Command::Poly(a) => commands::poly(&ctx, a),
        Command::Verify(a) => commands::verify(&ctx, a),
        Command::Census(a) => commands::census(&ctx, a),
        Command::Divisibility(a) => commands::divisibility(&ctx, a),
    };
    match result {
        Ok(commands::Outcome::Success) => ExitCode::SUCCESS,
        Ok(commands::Outcome::Mismatch) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
