use std::process::ExitCode;

use clap::{Parser, Subcommand};
use descent_cli::verify::{self, Options, Suite};
use descent_cli::{expr, table, Cache, Format, Loader};
use descent_core::Basis;

#[derive(Parser)]
#[command(name = "descent", version, about = "Solomon descent algebras of finite Coxeter groups")]
struct Cli {
    /// Ignore and do not write the structure-constant cache.
    #[arg(long, global = true)]
    no_cache: bool,
    /// Seed for randomized suites.
    #[arg(long, global = true, default_value_t = verify::DEFAULT_SEED)]
    seed: u64,
    /// Permit rank-7 groups (E7, A7, ...), which need several hundred MiB.
    #[arg(long, global = true)]
    allow_rank7: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print rows `o(σ) | |Λ/σ| | LL | d_0, d_1, ...` for a type.
    Table {
        #[arg(long = "type")]
        ty: String,
        /// Order of the diagram automorphism; every available order when omitted.
        #[arg(long)]
        sigma: Option<usize>,
        #[arg(long, default_value = "text")]
        format: String,
    },
    /// Run an invariant suite and print a JSON report.
    Verify {
        #[arg(long)]
        suite: String,
        #[arg(long = "type")]
        ty: String,
        /// Random elements drawn by the positivity suite.
        #[arg(long, default_value_t = verify::DEFAULT_SAMPLES)]
        samples: usize,
    },
    /// Multiply two expressions such as `x[1] + 2*y[]`.
    Mult {
        #[arg(long = "type")]
        ty: String,
        #[arg(long, allow_hyphen_values = true)]
        left: String,
        #[arg(long, allow_hyphen_values = true)]
        right: String,
        #[arg(long, default_value = "x")]
        basis: String,
    },
}

fn run(cli: Cli) -> anyhow::Result<bool> {
    let cache = if cli.no_cache { Cache::disabled() } else { Cache::from_env() };
    let loader = Loader::new(cache, cli.allow_rank7);
    match cli.command {
        Command::Table { ty, sigma, format } => {
            let format: Format = format.parse()?;
            let rows = table::rows(&loader.algebra(&ty)?, sigma)?;
            print!("{}", table::render(&rows, format)?);
            Ok(true)
        }
        Command::Verify { suite, ty, samples } => {
            let suite: Suite = suite.parse()?;
            let report = verify::run(suite, &loader.algebra(&ty)?, Options { seed: cli.seed, samples })?;
            println!("{}", serde_json::to_string_pretty(&report)?);
            Ok(report.passed)
        }
        Command::Mult { ty, left, right, basis } => {
            let basis: Basis = basis.parse()?;
            let product = expr::multiply(&loader.algebra(&ty)?, &left, &right, basis)?;
            println!("{product}");
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
