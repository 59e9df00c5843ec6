//! `youngwall`: generate, verify and export Young wall crystal graphs.
//!
//! Artifacts go to standard output (or `--out`); diagnostics go to standard
//! error.  Exit status is 0 on success, 1 when a check fails or the
//! dimension cap refuses a weight, and 2 on usage errors.

use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use youngwall::classical::LambdaContext;
use youngwall::graphgen::fixtures::{check_set, oracle_contexts, wall_sets};
use youngwall::graphgen::{
    export_dot, export_json, generate_with, import_json, threads_from_env, verify, CrystalGraph,
    GenerateOptions, GraphError, DEFAULT_CAP,
};
use youngwall::liealg::{DominantWeight, Family};

#[derive(Debug, Parser)]
#[command(name = "youngwall", version, about = "Young wall crystal graphs for classical Lie algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Generate the crystal graph of a weight.
    Gen {
        #[command(flatten)]
        weight: WeightArgs,
        #[command(flatten)]
        run: RunArgs,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Generate (or read) a crystal graph and check it against the oracles.
    Verify {
        #[command(flatten)]
        weight: OptionalWeightArgs,
        /// Check a graph JSON file instead of generating one.
        #[arg(long, conflicts_with_all = ["family", "rank", "lambda"])]
        input: Option<PathBuf>,
        #[command(flatten)]
        run: RunArgs,
    },
    /// Print the highest and lowest weight walls.
    Hl {
        #[command(flatten)]
        weight: WeightArgs,
    },
    /// Check the built-in walls and the oracle contexts.
    Fixtures {
        #[command(flatten)]
        run: RunArgs,
    },
    /// Convert a graph JSON file to another format.
    Export {
        /// Graph JSON file, as written by `gen`.
        input: PathBuf,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Debug, Args)]
struct WeightArgs {
    /// Classical family: A, B, C or D.
    family: Family,
    /// Rank n.
    rank: usize,
    /// Coefficients on the fundamental weights, comma separated.
    #[arg(long, value_delimiter = ',', required = true)]
    lambda: Vec<u32>,
}

#[derive(Debug, Args)]
struct OptionalWeightArgs {
    /// Classical family: A, B, C or D.
    #[arg(required_unless_present = "input")]
    family: Option<Family>,
    /// Rank n.
    #[arg(required_unless_present = "input")]
    rank: Option<usize>,
    /// Coefficients on the fundamental weights, comma separated.
    #[arg(long, value_delimiter = ',', required_unless_present = "input")]
    lambda: Option<Vec<u32>>,
}

#[derive(Debug, Args)]
struct RunArgs {
    /// Refuse weights whose dimension exceeds this.
    #[arg(long, default_value_t = DEFAULT_CAP)]
    cap: u64,
    /// Worker threads (the YW_THREADS environment variable takes precedence).
    #[arg(long)]
    threads: Option<usize>,
}

impl RunArgs {
    fn options(&self) -> GenerateOptions {
        GenerateOptions {
            cap: self.cap,
            threads: threads_from_env().or(self.threads),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Dot,
}

#[derive(Debug, Args)]
struct OutputArgs {
    /// Write here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

/// Why a command stopped.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Check(e.to_string())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Check(e.to_string())
    }
}

fn context(family: Family, rank: usize, lambda: &[u32]) -> Result<LambdaContext, Failure> {
    if lambda.len() != rank {
        return Err(Failure::Usage(format!(
            "--lambda has {} coefficients but the rank is {rank}",
            lambda.len()
        )));
    }
    LambdaContext::new(family, rank, DominantWeight::from_unsigned(lambda.to_vec()))
        .map_err(|e| Failure::Usage(e.to_string()))
}

fn render(g: &CrystalGraph, format: Format) -> String {
    match format {
        Format::Json => export_json(g) + "\n",
        Format::Dot => export_dot(g),
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)?,
        None => io::stdout().lock().write_all(text.as_bytes())?,
    }
    Ok(())
}

fn read_graph(path: &Path) -> Result<CrystalGraph, Failure> {
    let text = fs::read_to_string(path)?;
    Ok(import_json(&text)?)
}

fn run(command: Command) -> Result<(), Failure> {
    match command {
        Command::Gen {
            weight,
            run,
            output,
        } => {
            let ctx = context(weight.family, weight.rank, &weight.lambda)?;
            eprintln!("{ctx}, lambda = {}", ctx.decomposition);
            let g = generate_with(&ctx, run.options())?;
            emit(&render(&g, output.format), output.out.as_deref())
        }
        Command::Verify { weight, input, run } => {
            let g = match input {
                Some(path) => read_graph(&path)?,
                None => {
                    let (Some(family), Some(rank), Some(lambda)) =
                        (weight.family, weight.rank, weight.lambda)
                    else {
                        return Err(Failure::Usage("a weight or --input is required".into()));
                    };
                    generate_with(&context(family, rank, &lambda)?, run.options())?
                }
            };
            let report = verify(&g)?;
            println!("{}\n{report}", g.context);
            if report.passed {
                Ok(())
            } else {
                Err(Failure::Check("verification failed".into()))
            }
        }
        Command::Hl { weight } => {
            let ctx = context(weight.family, weight.rank, &weight.lambda)?;
            println!("{ctx}");
            println!("lambda = {}", ctx.decomposition);
            for (name, wall) in [("H", ctx.highest()), ("L", ctx.lowest())] {
                println!("{name} {}", wall.to_json());
                println!("{}", wall.sketch());
            }
            Ok(())
        }
        Command::Fixtures { run } => {
            let mut failures = 0;
            for set in wall_sets() {
                for outcome in check_set(&set)? {
                    let mark = if outcome.passed() { "ok" } else { "FAIL" };
                    failures += usize::from(!outcome.passed());
                    let tag = |t: Option<_>| t.map_or("-".to_string(), |c: youngwall::classical::Condition| c.to_string());
                    println!(
                        "{mark} {} {:?}: expected {}, got {}",
                        set.name,
                        outcome.case.wall.fills,
                        tag(outcome.case.failed),
                        tag(outcome.verdict.failed)
                    );
                }
            }
            for ctx in oracle_contexts()? {
                let report = verify(&generate_with(&ctx, run.options())?)?;
                let mark = if report.passed { "ok" } else { "FAIL" };
                failures += usize::from(!report.passed);
                println!(
                    "{mark} {ctx}: {} nodes, dimension {}",
                    report.node_count, report.expected_dimension
                );
            }
            if failures == 0 {
                Ok(())
            } else {
                Err(Failure::Check(format!("{failures} fixtures failed")))
            }
        }
        Command::Export { input, output } => {
            let g = read_graph(&input)?;
            emit(&render(&g, output.format), output.out.as_deref())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::FAILURE
        }
    }
}
