use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use l2hodge::harness::commands::{self, Options};

#[derive(Parser)]
#[command(name = "l2hodge", version, about = "Weight and Hodge spectral sequences of divisor complements, exactly")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Last spectral sequence page to compute.
    #[arg(long, global = true)]
    pages: Option<usize>,
    /// Barycentric subdivisions used by the simplicial oracle.
    #[arg(long, global = true, default_value_t = 1)]
    subdivide: usize,
    /// Seed for randomized self-tests.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Tsv)]
    format: Format,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Tsv,
    Structured,
}

#[derive(Subcommand)]
enum Command {
    /// Weight E1, Gr^W of the complement cohomology and the degeneration page.
    Weights { file: PathBuf },
    /// Mixed Hodge numbers.
    Hodge { file: PathBuf },
    /// Euler characteristic, with the l2 value of a cover.
    Euler { file: PathBuf },
    /// Dual graph homology and the intersection form.
    Graph { file: PathBuf },
    /// Spectral sequence of a filtered complex.
    Ss { file: PathBuf },
    /// Frölicher degeneration of a double complex.
    Froelicher { file: PathBuf },
    /// Brute-force simplicial oracle.
    Oracle { file: PathBuf },
    /// All cross-validations for a file, or a seeded self-test without one.
    Check { file: Option<PathBuf> },
}

fn run(cli: &Cli) -> anyhow::Result<ExitCode> {
    let opts = Options {
        pages: cli.pages,
        subdivide: cli.subdivide,
        seed: cli.seed,
    };
    let (name, file) = match &cli.command {
        Command::Weights { file } => ("weights", Some(file)),
        Command::Hodge { file } => ("hodge", Some(file)),
        Command::Euler { file } => ("euler", Some(file)),
        Command::Graph { file } => ("graph", Some(file)),
        Command::Ss { file } => ("ss", Some(file)),
        Command::Froelicher { file } => ("froelicher", Some(file)),
        Command::Oracle { file } => ("oracle", Some(file)),
        Command::Check { file } => ("check", file.as_ref()),
    };
    if name == "check" {
        eprintln!("seed {}", cli.seed);
    }
    match commands::run(name, file.map(PathBuf::as_path), &opts) {
        Ok(report) => {
            match cli.format {
                Format::Tsv => print!("{}", report.to_tsv()),
                Format::Structured => println!("{}", report.to_structured()),
            }
            Ok(if report.passed() { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Err(e) if e.is_input_error() => {
            let what = file.map_or_else(|| "self-test".to_string(), |f| f.display().to_string());
            Err(anyhow::Error::new(e)).with_context(|| format!("cannot process {what}"))
        }
        Err(e) => {
            eprintln!("mismatch: {e}");
            Ok(ExitCode::from(1))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
