//! diracalg: exact checks and desk-scale classification of Dirac
//! subalgebras of the double of a finite-dimensional Lie algebra.
//!
//! Exit codes: 0 success / all requested verdicts yes; 1 verdict no or
//! validation failure; 2 usage error. With --json exactly one JSON
//! document goes to standard output; diagnostics go to standard error.

use clap::{Parser, Subcommand};

mod commands;
mod problem;
mod render;

use commands::{CheckFlags, ClassifyOpts, CommandOutput};

/// A failed command: message for standard error plus the exit code.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

#[derive(Parser)]
#[command(
    name = "diracalg",
    version,
    about = "Dirac subalgebras of g ⋉ g*: exact validation, curvature criteria and classification"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Validate a problem file: bracket antisymmetry, the Jacobi
    /// identity, the subalgebra p, curvature invariants and any grading.
    Validate {
        /// Problem file (JSON).
        file: String,
    },
    /// Run predicates against the D (or E/eps) block of a problem file.
    Check {
        /// Problem file (JSON).
        file: String,
        /// Dirac subalgebra test (the default when no flag is given).
        #[arg(long)]
        dirac: bool,
        /// Poisson criterion: descent plus D∩g = p.
        #[arg(long)]
        poisson: bool,
        /// Generalized-complex criterion: descent plus D∩D̄ = p
        /// (rational problems are checked over their complexification).
        #[arg(long)]
        gcs: bool,
        /// Cyclic-sum curvature criterion on D.
        #[arg(long)]
        theta: bool,
        /// Emit one JSON document on standard output.
        #[arg(long)]
        json: bool,
    },
    /// Enumerate Dirac subalgebras containing p via the (E, eps)
    /// parametrization.
    Classify {
        /// Problem file (JSON).
        file: String,
        /// Candidate generator: "subsets" or "grid:N".
        #[arg(long, default_value = "subsets")]
        mode: String,
        /// Cap on emitted families.
        #[arg(long, default_value_t = 1000, value_parser = clap::value_parser!(u32).range(1..))]
        max: u32,
        /// Worker threads; the output does not depend on this.
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        jobs: u32,
        /// Keep only members satisfying the full Poisson verdict.
        #[arg(long)]
        poisson: bool,
        /// Keep only members satisfying the full generalized-complex
        /// verdict (rational problems are complexified first).
        #[arg(long)]
        gcs: bool,
        /// Emit one JSON document on standard output.
        #[arg(long)]
        json: bool,
    },
}

fn main() {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => std::process::exit(code),
        Err(failure) => {
            eprintln!("{}", failure.message);
            std::process::exit(failure.code);
        }
    }
}

fn run(cli: Cli) -> Result<i32, Failure> {
    match cli.command {
        Command::Validate { file } => {
            let problem = problem::load(&file)?;
            let output = commands::cmd_validate(&problem);
            println!("{}", output.text);
            Ok(output.exit)
        }
        Command::Check {
            file,
            dirac,
            poisson,
            gcs,
            theta,
            json,
        } => {
            let problem = problem::load(&file)?;
            let output = commands::cmd_check(
                problem,
                CheckFlags {
                    dirac,
                    poisson,
                    gcs,
                    theta,
                },
            )?;
            emit(output, json)
        }
        Command::Classify {
            file,
            mode,
            max,
            jobs,
            poisson,
            gcs,
            json,
        } => {
            let problem = problem::load(&file)?;
            let output = commands::cmd_classify(
                problem,
                ClassifyOpts {
                    mode,
                    max: max as usize,
                    jobs: jobs as usize,
                    require_poisson: poisson,
                    require_gcs: gcs,
                },
            )?;
            emit(output, json)
        }
    }
}

fn emit(output: CommandOutput, json: bool) -> Result<i32, Failure> {
    if json {
        let doc = output.json.expect("check and classify always build JSON");
        println!(
            "{}",
            serde_json::to_string_pretty(&doc).expect("serializable document")
        );
    } else {
        println!("{}", output.text);
    }
    Ok(output.exit)
}
