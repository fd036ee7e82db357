use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::builder::PossibleValuesParser;
use clap::{Args, Parser, Subcommand};
use riesz_lab_cli::demo::{demo, DemoOptions, Topic};
use riesz_lab_cli::probe::probe;
use riesz_lab_cli::spec::{self, Instance, MAX_OMEGA};
use riesz_lab_cli::suite::{run_suite, Suite};

const USAGE: u8 = 2;
const CHECK_FAILED: u8 = 1;

#[derive(Parser)]
#[command(name = "riesz-lab", version, about = "Exact finite-model checks for conditional expectation duality")]
struct Cli {
    #[command(flatten)]
    common: Common,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Common {
    /// Space specification; defaults to the built-in reference instance.
    #[arg(long, global = true)]
    spec: Option<PathBuf>,
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Random instances per suite, in addition to the spec instance.
    #[arg(long, global = true, default_value_t = 100)]
    cases: usize,
    /// Random instances have between 2 and this many points.
    #[arg(long, global = true, default_value_t = 5)]
    max_omega: usize,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    report: Option<PathBuf>,
    /// Relative tolerance of the conjecture probe.
    #[arg(long, global = true, default_value_t = 1e-9)]
    tol: f64,
}

#[derive(Subcommand)]
enum Command {
    /// Run invariant suites.
    Check {
        #[arg(long, default_value = "all",
              value_parser = PossibleValuesParser::new(["lattice", "charges", "integration", "duality", "all"]))]
        suite: String,
    },
    /// Print a walkthrough with exact values.
    Demo {
        #[arg(value_parser = PossibleValuesParser::new(["dual1", "dual2", "dualinf", "lebesgue", "sombrero", "conjecture"]))]
        topic: String,
        #[arg(long, default_value_t = 3.0)]
        p: f64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
    /// Numerical evidence for the dual of L^p when 1 < p < ∞.
    ProbeConjecture {
        #[arg(long, default_value_t = 3.0)]
        p: f64,
        #[arg(long, default_value_t = 64)]
        restarts: usize,
    },
}

fn load(common: &Common) -> Result<Instance, String> {
    let parsed = match &common.spec {
        Some(path) => spec::parse_spec(path),
        None => Ok(spec::reference()),
    };
    parsed.and_then(|s| s.instance()).map_err(|e| e.to_string())
}

fn emit(common: &Common, text: &str) -> Result<(), String> {
    print!("{text}");
    if let Some(path) = &common.report {
        std::fs::write(path, text).map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    let common = &cli.common;
    let usage = |m: String| (USAGE, m);
    if common.max_omega < 2 || common.max_omega > MAX_OMEGA {
        return Err(usage(format!("--max-omega must be between 2 and {MAX_OMEGA}")));
    }
    if common.tol.is_nan() || common.tol <= 0.0 {
        return Err(usage("--tol must be positive".into()));
    }
    let inst = load(common).map_err(usage)?;
    let start = Instant::now();
    let code = match &cli.command {
        Command::Check { suite } => {
            let suite = Suite::parse(suite).expect("restricted by clap");
            // Panics inside checks are caught and reported as failures.
            std::panic::set_hook(Box::new(|_| {}));
            let report = run_suite(&inst, suite, common.seed, common.cases, common.max_omega);
            emit(common, &report.render()).map_err(usage)?;
            if report.unexpected_failures() == 0 {
                0
            } else {
                CHECK_FAILED
            }
        }
        Command::Demo { topic, p, restarts } => {
            let topic = Topic::parse(topic).expect("restricted by clap");
            let opts = DemoOptions {
                seed: common.seed,
                p: *p,
                restarts: *restarts,
            };
            let text = demo(&inst, topic, &opts).map_err(usage)?;
            emit(common, &text).map_err(usage)?;
            if text.contains("FAILS") {
                CHECK_FAILED
            } else {
                0
            }
        }
        Command::ProbeConjecture { p, restarts } => {
            let run = probe(&inst, *p, *restarts, common.cases, common.tol, common.seed).map_err(usage)?;
            emit(common, &run.text).map_err(usage)?;
            if run.failed {
                CHECK_FAILED
            } else {
                0
            }
        }
    };
    eprintln!("elapsed {:.2}s", start.elapsed().as_secs_f64());
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
