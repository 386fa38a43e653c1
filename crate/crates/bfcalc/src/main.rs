use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use bfcalc::plot::{load_report, table_csv};
use bfcalc::spec::Config;
use bfcalc::suites::run_suite;
use bfcalc::AppError;

#[derive(Parser)]
#[command(name = "bfcalc", version, about = "Bernstein-function check suites")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run one named suite and write a JSON report
    Run {
        /// suite id, e.g. scalar-inequalities
        #[arg(long)]
        suite: String,
        /// seed for the random draws
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// optional JSON configuration document
        #[arg(long)]
        config: Option<PathBuf>,
        /// output report path
        #[arg(long)]
        out: PathBuf,
        /// widen every tolerance by this factor
        #[arg(long = "tol-scale", default_value_t = 1.0)]
        tol_scale: f64,
    },
    /// Extract a CSV table from a report
    Plot {
        /// report produced by `run`
        #[arg(long)]
        report: PathBuf,
        /// table kind, e.g. margin-vs-|z|
        #[arg(long)]
        kind: String,
        /// output CSV path
        #[arg(long)]
        out: PathBuf,
    },
}

fn run(cli: Cli) -> Result<bool, AppError> {
    match cli.cmd {
        Cmd::Run {
            suite,
            seed,
            config,
            out,
            tol_scale,
        } => {
            let cfg = match config {
                Some(p) => Config::from_path(&p)?,
                None => Config::default(),
            };
            let rep = run_suite(&suite, seed, tol_scale, &cfg)?;
            std::fs::write(&out, rep.to_json())?;
            for c in &rep.checks {
                println!(
                    "{} {:<28} samples={:<6} worst_margin={:+.3e}",
                    if c.pass { "PASS" } else { "FAIL" },
                    c.id,
                    c.samples,
                    c.worst_margin
                );
            }
            println!(
                "{}: {} checks, {} pass, {} fail",
                suite, rep.summary.pass_count + rep.summary.fail_count,
                rep.summary.pass_count, rep.summary.fail_count
            );
            Ok(rep.all_pass())
        }
        Cmd::Plot { report, kind, out } => {
            let rep = load_report(&report)?;
            let csv = table_csv(&rep, &kind)?;
            std::fs::write(&out, csv)?;
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
