use std::process::ExitCode;
use std::time::Instant;

use apolar_core::recon::DEFAULT_HEIGHT_BOUND;
use clap::{Parser, Subcommand, ValueEnum};

mod job;
mod report;
mod selftest;

use job::{Inputs, JobOptions, Kind};
use report::{Body, Failure, Report, Verdict};
use selftest::Level;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

/// Exact reconstruction of forms and curves from their covariants.
#[derive(Debug, Parser)]
#[command(name = "apolar", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Seed for every randomized step; echoed in the output.
    #[arg(long, default_value_t = 0, global = true)]
    seed: u64,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reconstruct a model from one input form or a pair of forms.
    Reconstruct {
        #[arg(value_enum)]
        kind: Kind,
        /// Binary form (x0, x1) or ternary quartic (x0, x1, x2).
        #[arg(long, allow_hyphen_values = true)]
        form: Option<String>,
        /// Binary sextic of a pair.
        #[arg(long, allow_hyphen_values = true)]
        form6: Option<String>,
        /// Binary quartic of a pair.
        #[arg(long, allow_hyphen_values = true)]
        form4: Option<String>,
        /// Quadric in X0..X3.
        #[arg(long, allow_hyphen_values = true)]
        quadric: Option<String>,
        /// Cubic in X0..X3.
        #[arg(long, allow_hyphen_values = true)]
        cubic: Option<String>,
        /// Height bound of the conic point search.
        #[arg(long, default_value_t = DEFAULT_HEIGHT_BOUND)]
        height_bound: u64,
        /// Fingerprint battery; must be the one that applies to the inputs.
        #[arg(long)]
        battery: Option<String>,
        /// Form some output should be a scalar multiple of; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        expect: Vec<String>,
    },
    /// Run the seeded identity suites.
    Selftest {
        #[arg(value_enum, default_value_t = Level::Quick)]
        level: Level,
    },
}

fn emit(report: &Report, format: Format) -> ExitCode {
    match format {
        Format::Text => print!("{}", report.to_text()),
        Format::Json => println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json values serialize")),
    }
    ExitCode::from(report.verdict.code() as u8)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(Verdict::InputError.code() as u8) } else { ExitCode::SUCCESS };
        }
    };
    let start = Instant::now();
    let report = match cli.command {
        Command::Reconstruct { kind, form, form6, form4, quadric, cubic, height_bound, battery, expect } => {
            let inputs = Inputs { form, form6, form4, quadric, cubic };
            let opts = JobOptions { seed: cli.seed, height_bound, battery, expect };
            let (report, pipeline) = job::reconstruct(kind, &inputs, &opts);
            eprintln!("timing pipeline: {:.3} s", pipeline.as_secs_f64());
            report
        }
        Command::Selftest { level } => selftest::run(level, cli.seed),
    };
    eprintln!("timing total: {:.3} s", start.elapsed().as_secs_f64());
    if let Body::Error(Failure { kind, message, .. }) = &report.body {
        eprintln!("error {kind}: {message}");
    }
    emit(&report, cli.format)
}
