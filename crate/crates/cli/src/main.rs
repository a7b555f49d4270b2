use std::path::PathBuf;
use std::process::ExitCode;

use algcoef::{check_tolerance, outcome_exit_code, run_file, text, CliError, Overrides, Report};
use algcoef_core::pipeline::Stage;
use clap::{Parser, ValueEnum};

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Json,
    Text,
}

/// Coefficient asymptotics of algebraic generating functions.
#[derive(Parser)]
#[command(name = "algcoef", version)]
struct Args {
    /// Last stage to run: embed, certify, critical, asympt, verify or all.
    #[arg(value_parser = parse_stage)]
    stage: Stage,
    /// Problem file (JSON).
    #[arg(long, short)]
    input: PathBuf,
    /// Direction override, e.g. "2/5,3/5".
    #[arg(long)]
    direction: Option<String>,
    /// Order of the exact embedding-identity check.
    #[arg(long)]
    order: Option<u32>,
    /// Number of correction terms (0 or 1).
    #[arg(long = "kmax")]
    k_max: Option<u32>,
    /// Maximum relative error accepted at the last validation point.
    #[arg(long)]
    tolerance: Option<f64>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
}

fn parse_stage(s: &str) -> Result<Stage, String> {
    Stage::parse(s).ok_or_else(|| format!("unknown stage `{s}`"))
}

fn precision_from_env() -> Result<Option<usize>, CliError> {
    match std::env::var("ALGCOEF_PRECISION_BITS") {
        Ok(v) => v
            .trim()
            .parse()
            .map(Some)
            .map_err(|_| CliError::Usage(format!("ALGCOEF_PRECISION_BITS: `{v}` is not an integer"))),
        Err(_) => Ok(None),
    }
}

fn main_inner(args: Args) -> Result<i32, CliError> {
    let overrides = Overrides {
        direction: args.direction.as_deref().map(algcoef::spec::parse_direction_flag),
        order: args.order,
        k_max: args.k_max,
        precision: precision_from_env()?,
    };
    let outcome = run_file(&args.input, args.stage, &overrides)?;
    let report = Report::from_outcome(&outcome);
    let body = match args.format {
        Format::Json => report.to_json(),
        Format::Text => text::render(&report),
    };
    match &args.out {
        Some(p) => std::fs::write(p, &body).map_err(|source| CliError::Io {
            path: p.clone(),
            source,
        })?,
        None => print!("{body}"),
    }
    if let Some(tol) = args.tolerance {
        check_tolerance(&outcome, tol)?;
    }
    Ok(outcome_exit_code(&outcome))
}

fn main() -> ExitCode {
    let args = Args::parse();
    match main_inner(args) {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("algcoef: error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
