//! Command-line front end for `gdual`.

mod commands;
pub mod report;

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use thiserror::Error;

pub use report::{Format, Report, RunConfig};

#[derive(Debug, Parser)]
#[command(name = "gdual", version, about = "Positive definite functions and duality for finite groups")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a builtin group as a .gtab file
    Gen(CommonArgs),
    /// Structural summary of a group
    Info(CommonArgs),
    /// Candidate products of every pair compared with {ab, ba}
    VerifyProducts(CommonArgs),
    /// Exact character decision for an abelian group
    VerifyAbelian(CommonArgs),
    /// Decide universal positivity for one triple
    Certify(CommonArgs),
    /// Re-validate a certificate file
    Recheck(CommonArgs),
    /// Sample the eigenstate inequality families
    Inequalities(CommonArgs),
    /// Assemble the dual group and the blurred product table
    Dual(CommonArgs),
    /// Recover an abelian table from an opaque character oracle
    Reconstruct(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    /// Input file (.gtab, or a certificate for `recheck`)
    pub input: Option<PathBuf>,
    /// Group source: a .gtab path or `builtin:<name>`
    #[arg(long)]
    pub group: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub x: Option<String>,
    #[arg(long, default_value_t = 1e-9)]
    pub tol: f64,
    #[arg(long, default_value_t = 1e-6)]
    pub eps: f64,
    #[arg(long, default_value_t = 32)]
    pub restarts: usize,
    #[arg(long, default_value_t = 500)]
    pub max_iters: usize,
    #[arg(long, default_value_t = 1000)]
    pub samples: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    #[arg(short = 'o', long = "output")]
    pub output: Option<PathBuf>,
    /// Include wall-clock timings (makes output nondeterministic)
    #[arg(long)]
    pub timings: bool,
}

impl CommonArgs {
    pub fn config(&self) -> RunConfig {
        RunConfig {
            tol: self.tol,
            certificate_eps: self.eps,
            restarts: self.restarts,
            max_iters: self.max_iters,
            samples: self.samples,
            seed: self.seed,
            output_format: self.format,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let positive = [("tol", self.tol), ("eps", self.eps)];
        for (name, v) in positive {
            if !(v.is_finite() && v > 0.0) {
                return Err(CliError::Usage(format!("--{name} must be positive, got {v}")));
            }
        }
        if self.max_iters == 0 || self.samples == 0 {
            return Err(CliError::Usage("--max-iters and --samples must be positive".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("usage: {0}")]
    Usage(String),
    #[error("parse error in {source_name}: {message}")]
    Parse { source_name: String, message: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Failure(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Failure(_) => 1,
            _ => 2,
        }
    }
}

/// Text for stdout and stderr plus an exit code.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub code: i32,
}

/// Parses arguments (including the program name) and runs the command.
pub fn run_from<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run(cli),
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            if code == 0 {
                Outcome { stdout: text, stderr: String::new(), code }
            } else {
                Outcome { stdout: String::new(), stderr: text, code }
            }
        }
    }
}

pub fn run(cli: Cli) -> Outcome {
    let (name, args) = match &cli.command {
        Command::Gen(a) => ("gen", a),
        Command::Info(a) => ("info", a),
        Command::VerifyProducts(a) => ("verify-products", a),
        Command::VerifyAbelian(a) => ("verify-abelian", a),
        Command::Certify(a) => ("certify", a),
        Command::Recheck(a) => ("recheck", a),
        Command::Inequalities(a) => ("inequalities", a),
        Command::Dual(a) => ("dual", a),
        Command::Reconstruct(a) => ("reconstruct", a),
    };
    let start = std::time::Instant::now();
    let result = args.validate().and_then(|_| commands::dispatch(name, args));
    match result {
        Ok(commands::Produced { mut report, artifact }) => {
            if args.timings {
                report.timings = Some(report::Timings { total_ms: start.elapsed().as_secs_f64() * 1e3 });
            }
            let rendered = report.render(args.format);
            let code = if report.ok() { 0 } else { 1 };
            let write = |path: &PathBuf, text: &str| {
                std::fs::write(path, text).map_err(|e| format!("cannot write {}: {e}", path.display()))
            };
            let stdout = match (&args.output, artifact) {
                (Some(path), Some(text)) => match write(path, &text) {
                    Ok(()) => rendered,
                    Err(e) => return Outcome { stdout: String::new(), stderr: e, code: 2 },
                },
                (None, Some(text)) if name == "gen" => text,
                (None, Some(_)) => rendered,
                (Some(path), None) => match write(path, &rendered) {
                    Ok(()) => String::new(),
                    Err(e) => return Outcome { stdout: String::new(), stderr: e, code: 2 },
                },
                (None, None) => rendered,
            };
            Outcome { stdout, stderr: String::new(), code }
        }
        Err(e) => Outcome { stdout: String::new(), stderr: format!("error: {e}\n"), code: e.exit_code() },
    }
}
