//! Command-line front end: single-point evaluations, sweeps, figure tables,
//! the pressure crossover and a self-test, emitted as CSV or JSON.

pub mod commands;
pub mod config;
pub mod output;
pub mod selftest;

use std::ffi::OsString;
use std::fmt::Display;

use clap::Parser;
use thiserror::Error;

use coaxial_casimir::CasimirError;

use crate::commands::Report;
use crate::config::{Cli, Format, RunConfig};
use crate::output::{render_csv, render_json};

pub const EXIT_OK: i32 = 0;
pub const EXIT_CONFIG: i32 = 2;
pub const EXIT_CONVERGENCE: i32 = 3;
pub const EXIT_SELFTEST: i32 = 4;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Compute(#[from] CasimirError),
    #[error("output error: {0}")]
    Output(String),
}

impl CliError {
    pub(crate) fn output<E: Display>(e: E) -> Self {
        CliError::Output(e.to_string())
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Compute(e) if e.is_convergence_failure() => "convergence",
            CliError::Compute(_) => "input",
            CliError::Output(_) => "output",
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Compute(e) if e.is_convergence_failure() => EXIT_CONVERGENCE,
            _ => EXIT_CONFIG,
        }
    }

    /// One-line JSON error record.
    pub fn record(&self) -> String {
        error_record(self.kind(), self.exit_code(), &self.to_string())
    }
}

fn error_record(kind: &str, code: i32, message: &str) -> String {
    serde_json::json!({ "error": { "kind": kind, "exit_code": code, "message": message } }).to_string()
}

/// What a run printed and how it ended.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Parses `args` (including the program name), runs the command and writes
/// the table to `--out` if given. Nothing is printed; see [`Outcome`].
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                Outcome {
                    code: EXIT_CONFIG,
                    stdout: String::new(),
                    stderr: format!("{text}{}\n", error_record("config", EXIT_CONFIG, text.trim())),
                }
            } else {
                Outcome {
                    code: EXIT_OK,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    match RunConfig::resolve(cli) {
        Ok(cfg) => run_config(&cfg),
        Err(e) => Outcome {
            code: e.exit_code(),
            stdout: String::new(),
            stderr: format!("{}\n", e.record()),
        },
    }
}

/// Runs a resolved configuration, on a dedicated pool when `jobs` is set.
pub fn run_config(cfg: &RunConfig) -> Outcome {
    let report = match cfg.jobs {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::execute(cfg)),
            Err(e) => {
                let e = CliError::Config(format!("jobs: cannot start {n} threads: {e}"));
                return Outcome {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr: format!("{}\n", e.record()),
                };
            }
        },
        None => commands::execute(cfg),
    };
    finish(cfg, report)
}

fn finish(cfg: &RunConfig, report: Report) -> Outcome {
    let mut stderr = String::new();
    let rendered = match cfg.format {
        Format::Csv => {
            for e in &report.diagnostics.errors {
                if let Ok(line) = serde_json::to_string(e) {
                    stderr.push_str(&line);
                    stderr.push('\n');
                }
            }
            render_csv(&report.table)
        }
        Format::Json => render_json(&report.table, &cfg.echo(), &report.diagnostics),
    };
    let mut code = if report.breach { EXIT_SELFTEST } else { EXIT_OK };
    if let Some(e) = &report.failure {
        stderr.push_str(&e.record());
        stderr.push('\n');
        if !report.breach {
            code = e.exit_code();
        }
    }
    let text = match rendered {
        Ok(t) => t,
        Err(e) => {
            stderr.push_str(&e.record());
            stderr.push('\n');
            return Outcome {
                code: e.exit_code(),
                stdout: String::new(),
                stderr,
            };
        }
    };
    match &cfg.out {
        Some(path) => match std::fs::write(path, &text) {
            Ok(()) => Outcome {
                code,
                stdout: String::new(),
                stderr,
            },
            Err(e) => {
                let e = CliError::Output(format!("cannot write {}: {e}", path.display()));
                stderr.push_str(&e.record());
                stderr.push('\n');
                Outcome {
                    code: e.exit_code(),
                    stdout: String::new(),
                    stderr,
                }
            }
        },
        None => Outcome {
            code,
            stdout: text,
            stderr,
        },
    }
}
