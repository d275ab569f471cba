//! Command-line front end for the `lorentz` library: JSON spec files in,
//! human-readable summaries and JSON run reports out.

use std::ffi::OsString;
use std::time::Instant;

use clap::Parser;

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod selftest;
pub mod spec;

use args::{Cli, Command};
pub use error::CliError;
use report::{Findings, RunReport};

fn dispatch(command: &Command) -> Result<(Findings, Option<&args::Output>, Option<&std::path::Path>), CliError> {
    Ok(match command {
        Command::Norm(a) => (commands::norm(a)?, Some(&a.output), None),
        Command::Member(a) => (commands::member(a)?, Some(&a.output), None),
        Command::Seminorm(a) => (commands::seminorm(a)?, Some(&a.target.output), None),
        Command::Decompose(a) => (commands::decomposition(a)?, Some(&a.target.output), None),
        Command::Certify(a) => (commands::certification(a)?, Some(&a.output), None),
        Command::Lambda(a) => (commands::lambda(a)?, Some(&a.output), None),
        Command::Gamma(a) => (commands::gamma(a)?, Some(&a.output), None),
        Command::DiffFamily(a) => (commands::diff_family(a)?, Some(&a.output), None),
        Command::Selftest(a) => (commands::self_test(a), None, a.out.as_deref()),
    })
}

fn write(path: &std::path::Path, text: &str) -> Result<(), CliError> {
    std::fs::write(path, text).map_err(|e| CliError::Io {
        path: path.display().to_string(),
        reason: e.to_string(),
    })
}

/// Runs one invocation; `argv` includes the program name. Returns the exit code:
/// 0 for success, 1 for a negative verdict, 2 for errors and undecided runs.
pub fn run<I, S>(argv: I) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<OsString> + Clone,
{
    let argv: Vec<OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();
    let started = Instant::now();
    let outcome = dispatch(&cli.command).and_then(|(findings, output, selftest_out)| {
        let report = RunReport::assemble(echo, &findings, started.elapsed().as_millis() as u64);
        print!("{}", report.human());
        let out = output.and_then(|o| o.out.as_deref()).or(selftest_out);
        if let Some(path) = out {
            write(path, &report.to_json())?;
        }
        if let (Some(path), Some(spec)) = (output.and_then(|o| o.emit_spec.as_deref()), &findings.spec) {
            write(path, spec)?;
        }
        Ok(findings.outcome.code())
    });
    match outcome {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}
