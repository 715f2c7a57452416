//! Command-line front end: scene files in, reports out.
//!
//! Exit codes follow the report's decision: 0 holds, 1 fails, 2 input
//! error, 3 inconclusive at the order used.

pub mod args;
pub mod commands;
pub mod error;
pub mod report;
pub mod scene;
pub mod selftest;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use args::{Cli, Command, GlobalOpts};
pub use error::CliError;
pub use report::{Report, Verdict};

/// The report for parsed arguments.
pub fn evaluate(cli: &Cli) -> Report {
    match (&cli.command, &cli.global.all) {
        (None, Some(dir)) => commands::execute_all(dir, &cli.global),
        (Some(cmd), None) => commands::execute(cmd, &cli.global),
        (Some(cmd), Some(_)) => {
            let mut r = Report::new(cmd.echo(), Verdict::InputError);
            r.error = Some("--all evaluates each scene with its own command; drop the subcommand".into());
            r
        }
        (None, None) => {
            let mut r = Report::new("logfol", Verdict::InputError);
            r.error = Some("no subcommand given (see --help)".into());
            r
        }
    }
}

/// Parse `argv`, evaluate, print the report and return the exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => Verdict::InputError.exit_code(),
            };
            let _ = e.print();
            return code;
        }
    };
    let mut report = evaluate(&cli);
    if let Some(path) = &cli.global.json {
        if let Err(e) = std::fs::write(path, report.to_json()) {
            report.decision = Verdict::InputError;
            report.error = Some(format!("cannot write {}: {e}", path.display()));
        }
    }
    print!("{}", report.human());
    report.exit_code()
}
