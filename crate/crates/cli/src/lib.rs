//! `regress`: CSV in, JSON results and TSV plot data out.
//!
//! Exit codes: 0 success, 1 usage, 2 data, 3 numerical failure.

pub mod dataset;
pub mod error;
pub mod format;
pub mod request;
pub mod run;
pub mod schema;

use std::ffi::OsString;

use clap::error::ErrorKind;
use clap::Parser;

pub use dataset::{parse_csv, CsvError, Dataset, SyntaxReason};
pub use error::CliError;
pub use format::{emit_plot_data, fmt_f64, render_plot_data};
pub use request::{Cli, CliRequest};
pub use run::run;
pub use schema::{FitDocument, ModelKind, SmoothDocument};

/// Parses `args` (program name first), runs, and returns the exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
        }
    };
    match CliRequest::try_from(cli.command).and_then(|r| run(&r)) {
        Ok(()) => 0,
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_code()
        }
    }
}
