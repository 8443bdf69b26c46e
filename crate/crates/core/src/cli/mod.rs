//! Command-line front end.
//!
//! Exit codes: 0 when a verdict or report was produced, 1 when a
//! `replicate` comparison is out of tolerance, 2 on invalid input and 3 on a
//! numerical failure. Errors are printed to stderr as one JSON line.

mod args;
mod config;
mod replicate;
mod report;
mod tests_cmd;

use std::ffi::OsString;

use clap::Parser;

pub use args::{Cli, Command};
pub use config::SimulationConfig;
pub use replicate::{
    example1, example2, example3, figures, or_consistency, or_pair, tables, Item, ReplicationReport,
    EXAMPLE2_GROUP_SIZES, OR_STUDIES,
};

use crate::error::Error;

/// Parse `argv` and run the command, returning the process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            if code == 0 {
                let _ = e.print();
            } else {
                print_error("usage", &e.to_string().lines().next().unwrap_or("").replace("error: ", ""));
            }
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            print_error(e.kind(), &e.to_string());
            exit_code(&e)
        }
    }
}

fn dispatch(cli: Cli) -> crate::Result<i32> {
    match cli.command {
        Command::TestProp(a) => tests_cmd::test_prop(a),
        Command::TestTwoProp(a) => tests_cmd::test_two_prop(a),
        Command::TestMean(a) => tests_cmd::test_mean(a),
        Command::TestMeanDiff(a) => tests_cmd::test_mean_diff(a),
        Command::TestRatio(a) => tests_cmd::test_ratio(a),
        Command::TestSummaryRatio(a) => tests_cmd::test_summary_ratio(a),
        Command::SimulateOc(a) => config::simulate_oc(a),
        Command::SimulateBias(a) => config::simulate_bias(a),
        Command::Replicate(a) => replicate::replicate(a),
    }
}

/// 3 for numerical failures, 2 for everything the caller can fix.
pub fn exit_code(e: &Error) -> i32 {
    if e.is_numerical() {
        3
    } else {
        2
    }
}

fn print_error(kind: &str, message: &str) {
    let line = serde_json::json!({ "error": kind, "message": message });
    eprintln!("{line}");
}
