//! Newline-delimited JSON batch mode.

use std::fs;
use std::path::Path;

use rayon::prelude::*;
use serde_json::Value;

use crate::query::{run_query, CliError, Query, EXIT_USAGE};
use crate::report::ErrorReport;

/// One output line per non-blank input line, in input order.
#[derive(Clone, Debug, PartialEq)]
pub struct BatchOutput {
    pub lines: Vec<Value>,
    /// 0 when every line produced a verdict, else the largest error code.
    pub exit_code: u8,
}

fn run_line(text: &str, default_cap: usize) -> Result<Value, CliError> {
    let q: Query = serde_json::from_str(text)
        .map_err(|e| CliError { code: EXIT_USAGE, kind: "parse_error", message: format!("invalid query: {e}") })?;
    let report = run_query(&q, default_cap)?;
    Ok(serde_json::to_value(report).expect("reports serialize"))
}

/// Runs every query in `text`. Line numbers in error objects are 1-based
/// and count blank lines.
pub fn run_batch_str(text: &str, default_cap: usize) -> BatchOutput {
    let jobs: Vec<(usize, &str)> =
        text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()).map(|(i, l)| (i + 1, l)).collect();
    let results: Vec<(usize, Result<Value, CliError>)> =
        jobs.par_iter().map(|&(n, l)| (n, run_line(l, default_cap))).collect();
    let mut exit_code = 0;
    let lines = results
        .into_iter()
        .map(|(n, r)| match r {
            Ok(v) => v,
            Err(e) => {
                exit_code = exit_code.max(e.code);
                let rep = ErrorReport { line: Some(n), error: e.body() };
                serde_json::to_value(rep).expect("errors serialize")
            }
        })
        .collect();
    BatchOutput { lines, exit_code }
}

pub fn run_batch(path: &Path, default_cap: usize) -> Result<BatchOutput, CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError { code: EXIT_USAGE, kind: "io_error", message: format!("{}: {e}", path.display()) })?;
    Ok(run_batch_str(&text, default_cap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_input_gives_no_output() {
        let out = run_batch_str("", 200);
        assert!(out.lines.is_empty());
        assert_eq!(out.exit_code, 0);
        assert!(run_batch_str("\n  \n", 200).lines.is_empty());
    }

    #[test]
    fn malformed_line_is_isolated() {
        let text = "{\"subcommand\":\"da-hypergeom\",\"b\":\"x\"}\nnot json\n{\"subcommand\":\"disp\",\"f\":\"1/x\"}\n";
        let out = run_batch_str(text, 200);
        assert_eq!(out.lines.len(), 3);
        assert_eq!(out.lines[0]["verdict"], "DIFFERENTIALLY_TRANSCENDENTAL");
        assert_eq!(out.lines[1]["line"], 2);
        assert_eq!(out.lines[1]["error"]["code"], 1);
        assert_eq!(out.lines[2]["verdict"], "DISPERSION");
        assert_eq!(out.exit_code, 1);
    }
}
