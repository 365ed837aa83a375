//! Directory harness: run both paths over every pair file and compare.

use std::fs;
use std::path::{Path, PathBuf};

use crate::error::CliError;
use crate::pairspec::SubspacePairSpec;
use crate::report::run_report;

#[derive(Clone, Debug)]
pub struct CheckRow {
    pub file: String,
    pub n: usize,
    pub r: usize,
    pub agreement: f64,
}

#[derive(Clone, Debug)]
pub struct CheckSummary {
    pub rows: Vec<CheckRow>,
    pub max_deviation: f64,
    pub tol: f64,
}

impl CheckSummary {
    pub fn all_within_tol(&self) -> bool {
        self.max_deviation <= self.tol
    }
}

/// Run the Clifford and matrix paths on every `*.json` file in the
/// directory, ordered by file name. Any unreadable or invalid file
/// fails the whole run with that file named.
pub fn run_check(dir: &Path, tol: f64) -> Result<CheckSummary, CliError> {
    let entries = fs::read_dir(dir)
        .map_err(|e| CliError::Parse(format!("cannot read directory {}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok())
        .map(|e| e.path())
        .filter(|p| p.extension().is_some_and(|x| x == "json"))
        .collect();
    files.sort();
    if files.is_empty() {
        return Err(CliError::Parse(format!(
            "no inputs: {} holds no .json pair files",
            dir.display()
        )));
    }

    let mut rows = Vec::with_capacity(files.len());
    for path in &files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_else(|| path.display().to_string());
        let text = fs::read_to_string(path)
            .map_err(|e| CliError::Parse(format!("{name}: {e}")))?;
        let spec = SubspacePairSpec::parse(&text).map_err(|e| e.with_context(&name))?;
        let doc = run_report(&spec, Some(&name), true).map_err(|e| e.with_context(&name))?;
        rows.push(CheckRow {
            file: name,
            n: spec.n,
            r: spec.r(),
            agreement: doc.agreement.expect("oracle path ran"),
        });
    }
    let max_deviation = rows.iter().map(|r| r.agreement).fold(0.0, f64::max);
    Ok(CheckSummary {
        rows,
        max_deviation,
        tol,
    })
}

pub fn render_summary(summary: &CheckSummary) -> String {
    use std::fmt::Write;
    let mut out = String::new();
    let _ = writeln!(out, "{:<28} {:>3} {:>3}  {:>12}  status", "file", "n", "r", "max |delta|");
    for row in &summary.rows {
        let status = if row.agreement <= summary.tol {
            "ok"
        } else {
            "EXCEEDED"
        };
        let _ = writeln!(
            out,
            "{:<28} {:>3} {:>3}  {:>12.3e}  {status}",
            row.file, row.n, row.r, row.agreement
        );
    }
    let verdict = if summary.all_within_tol() {
        "ok"
    } else {
        "EXCEEDED"
    };
    let _ = writeln!(
        out,
        "{} pairs, aggregate max |delta| = {:.3e} (tol {:.1e}: {verdict})",
        summary.rows.len(),
        summary.max_deviation,
        summary.tol
    );
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generate::{generate_pairs, GenerateParams};

    #[test]
    fn check_runs_over_generated_directory() {
        let dir = tempfile::tempdir().unwrap();
        let params = GenerateParams {
            n: 4,
            r: 2,
            count: 3,
            seed: 5,
            planted: None,
        };
        for (i, spec) in generate_pairs(&params).unwrap().iter().enumerate() {
            fs::write(dir.path().join(format!("pair_{i:04}.json")), spec.render()).unwrap();
        }
        let summary = run_check(dir.path(), 1e-7).unwrap();
        assert_eq!(summary.rows.len(), 3);
        assert!(summary.all_within_tol(), "max {}", summary.max_deviation);
        let text = render_summary(&summary);
        assert!(text.contains("pair_0000.json"));
        assert!(text.contains("aggregate"));
    }

    #[test]
    fn empty_directory_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        let err = run_check(dir.path(), 1e-7).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("no inputs"));
    }

    #[test]
    fn corrupted_file_is_named() {
        let dir = tempfile::tempdir().unwrap();
        fs::write(dir.path().join("bad.json"), "{ not json").unwrap();
        let err = run_check(dir.path(), 1e-7).unwrap_err();
        assert_eq!(err.exit_code(), 2);
        assert!(err.to_string().contains("bad.json"));
    }
}
