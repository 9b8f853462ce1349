//! Report rendering: human lines, JSON lines, CSV.

use std::io::{self, Write};

use clap::ValueEnum;
use cyclident::{IdentityReport, Status};

use crate::eval::PARAM_NAMES;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Summary {
    pub total: usize,
    pub passed: usize,
    pub failed: usize,
    pub inapplicable: usize,
}

impl Summary {
    pub fn of(reports: &[IdentityReport]) -> Self {
        let mut s = Summary { total: reports.len(), ..Summary::default() };
        for r in reports {
            match r.status {
                Status::Pass => s.passed += 1,
                Status::Fail => s.failed += 1,
                Status::Inapplicable => s.inapplicable += 1,
            }
        }
        s
    }

    pub fn to_json(&self) -> String {
        serde_json::json!({
            "summary": {
                "total": self.total,
                "passed": self.passed,
                "failed": self.failed,
                "inapplicable": self.inapplicable,
            }
        })
        .to_string()
    }

    pub fn to_human(&self) -> String {
        format!(
            "summary: total={} passed={} failed={} inapplicable={}",
            self.total, self.passed, self.failed, self.inapplicable
        )
    }
}

/// Parameter columns: integer parameters in canonical order, then the rest
/// in first-seen order.
pub fn param_columns(reports: &[IdentityReport]) -> Vec<String> {
    let mut cols: Vec<String> = PARAM_NAMES
        .iter()
        .filter(|name| reports.iter().any(|r| r.params.contains_key(**name)))
        .map(|s| s.to_string())
        .collect();
    for r in reports {
        for k in r.params.keys() {
            if !cols.contains(k) {
                cols.push(k.clone());
            }
        }
    }
    cols
}

pub fn write_csv(out: impl Write, reports: &[IdentityReport]) -> io::Result<()> {
    let cols = param_columns(reports);
    let mut w = csv::Writer::from_writer(out);
    let mut header = vec!["identity_id".to_string()];
    header.extend(cols.iter().cloned());
    header.extend(
        ["mode", "expected", "computed_real", "computed_imag", "residual", "status", "micros"].map(String::from),
    );
    w.write_record(&header)?;
    for r in reports {
        let mut row = vec![r.identity.to_string()];
        row.extend(cols.iter().map(|c| r.params.get(c).map(|v| v.to_string()).unwrap_or_default()));
        row.extend([
            r.mode.to_string(),
            r.expected.to_string(),
            r.computed_real.clone(),
            r.computed_imag.clone().unwrap_or_default(),
            r.residual.clone().unwrap_or_default(),
            r.status.to_string(),
            r.micros.to_string(),
        ]);
        w.write_record(&row)?;
    }
    w.flush()
}

/// Writes reports to stdout. The summary, when given, goes to stdout for
/// human and JSON output and to stderr for CSV so the table stays clean.
pub fn emit(format: Format, reports: &[IdentityReport], summary: Option<Summary>) -> io::Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match format {
        Format::Human => {
            for r in reports {
                writeln!(out, "{}", r.to_human())?;
            }
            if let Some(s) = summary {
                writeln!(out, "{}", s.to_human())?;
            }
        }
        Format::Json => {
            for r in reports {
                writeln!(out, "{}", r.to_json())?;
            }
            if let Some(s) = summary {
                writeln!(out, "{}", s.to_json())?;
            }
        }
        Format::Csv => {
            write_csv(&mut out, reports)?;
            if let Some(s) = summary {
                eprintln!("{}", s.to_human());
            }
        }
    }
    out.flush()
}
