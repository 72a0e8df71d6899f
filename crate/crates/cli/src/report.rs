//! Run reports: per-check verdicts plus numeric tables, serializable as JSON
//! or CSV. Wall time is measured but excluded from the payload so identical
//! configurations serialize identically.

use std::time::Duration;

use serde::Serialize;

use crate::config::SuiteConfig;

/// A numeric table attached to a check (plot data).
#[derive(Debug, Clone, Serialize)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push_row(&mut self, cells: Vec<String>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }
}

/// Verdict of one named check.
#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub summary: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
}

impl CheckResult {
    pub fn pass(name: &str, summary: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: true,
            summary: summary.into(),
            table: None,
        }
    }

    pub fn fail(name: &str, summary: impl Into<String>) -> CheckResult {
        CheckResult {
            name: name.to_string(),
            passed: false,
            summary: summary.into(),
            table: None,
        }
    }

    pub fn with_table(mut self, table: Table) -> CheckResult {
        self.table = Some(table);
        self
    }
}

/// A full suite run.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub suite: String,
    pub config: SuiteConfig,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    #[serde(skip)]
    pub wall_time: Duration,
}

impl RunReport {
    pub fn new(config: &SuiteConfig, checks: Vec<CheckResult>, wall_time: Duration) -> RunReport {
        let passed = checks.iter().all(|c| c.passed);
        RunReport {
            suite: config.suite.to_string(),
            config: config.clone(),
            checks,
            passed,
            wall_time,
        }
    }

    pub fn first_failure(&self) -> Option<&CheckResult> {
        self.checks.iter().find(|c| !c.passed)
    }

    /// The canonical payload: pretty JSON, stable for fixed config and seed.
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    /// CSV payload: a verdict block with a header row, then one block per
    /// table, separated by blank lines.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("check,passed,summary\n");
        for c in &self.checks {
            out.push_str(&format!(
                "{},{},{}\n",
                c.name,
                c.passed,
                csv_quote(&c.summary)
            ));
        }
        for c in &self.checks {
            if let Some(table) = &c.table {
                out.push('\n');
                out.push_str("check,");
                out.push_str(&table.columns.join(","));
                out.push('\n');
                for row in &table.rows {
                    out.push_str(&c.name);
                    for cell in row {
                        out.push(',');
                        out.push_str(&csv_quote(cell));
                    }
                    out.push('\n');
                }
            }
        }
        out
    }
}

fn csv_quote(cell: &str) -> String {
    if cell.contains(',') || cell.contains('"') || cell.contains('\n') {
        format!("\"{}\"", cell.replace('"', "\"\""))
    } else {
        cell.to_string()
    }
}
