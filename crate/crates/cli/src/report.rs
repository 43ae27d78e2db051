//! Machine- and human-readable command reports.
//!
//! Reports are deterministic for identical inputs: items are emitted in a
//! fixed order, value maps are sorted, and nothing time- or thread-dependent
//! appears in them (timing goes to stderr).

use serde::Serialize;
use std::collections::BTreeMap;
use weakwreath::report::CheckReport;

#[derive(Clone, Debug, Serialize)]
pub struct CheckLine {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub command: String,
    pub field: String,
    pub checks: Vec<CheckLine>,
    pub values: BTreeMap<String, String>,
    pub pass: bool,
}

impl Report {
    pub fn new(command: impl Into<String>, field: impl Into<String>) -> Report {
        Report {
            command: command.into(),
            field: field.into(),
            checks: Vec::new(),
            values: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn push_check(&mut self, name: impl Into<String>, pass: bool, detail: Option<String>) {
        if !pass {
            self.pass = false;
        }
        self.checks.push(CheckLine {
            name: name.into(),
            pass,
            detail,
        });
    }

    /// Absorbs a core check report, prefixing item names.
    pub fn absorb(&mut self, prefix: &str, report: &CheckReport) {
        for item in report.items() {
            let detail = item
                .witness
                .as_ref()
                .map(|w| w.to_string())
                .or_else(|| item.note.clone());
            let name = if prefix.is_empty() {
                item.name.clone()
            } else {
                format!("{prefix}.{}", item.name)
            };
            self.push_check(name, item.pass, detail);
        }
    }

    /// Absorbs only a summary line: "passed/total" plus the first failure.
    pub fn absorb_summary(&mut self, name: &str, report: &CheckReport) {
        let total = report.items().len();
        let passed = report.items().iter().filter(|i| i.pass).count();
        let detail = if passed == total {
            Some(format!("{passed}/{total} checks"))
        } else {
            let first = report.failures().next().expect("failure exists");
            Some(format!(
                "{passed}/{total} checks; first failure: {}{}",
                first.name,
                first
                    .witness
                    .as_ref()
                    .map(|w| format!(" [{w}]"))
                    .unwrap_or_default()
            ))
        };
        self.push_check(name, passed == total, detail);
    }

    pub fn set_value(&mut self, key: impl Into<String>, value: impl Into<String>) {
        self.values.insert(key.into(), value.into());
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("field: {}\n", self.field));
        for check in &self.checks {
            let status = if check.pass { "ok" } else { "FAIL" };
            out.push_str(&format!("{status:4} {}", check.name));
            if let Some(d) = &check.detail {
                out.push_str(&format!(" ({d})"));
            }
            out.push('\n');
        }
        for (k, v) in &self.values {
            out.push_str(&format!("{k} = {v}\n"));
        }
        out.push_str(&format!(
            "result: {}\n",
            if self.pass { "pass" } else { "FAIL" }
        ));
        out
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}
