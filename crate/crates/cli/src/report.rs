use std::fmt::Write;

use catcoh::homalg::{graded_csv, graded_table, page_csv, page_table, SpectralPage};
use serde::{Deserialize, Serialize};
use serde_json::Value;

use crate::args::Format;

pub const SCHEMA: &str = "catcoh/v1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

impl Check {
    pub fn new(name: impl Into<String>, pass: bool) -> Self {
        Check { name: name.into(), pass, detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GradedBlock {
    pub label: String,
    pub dims: Vec<usize>,
}

/// Everything a command produces; rendered per `--format`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub command: String,
    pub result: Value,
    #[serde(default)]
    pub graded: Vec<GradedBlock>,
    #[serde(default)]
    pub pages: Vec<SpectralPage>,
    #[serde(default)]
    pub checks: Vec<Check>,
    /// Free text for the table format.
    #[serde(default)]
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &str, result: Value) -> Self {
        Report { command: command.into(), result, graded: Vec::new(), pages: Vec::new(), checks: Vec::new(), notes: Vec::new() }
    }

    pub fn graded(mut self, label: &str, dims: &[usize]) -> Self {
        self.graded.push(GradedBlock { label: label.into(), dims: dims.to_vec() });
        self
    }

    pub fn check(mut self, c: Check) -> Self {
        self.checks.push(c);
        self
    }

    pub fn ok(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }
}

/// Run parameters echoed into structured output.
pub struct Echo<'a> {
    pub field: &'a str,
    pub n_max: usize,
    pub r_max: usize,
}

pub fn render(report: &Report, format: Format, echo: &Echo<'_>) -> String {
    match format {
        Format::Structured => {
            let doc = serde_json::json!({
                "schema": SCHEMA,
                "command": report.command,
                "field": echo.field,
                "n_max": echo.n_max,
                "r_max": echo.r_max,
                "result": report.result,
                "graded": report.graded,
                "pages": report.pages,
                "checks": report.checks,
                "ok": report.ok(),
            });
            let mut s = serde_json::to_string_pretty(&doc).expect("reports serialize");
            s.push('\n');
            s
        }
        Format::Csv => {
            let mut blocks: Vec<String> = report.pages.iter().map(page_csv).collect();
            blocks.extend(report.graded.iter().map(|g| graded_csv(&g.dims)));
            if blocks.is_empty() {
                blocks.push(json_text(&report.result));
            }
            blocks.join("\n")
        }
        Format::Table => {
            let mut out = String::new();
            for n in &report.notes {
                let _ = writeln!(out, "{n}");
            }
            for g in &report.graded {
                out.push_str(&graded_table(&g.label, &g.dims));
            }
            for p in &report.pages {
                out.push_str(&page_table(p));
            }
            if report.graded.is_empty() && report.pages.is_empty() && report.notes.is_empty() {
                out.push_str(&json_text(&report.result));
            }
            for c in &report.checks {
                let verdict = if c.pass { "pass" } else { "FAIL" };
                match &c.detail {
                    Some(d) => {
                        let _ = writeln!(out, "check {}: {verdict} ({d})", c.name);
                    }
                    None => {
                        let _ = writeln!(out, "check {}: {verdict}", c.name);
                    }
                }
            }
            out
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}
