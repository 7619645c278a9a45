//! Structured text reports: a versioned header, `key = value` lines, named
//! checks and a final verdict.

use std::fmt::Display;

pub const REPORT_HEADER: &str = "koszul-report v1";

pub struct Report {
    lines: Vec<String>,
    failed: bool,
    raw: Option<String>,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self { lines: vec![REPORT_HEADER.to_string(), format!("command = {command}")], failed: false, raw: None }
    }

    /// Output printed verbatim in place of a report.
    pub fn raw(text: String) -> Self {
        Self { lines: Vec::new(), failed: false, raw: Some(text) }
    }

    pub fn value(&mut self, key: &str, value: impl Display) {
        self.lines.push(format!("{key} = {value}"));
    }

    pub fn check(&mut self, name: &str, ok: bool) {
        self.failed |= !ok;
        self.lines.push(format!("check {name}: {}", if ok { "PASS" } else { "FAIL" }));
    }

    pub fn note(&mut self, text: &str) {
        self.lines.push(format!("note: {text}"));
    }

    /// Appends a multi-line block verbatim.
    pub fn block(&mut self, text: &str) {
        self.lines.extend(text.lines().map(str::to_string));
    }

    pub fn passed(&self) -> bool {
        !self.failed
    }

    pub fn render(&self) -> String {
        if let Some(text) = &self.raw {
            return text.clone();
        }
        let mut out = self.lines.join("\n");
        out.push_str(&format!("\nresult = {}\n", if self.failed { "FAIL" } else { "PASS" }));
        out
    }
}
