//! Structured run reports: the JSON form and the human rendering carry the
//! same data; only the timing field is nondeterministic.

use serde::Serialize;

use qlie::bialg::ValidationReport;

#[derive(Debug, Clone, Serialize)]
pub struct CheckEntry {
    pub name: String,
    pub status: String,
    pub residuals: Vec<String>,
}

impl CheckEntry {
    pub fn from_report(name: &str, rep: &ValidationReport) -> Self {
        CheckEntry {
            name: name.to_string(),
            status: if rep.passed() { "pass" } else { "fail" }.to_string(),
            residuals: rep
                .violations
                .iter()
                .map(|v| format!("{} at {}: {}", v.axiom, v.location, v.residual))
                .collect(),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Report {
    pub command: String,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hcap: Option<usize>,
    pub checks: Vec<CheckEntry>,
    pub output: Vec<String>,
    pub timing_ms: u128,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Report {
            command: command.to_string(),
            status: "pass".to_string(),
            order: None,
            hcap: None,
            checks: Vec::new(),
            output: Vec::new(),
            timing_ms: 0,
        }
    }

    pub fn push_check(&mut self, name: &str, rep: &ValidationReport) {
        let entry = CheckEntry::from_report(name, rep);
        if !entry.passed() {
            self.status = "fail".to_string();
        }
        self.checks.push(entry);
    }

    pub fn push_output(&mut self, line: impl Into<String>) {
        self.output.push(line.into());
    }

    pub fn failed(&self) -> bool {
        self.status != "pass"
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn render_human(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        if let Some(order) = self.order {
            out.push_str(&format!("order: {order}\n"));
        }
        if let Some(hcap) = self.hcap {
            out.push_str(&format!("hcap: {hcap}\n"));
        }
        for c in &self.checks {
            out.push_str(&format!("{} {}\n", c.status.to_uppercase(), c.name));
            for r in &c.residuals {
                out.push_str(&format!("  {r}\n"));
            }
        }
        for line in &self.output {
            out.push_str(line);
            out.push('\n');
        }
        out.push_str(&format!("status: {}\n", self.status));
        out.push_str(&format!("timing_ms: {}\n", self.timing_ms));
        out
    }
}
