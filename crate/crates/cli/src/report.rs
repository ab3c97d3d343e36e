//! The command report: checks, data and exactness disclosures.

use fieldalg::sfc::verdict_of;
use fieldalg::{AxiomRanges, CheckReport, Verdict};
use serde::{Deserialize, Serialize};

use crate::build::Recipe;

pub const REPORT_SCHEMA: &str = "fieldalg-report/1";

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub schema: String,
    pub engine: String,
    pub command: Vec<String>,
    /// What the checks ran on, so a witness can be replayed from the report alone.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub input: Option<Recipe>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub ranges: Option<AxiomRanges>,
    pub verdict: Verdict,
    pub checks: Vec<CheckReport>,
    #[serde(skip_serializing_if = "serde_json::Value::is_null", default)]
    pub data: serde_json::Value,
    #[serde(skip_serializing_if = "Vec::is_empty", default)]
    pub disclosures: Vec<String>,
    /// Only with --timing, since it breaks byte-identical reports.
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub wall_clock_ms: Option<u64>,
}

impl Report {
    pub fn new(command: Vec<String>) -> Report {
        Report {
            schema: REPORT_SCHEMA.into(),
            engine: env!("CARGO_PKG_VERSION").into(),
            command,
            input: None,
            ranges: None,
            verdict: Verdict::Pass,
            checks: Vec::new(),
            data: serde_json::Value::Null,
            disclosures: Vec::new(),
            wall_clock_ms: None,
        }
    }

    pub fn push(&mut self, r: CheckReport) {
        self.checks.push(r);
    }

    pub fn extend(&mut self, rs: impl IntoIterator<Item = CheckReport>) {
        self.checks.extend(rs);
    }

    /// Sets the overall verdict from the checks and lists what was not certified.
    pub fn finish(&mut self) {
        self.verdict = self.verdict.and(verdict_of(&self.checks));
        let uncertified: u64 = self.checks.iter().map(|c| c.swept.uncertified).sum();
        if uncertified > 0 {
            self.disclosures.push(format!(
                "{uncertified} instances touched values outside the truncation and were not counted as passes"
            ));
        }
        let mut windows: Vec<&str> = self.checks.iter().map(|c| c.window.as_str()).collect();
        windows.sort();
        windows.dedup();
        for w in windows {
            self.disclosures.push(format!("truncation window: {w}"));
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self.verdict {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Inconclusive => 2,
        }
    }

    pub fn json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize") + "\n"
    }

    pub fn text(&self) -> String {
        let mut s = format!("fieldalg {}: {}\nverdict: {:?}\n", self.engine, self.command.join(" "), self.verdict);
        for c in &self.checks {
            s.push_str(&c.text());
            s.push('\n');
        }
        if !self.data.is_null() {
            s.push_str(&format!("data: {}\n", serde_json::to_string_pretty(&self.data).expect("data serializes")));
        }
        for d in &self.disclosures {
            s.push_str(&format!("disclosure: {d}\n"));
        }
        if let Some(ms) = self.wall_clock_ms {
            s.push_str(&format!("wall clock: {ms} ms\n"));
        }
        s
    }
}
