use std::fmt::Write;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Pass,
    Fail,
    /// Passed, but some class-quantified step relied on a truncation bound.
    BoundedPass,
}

impl Verdict {
    pub fn new(ok: bool, exact: bool) -> Self {
        match (ok, exact) {
            (false, _) => Verdict::Fail,
            (true, true) => Verdict::Pass,
            (true, false) => Verdict::BoundedPass,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::BoundedPass => "bounded-pass",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckResult {
    pub check: String,
    pub verdict: Verdict,
    /// One-line human summary.
    pub summary: String,
    /// Enumeration bound the verdict depends on, if any.
    pub bound: Option<usize>,
    pub witnesses: Vec<Value>,
    pub details: Value,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub duration_ms: Option<u64>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Summary {
    pub checks: usize,
    pub pass: usize,
    pub bounded_pass: usize,
    pub fail: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub scenario: String,
    pub results: Vec<CheckResult>,
    pub summary: Summary,
}

impl Report {
    pub fn new(scenario: impl Into<String>, results: Vec<CheckResult>) -> Self {
        let mut summary = Summary { checks: results.len(), ..Summary::default() };
        for r in &results {
            match r.verdict {
                Verdict::Pass => summary.pass += 1,
                Verdict::BoundedPass => summary.bounded_pass += 1,
                Verdict::Fail => summary.fail += 1,
            }
        }
        Report { scenario: scenario.into(), results, summary }
    }

    pub fn passed(&self) -> bool {
        self.summary.fail == 0
    }

    pub fn exit_code(&self) -> u8 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    /// Pretty JSON with sorted keys and a trailing newline.
    pub fn to_json(&self) -> String {
        let value = serde_json::to_value(self).expect("reports serialize");
        let mut out = serde_json::to_string_pretty(&value).expect("reports serialize");
        out.push('\n');
        out
    }

    pub fn from_json(text: &str) -> serde_json::Result<Self> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        writeln!(out, "scenario {}", self.scenario).unwrap();
        for (i, r) in self.results.iter().enumerate() {
            writeln!(out, "[{}] {}: {} - {}", i + 1, r.check, r.verdict.name(), r.summary).unwrap();
            if let Some(b) = r.bound {
                writeln!(out, "    bound: {b}").unwrap();
            }
            if r.check == "thm41" {
                thm41_table(&mut out, &r.details);
            }
            for w in &r.witnesses {
                writeln!(out, "    witness: {w}").unwrap();
            }
            if let Some(ms) = r.duration_ms {
                writeln!(out, "    duration: {ms} ms").unwrap();
            }
        }
        let s = &self.summary;
        writeln!(
            out,
            "summary: {} checks, {} pass, {} bounded-pass, {} fail",
            s.checks, s.pass, s.bounded_pass, s.fail
        )
        .unwrap();
        out
    }
}

fn thm41_table(out: &mut String, details: &Value) {
    let flag = |v: &Value| if v.as_bool() == Some(true) { "T" } else { "F" };
    let Some(rows) = details["rows"].as_array() else {
        return;
    };
    let width = rows.iter().filter_map(|r| r["space"].as_str()).map(str::len).max().unwrap_or(5).max(5);
    writeln!(out, "    {:width$}  P a b", "space").unwrap();
    for r in rows {
        writeln!(
            out,
            "    {:width$}  {} {} {}",
            r["space"].as_str().unwrap_or("?"),
            flag(&r["alpha_mono"]),
            flag(&r["diagonal_regular"]),
            flag(&r["in_s_hull"])
        )
        .unwrap();
    }
    writeln!(
        out,
        "    P={} a={} b={} c={}",
        flag(&details["precondition"]),
        flag(&details["diagonals_regular"]),
        flag(&details["b_in_s_hull"]),
        flag(&details["same_closure"]["same"])
    )
    .unwrap();
}
