//! Pass/fail reporting shared by the CLI and the verification suites.
//!
//! JSON output contains no timing so repeated runs are byte-identical;
//! the text renderer appends wall time for interactive use.

use serde::Serialize;

#[derive(Serialize, Clone, Copy, PartialEq, Eq, Debug)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Serialize, Clone, Debug)]
pub struct Verdict {
    pub name: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass(name: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn pass_with(name: impl Into<String>, witness: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            status: Status::Pass,
            witness: Some(witness.into()),
        }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn skipped(name: impl Into<String>, witness: impl Into<String>) -> Verdict {
        Verdict {
            name: name.into(),
            status: Status::Skipped,
            witness: Some(witness.into()),
        }
    }

    /// Pass when `ok`, otherwise fail with the witness.
    pub fn check(name: impl Into<String>, ok: bool, witness: impl Into<String>) -> Verdict {
        if ok {
            Verdict::pass(name)
        } else {
            Verdict::fail(name, witness)
        }
    }
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: String,
    pub budget: usize,
    pub checks: Vec<Verdict>,
    #[serde(skip)]
    pub wall_ms: u128,
}

impl Report {
    pub fn new(command: impl Into<String>, budget: usize) -> Report {
        Report {
            command: command.into(),
            budget,
            checks: Vec::new(),
            wall_ms: 0,
        }
    }

    pub fn passed(&self) -> bool {
        self.checks.iter().all(|v| v.status != Status::Fail)
    }

    pub fn render_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render_text(&self) -> String {
        let mut out = String::new();
        out.push_str(&format!("command: {}\n", self.command));
        out.push_str(&format!("budget: {}\n", self.budget));
        for v in &self.checks {
            let mark = match v.status {
                Status::Pass => "pass",
                Status::Fail => "FAIL",
                Status::Skipped => "skip",
            };
            match &v.witness {
                Some(w) => out.push_str(&format!("  [{mark}] {} ({w})\n", v.name)),
                None => out.push_str(&format!("  [{mark}] {}\n", v.name)),
            }
        }
        let overall = if self.passed() { "pass" } else { "FAIL" };
        out.push_str(&format!(
            "result: {overall} ({} checks, {} ms)\n",
            self.checks.len(),
            self.wall_ms
        ));
        out
    }
}
