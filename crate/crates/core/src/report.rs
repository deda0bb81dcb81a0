//! Deterministic command reports, rendered as text or JSON.

use std::fmt::Write as _;
use std::io::IsTerminal;

use serde::Serialize;
use sha2::{Digest, Sha256};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    Pass,
    Fail,
    Info,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Finding {
    pub check: String,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub value: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct InputDigest {
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<InputDigest>,
    pub findings: Vec<Finding>,
    pub exit_code: i32,
}

pub fn digest(bytes: &[u8]) -> String {
    format!("{:x}", Sha256::digest(bytes))
}

impl Report {
    pub fn new(command: impl Into<String>) -> Self {
        Report {
            command: command.into(),
            inputs: Vec::new(),
            findings: Vec::new(),
            exit_code: 0,
        }
    }

    pub fn input(&mut self, path: &str, bytes: &[u8]) {
        self.inputs.push(InputDigest {
            path: path.to_string(),
            sha256: digest(bytes),
        });
    }

    fn push(&mut self, check: &str, verdict: Verdict, value: Option<String>, witness: Option<String>) {
        if verdict == Verdict::Fail {
            self.exit_code = self.exit_code.max(1);
        }
        self.findings.push(Finding {
            check: check.to_string(),
            verdict,
            value,
            witness,
        });
    }

    pub fn pass(&mut self, check: &str) {
        self.push(check, Verdict::Pass, None, None);
    }

    pub fn pass_with(&mut self, check: &str, value: impl Into<String>) {
        self.push(check, Verdict::Pass, Some(value.into()), None);
    }

    pub fn fail(&mut self, check: &str, witness: impl Into<String>) {
        self.push(check, Verdict::Fail, None, Some(witness.into()));
    }

    pub fn info(&mut self, check: &str, value: impl Into<String>) {
        self.push(check, Verdict::Info, Some(value.into()), None);
    }

    /// Records a pass or a failure with the given witness.
    pub fn check(&mut self, check: &str, ok: bool, witness: impl FnOnce() -> String) {
        if ok {
            self.pass(check);
        } else {
            self.fail(check, witness());
        }
    }

    /// Malformed input: exit code 2 with the diagnostic as witness.
    pub fn malformed(&mut self, witness: impl Into<String>) {
        self.findings.push(Finding {
            check: "input".into(),
            verdict: Verdict::Fail,
            value: None,
            witness: Some(witness.into()),
        });
        self.exit_code = 2;
    }

    pub fn passed(&self) -> bool {
        self.exit_code == 0
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("reports serialize");
        s.push('\n');
        s
    }

    pub fn to_text(&self, color: bool) -> String {
        let paint = |code: &str, s: &str| {
            if color {
                format!("\x1b[{code}m{s}\x1b[0m")
            } else {
                s.to_string()
            }
        };
        let mut out = String::new();
        let _ = writeln!(out, "ybw {}", self.command);
        for i in &self.inputs {
            let _ = writeln!(out, "  input {} sha256:{}", i.path, &i.sha256[..16]);
        }
        for f in &self.findings {
            let tag = match f.verdict {
                Verdict::Pass => paint("32", "PASS"),
                Verdict::Fail => paint("31", "FAIL"),
                Verdict::Info => paint("36", "INFO"),
            };
            let _ = write!(out, "  [{tag}] {}", f.check);
            if let Some(v) = &f.value {
                let _ = write!(out, ": {v}");
            }
            if let Some(w) = &f.witness {
                let _ = write!(out, " (witness: {w})");
            }
            out.push('\n');
        }
        let _ = writeln!(out, "exit {}", self.exit_code);
        out
    }
}

/// ANSI colour on a terminal unless `YBW_COLOR=0`.
pub fn use_color() -> bool {
    std::env::var("YBW_COLOR").map_or(true, |v| v != "0") && std::io::stdout().is_terminal()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_and_rendering() {
        let mut r = Report::new("demo");
        r.input("a.json", b"{}");
        r.pass("one");
        r.info("value", "1/2");
        assert!(r.passed());
        r.fail("two", "column 3");
        assert_eq!(r.exit_code, 1);
        let text = r.to_text(false);
        assert!(text.contains("[FAIL] two (witness: column 3)"));
        assert!(text.contains("[INFO] value: 1/2"));
        r.malformed("bad");
        assert_eq!(r.exit_code, 2);
        let json: serde_json::Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["findings"][0]["verdict"], "pass");
        assert_eq!(json["inputs"][0]["sha256"], digest(b"{}"));
    }
}
