//! Machine-readable check reports.

use serde::{Deserialize, Serialize};

/// One named check and its outcome.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Check {
    pub name: String,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

impl Check {
    pub fn pass(name: impl Into<String>) -> Self {
        Check { name: name.into(), pass: true, witness: None }
    }

    pub fn fail(name: impl Into<String>, witness: impl Into<String>) -> Self {
        Check { name: name.into(), pass: false, witness: Some(witness.into()) }
    }

    pub fn from_result(name: impl Into<String>, r: Result<(), String>) -> Self {
        match r {
            Ok(()) => Check::pass(name),
            Err(w) => Check::fail(name, w),
        }
    }
}

/// A batch of checks on one instance.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub instance: String,
    pub seed: u64,
    pub retries: u32,
    pub checks: Vec<Check>,
    /// Set when the checks test conjectural statements rather than theorems.
    pub conjectural: bool,
}

impl Report {
    pub fn new(instance: impl Into<String>, seed: u64, retries: u32) -> Self {
        Report { instance: instance.into(), seed, retries, checks: Vec::new(), conjectural: false }
    }

    pub fn push(&mut self, c: Check) {
        self.checks.push(c);
    }

    pub fn extend(&mut self, cs: impl IntoIterator<Item = Check>) {
        self.checks.extend(cs);
    }

    pub fn all_pass(&self) -> bool {
        self.checks.iter().all(|c| c.pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.pass)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn witness_is_omitted_when_absent() {
        let mut r = Report::new("n=1 d=[2]", 7, 0);
        r.push(Check::pass("a"));
        r.push(Check::fail("b", "x1"));
        let s = serde_json::to_string(&r).unwrap();
        assert_eq!(
            s,
            r#"{"instance":"n=1 d=[2]","seed":7,"retries":0,"checks":[{"name":"a","pass":true},{"name":"b","pass":false,"witness":"x1"}],"conjectural":false}"#
        );
        assert!(!r.all_pass());
        assert_eq!(r.failures().count(), 1);
    }
}
