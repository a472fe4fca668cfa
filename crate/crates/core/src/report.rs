//! Structured pass/fail records produced by the verifiers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// Evidence for a failed check: where it failed and what did not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub lagrangian_rref: Vec<Vec<u32>>,
    pub difference_poly: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub theorem_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub status: Status,
    pub checks_run: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Witness>,
    /// Wall time; only filled in when the caller asks for timing, so that
    /// reports stay reproducible by default.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
    /// Facts recorded along the way, such as which sign variant held.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub notes: Vec<String>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// One-line human summary.
    pub fn summary(&self) -> String {
        let params = self.parameters.iter().map(|(k, v)| format!("{k}={v}")).collect::<Vec<_>>().join(" ");
        let status = match self.status {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
        };
        format!("{status} {} [{params}] checks={}", self.theorem_id, self.checks_run)
    }
}

/// Accumulates checks; the first failure becomes the witness.
#[derive(Debug)]
pub struct ReportBuilder {
    theorem_id: String,
    parameters: BTreeMap<String, Value>,
    checks_run: u64,
    witness: Option<Witness>,
    notes: Vec<String>,
}

impl ReportBuilder {
    pub fn new(theorem_id: impl Into<String>) -> Self {
        Self {
            theorem_id: theorem_id.into(),
            parameters: BTreeMap::new(),
            checks_run: 0,
            witness: None,
            notes: Vec::new(),
        }
    }

    pub fn param(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.parameters.insert(key.to_string(), value.into());
        self
    }

    pub fn set_param(&mut self, key: &str, value: impl Into<Value>) {
        self.parameters.insert(key.to_string(), value.into());
    }

    pub fn note(&mut self, note: impl Into<String>) {
        self.notes.push(note.into());
    }

    /// Records one check. `witness` is only evaluated on the first failure.
    pub fn check(&mut self, ok: bool, witness: impl FnOnce() -> Witness) -> bool {
        self.checks_run += 1;
        if !ok && self.witness.is_none() {
            self.witness = Some(witness());
        }
        ok
    }

    /// Records `n` checks that all passed.
    pub fn passed(&mut self, n: u64) {
        self.checks_run += n;
    }

    pub fn failed(&self) -> bool {
        self.witness.is_some()
    }

    pub fn finish(self) -> VerificationReport {
        let status = if self.witness.is_none() && self.checks_run > 0 { Status::Pass } else { Status::Fail };
        let witness = match (status, self.witness) {
            (Status::Fail, None) => Some(Witness {
                lagrangian_rref: Vec::new(),
                difference_poly: String::new(),
                detail: Some("no checks were run".into()),
            }),
            (_, w) => w,
        };
        VerificationReport {
            theorem_id: self.theorem_id,
            parameters: self.parameters,
            status,
            checks_run: self.checks_run,
            witness,
            elapsed_ms: None,
            notes: self.notes,
        }
    }
}

impl Witness {
    pub fn new(rref: Vec<Vec<u32>>, difference: impl Into<String>) -> Self {
        Self { lagrangian_rref: rref, difference_poly: difference.into(), detail: None }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn json_round_trip_and_invariants() {
        let mut b = ReportBuilder::new("demo").param("p", 3).param("n", 1);
        b.check(true, || unreachable!());
        let r = b.finish();
        assert!(r.passed());
        assert!(r.witness.is_none());
        let text = serde_json::to_string(&r).unwrap();
        assert!(!text.contains("elapsed_ms"));
        assert_eq!(serde_json::from_str::<VerificationReport>(&text).unwrap(), r);

        let mut b = ReportBuilder::new("demo");
        b.check(false, || Witness::new(vec![vec![1, 0]], "x1"));
        b.check(false, || Witness::new(vec![], "second"));
        let r = b.finish();
        assert_eq!(r.status, Status::Fail);
        assert_eq!(r.witness.as_ref().unwrap().difference_poly, "x1");
        assert_eq!(r.checks_run, 2);

        assert_eq!(ReportBuilder::new("empty").finish().status, Status::Fail);
    }
}
