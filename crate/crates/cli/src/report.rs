use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::time::Instant;

use serde::Serialize;
use serde_json::{json, Value};

use crate::CliError;

/// How complete the computation behind a claim is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certification {
    #[serde(rename = "exhaustive")]
    Exhaustive,
    /// Searched over a bounded field or checked on a sample.
    #[serde(rename = "bounded")]
    Bounded,
    #[serde(rename = "closure-only")]
    ClosureOnly,
    #[serde(rename = "closure-only+injectivity-bound")]
    ClosureOnlyInjectivityBound,
}

#[derive(Clone, Debug, Serialize)]
pub struct ClaimReport {
    pub claim_id: String,
    pub parameters: BTreeMap<String, Value>,
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub runtime_ms: u64,
    pub certification: Certification,
}

/// Outcome of a claim body: expected value, computed value, and whether they match.
pub struct Outcome {
    pub expected: Value,
    pub computed: Value,
    pub pass: bool,
    pub certification: Option<Certification>,
}

impl Outcome {
    /// Pass iff expected == computed.
    pub fn equal(expected: Value, computed: Value) -> Self {
        let pass = expected == computed;
        Outcome {
            expected,
            computed,
            pass,
            certification: None,
        }
    }

    pub fn with(expected: Value, computed: Value, pass: bool) -> Self {
        Outcome {
            expected,
            computed,
            pass,
            certification: None,
        }
    }

    pub fn certified(mut self, c: Certification) -> Self {
        self.certification = Some(c);
        self
    }
}

/// Runs one claim, timing it; an error inside the body is a failed claim.
pub fn run_claim(
    id: &str,
    parameters: &BTreeMap<String, Value>,
    certification: Certification,
    body: impl FnOnce() -> Result<Outcome, CliError>,
) -> ClaimReport {
    let start = Instant::now();
    let result = body();
    let runtime_ms = start.elapsed().as_millis() as u64;
    let (expected, computed, pass, cert) = match result {
        Ok(o) => (o.expected, o.computed, o.pass, o.certification.unwrap_or(certification)),
        Err(e) => (Value::Null, json!({ "error": e.to_string() }), false, certification),
    };
    ClaimReport {
        claim_id: id.to_string(),
        parameters: parameters.clone(),
        expected,
        computed,
        pass,
        runtime_ms,
        certification: cert,
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Bundle {
    pub command: String,
    pub parameters: BTreeMap<String, Value>,
    pub claims: Vec<ClaimReport>,
    /// Values reported without an expectation.
    pub observations: BTreeMap<String, Value>,
    pub pass: bool,
}

impl Bundle {
    pub fn new(command: &str, parameters: BTreeMap<String, Value>) -> Self {
        Bundle {
            command: command.to_string(),
            parameters,
            claims: Vec::new(),
            observations: BTreeMap::new(),
            pass: true,
        }
    }

    pub fn push(&mut self, claim: ClaimReport) {
        self.pass &= claim.pass;
        self.claims.push(claim);
    }

    pub fn observe(&mut self, key: &str, value: Value) {
        self.observations.insert(key.to_string(), value);
    }

    pub fn claim(&self, id: &str) -> Option<&ClaimReport> {
        self.claims.iter().find(|c| c.claim_id == id)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{} {}", self.command, Value::Object(self.parameters.clone().into_iter().collect()));
        let width = self.claims.iter().map(|c| c.claim_id.len()).max().unwrap_or(0);
        for c in &self.claims {
            let _ = writeln!(
                out,
                "  {:<width$}  {}  {:>7} ms  {}",
                c.claim_id,
                if c.pass { "PASS" } else { "FAIL" },
                c.runtime_ms,
                c.computed,
            );
        }
        for (k, v) in &self.observations {
            let _ = writeln!(out, "  note {k}: {v}");
        }
        let _ = writeln!(out, "{}", if self.pass { "all claims pass" } else { "some claims FAILED" });
        out
    }
}

pub fn params<const N: usize>(pairs: [(&str, Value); N]) -> BTreeMap<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
