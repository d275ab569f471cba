use std::fmt::Write as _;

use lorentz::{Interval64, Witness};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

/// Exit status of a finished run.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    Negative,
    Undecided,
}

impl Outcome {
    pub fn code(self) -> i32 {
        match self {
            Self::Success => 0,
            Self::Negative => 1,
            Self::Undecided => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Bounds {
    pub lo: f64,
    pub hi: f64,
}

impl From<Interval64> for Bounds {
    fn from(x: Interval64) -> Self {
        Self { lo: x.lo, hi: x.hi }
    }
}

pub fn bounds(x: Interval64) -> Value {
    json!({ "lo": x.lo, "hi": x.hi })
}

pub fn witness(w: &Witness<f64>, member_spec: Option<Value>) -> Value {
    json!({
        "index": w.index,
        "member": w.member.to_string(),
        "member_spec": member_spec,
        "gap": bounds(w.gap),
        "every_index": w.every_index,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RunReport {
    /// Arguments after the program name.
    pub command: Vec<String>,
    /// SHA-256 of the canonical inputs.
    pub inputs_digest: String,
    pub seed: Option<u64>,
    pub verdict: String,
    pub norm_pth: Option<Bounds>,
    pub table: Vec<Value>,
    pub witness: Option<Value>,
    pub details: Value,
    pub runtime_ms: u64,
}

/// Command results before the run metadata is attached.
#[derive(Debug, Clone)]
pub struct Findings {
    pub outcome: Outcome,
    pub verdict: String,
    pub norm_pth: Option<Bounds>,
    pub table: Vec<Value>,
    pub witness: Option<Value>,
    pub details: Value,
    pub seed: Option<u64>,
    /// Canonical inputs, hashed into the digest.
    pub inputs: Value,
    /// Canonical spec for `--emit-spec`.
    pub spec: Option<String>,
}

impl Findings {
    pub fn new(outcome: Outcome, verdict: impl Into<String>, inputs: Value) -> Self {
        Self {
            outcome,
            verdict: verdict.into(),
            norm_pth: None,
            table: Vec::new(),
            witness: None,
            details: Value::Null,
            seed: None,
            inputs,
            spec: None,
        }
    }
}

pub fn digest(inputs: &Value) -> String {
    // serde_json keeps object keys sorted, so equal inputs serialize equally
    hex::encode(Sha256::digest(inputs.to_string().as_bytes()))
}

impl RunReport {
    pub fn assemble(command: Vec<String>, findings: &Findings, runtime_ms: u64) -> Self {
        Self {
            command,
            inputs_digest: digest(&findings.inputs),
            seed: findings.seed,
            verdict: findings.verdict.clone(),
            norm_pth: findings.norm_pth,
            table: findings.table.clone(),
            witness: findings.witness.clone(),
            details: findings.details.clone(),
            runtime_ms,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn human(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "command: {}", self.command.join(" "));
        let _ = writeln!(out, "verdict: {}", self.verdict);
        if let Some(n) = self.norm_pth {
            let _ = writeln!(out, "norm^p:  [{:.15}, {:.15}]  (width {:.3e})", n.lo, n.hi, n.hi - n.lo);
        }
        for row in &self.table {
            let _ = writeln!(out, "  {row}");
        }
        if let Some(w) = &self.witness {
            let _ = writeln!(out, "witness: {w}");
        }
        if !self.details.is_null() {
            let _ = writeln!(out, "details: {}", self.details);
        }
        if let Some(seed) = self.seed {
            let _ = writeln!(out, "seed:    {seed}");
        }
        let _ = writeln!(out, "digest:  {}", self.inputs_digest);
        let _ = writeln!(out, "time:    {} ms", self.runtime_ms);
        out
    }
}
