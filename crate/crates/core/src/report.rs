//! Verdict reports shared by the CLI, the FFI layer and the example bundles.

use serde::Serialize;
use serde_json::{Map, Value};

use crate::field::Backend;

/// PROOF verdicts rest on exact arithmetic and carry a re-verifiable payload.
/// EVIDENCE verdicts come from tolerances or randomized search and carry the
/// parameters needed to rerun them bit for bit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Certainty {
    Proof,
    Evidence,
}

impl Certainty {
    /// PROOF only for exact computations in the exact backend.
    pub fn for_backend(backend: Backend, exact_method: bool) -> Self {
        if exact_method && backend == Backend::Exact {
            Certainty::Proof
        } else {
            Certainty::Evidence
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Certainty::Proof => "PROOF",
            Certainty::Evidence => "EVIDENCE",
        }
    }
}

/// One line of report output. Field order is fixed so identical runs give
/// identical bytes; wall time is deliberately not part of it.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Report {
    pub check: String,
    pub verdict: Value,
    pub certainty: Certainty,
    pub backend: Backend,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(skip_serializing_if = "Map::is_empty")]
    pub tolerances: Map<String, Value>,
    pub payload: Map<String, Value>,
}

impl Report {
    pub fn new(check: impl Into<String>, verdict: impl Into<Value>, certainty: Certainty, backend: Backend) -> Self {
        Report {
            check: check.into(),
            verdict: verdict.into(),
            certainty,
            backend,
            seed: None,
            tolerances: Map::new(),
            payload: Map::new(),
        }
    }

    pub fn seed(mut self, seed: u64) -> Self {
        self.seed = Some(seed);
        self
    }

    pub fn tolerance(mut self, key: &str, value: f64) -> Self {
        self.tolerances.insert(key.into(), value.into());
        self
    }

    pub fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.payload.insert(key.into(), value.into());
        self
    }

    /// Adds wall time in milliseconds (opt-in; breaks byte-identical reruns).
    pub fn with_timing(mut self, millis: f64) -> Self {
        self.payload.insert("wall_time_ms".into(), millis.into());
        self
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("reports serialize")
    }
}
