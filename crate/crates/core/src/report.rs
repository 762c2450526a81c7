//! Outcome of a single identity check.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
}

/// A named check with its configuration. A failing report always carries a
/// witness.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CheckReport {
    pub name: String,
    pub config: Value,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<Value>,
}

impl CheckReport {
    pub fn pass(name: impl Into<String>, config: Value) -> Self {
        CheckReport { name: name.into(), config, status: Status::Pass, witness: None }
    }

    pub fn fail(name: impl Into<String>, config: Value, witness: Value) -> Self {
        CheckReport { name: name.into(), config, status: Status::Fail, witness: Some(witness) }
    }

    /// Pass when `witness` is `None`.
    pub fn from_witness(name: impl Into<String>, config: Value, witness: Option<Value>) -> Self {
        match witness {
            None => Self::pass(name, config),
            Some(w) => Self::fail(name, config, w),
        }
    }

    /// Errors become failures whose witness is the error message.
    pub fn from_result(name: impl Into<String>, config: Value, r: crate::Result<Option<Value>>) -> Self {
        match r {
            Ok(w) => Self::from_witness(name, config, w),
            Err(e) => Self::fail(name, config, Value::String(e.to_string())),
        }
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}
