use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use serde_json::Value;

/// Outcome of a numerical check; serialises with stable key order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check: String,
    pub pass: bool,
    pub statistic: f64,
    pub threshold: f64,
    pub worst_point: Option<Vec<f64>>,
    pub points: usize,
    #[serde(default)]
    pub details: BTreeMap<String, Value>,
}

impl VerificationReport {
    pub fn new(check: &str, pass: bool, statistic: f64, threshold: f64, points: usize) -> Self {
        VerificationReport {
            check: check.to_string(),
            pass,
            statistic,
            threshold,
            worst_point: None,
            points,
            details: BTreeMap::new(),
        }
    }

    pub fn detail(&mut self, key: &str, value: impl Serialize) {
        self.details
            .insert(key.to_string(), serde_json::to_value(value).unwrap_or(Value::Null));
    }
}
