//! Accuracy, validity and shape-fidelity metrics and the training loss.

mod accuracy;
mod chamfer;
mod loss;

use serde::{Deserialize, Serialize};

pub use accuracy::{cmd_accuracy, execute_tokens, invalid_ratio, param_accuracy, DEFAULT_ETA};
pub use chamfer::chamfer;
pub use loss::{loss, loss_and_grad, DEFAULT_LAMBDA};

/// Surface samples per shape for Chamfer distance.
pub const DEFAULT_CD_SAMPLES: usize = 2000;

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct Counts {
    pub sequences: usize,
    pub valid_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    pub cmd_acc: f64,
    pub param_acc: f64,
    pub invalid_ratio: f64,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub cd: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub loss: Option<f64>,
    pub counts: Counts,
    pub config: serde_json::Value,
}
