//! Sequence generation, deduplication, dataset building and batch evaluation.

mod config;
mod dataset;
mod dedup;
mod eval;
mod generate;

use sha2::{Digest, Sha256};

use crate::seqmodel::TokenMatrix;

pub use config::Config;
pub use dataset::{dataset_build, DatasetManifest, FileRef, ModelEntry, SkippedModel, ViewEntry};
pub use dedup::{dedup, Deduped};
pub use eval::{eval_run, read_prediction};
pub use generate::{check_generated, generate, generate_sequence};

pub fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

/// Canonical digest of a token matrix.
pub fn token_digest(tokens: &TokenMatrix) -> String {
    sha256_hex(&tokens.to_bytes())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Val,
    Test,
}

/// 90/5/5 split keyed by a hex digest.
pub fn split_of(digest: &str) -> Split {
    let bucket = u64::from_str_radix(&digest[..digest.len().min(12)], 16).unwrap_or(0) % 100;
    match bucket {
        0..=89 => Split::Train,
        90..=94 => Split::Val,
        _ => Split::Test,
    }
}

/// Seed for one unit of work, mixed from the run seed and a key.
pub(crate) fn derive_seed(seed: u64, key: &str, index: usize) -> u64 {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(key.as_bytes());
    h.update((index as u64).to_le_bytes());
    u64::from_le_bytes(h.finalize()[..8].try_into().expect("8 bytes"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn split_proportions() {
        let mut counts = [0usize; 3];
        for i in 0..20000 {
            match split_of(&sha256_hex(&(i as u32).to_le_bytes())) {
                Split::Train => counts[0] += 1,
                Split::Val => counts[1] += 1,
                Split::Test => counts[2] += 1,
            }
        }
        assert!((counts[0] as f64 / 20000.0 - 0.90).abs() < 0.01);
        assert!((counts[1] as f64 / 20000.0 - 0.05).abs() < 0.01);
        assert!((counts[2] as f64 / 20000.0 - 0.05).abs() < 0.01);
    }
}
