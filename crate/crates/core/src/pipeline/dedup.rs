use std::collections::HashSet;

use super::token_digest;
use crate::seqmodel::{quantize, validate, CadSequence};

/// Outcome of [`dedup`].
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Deduped {
    /// Surviving sequences in input order, with their token digests.
    pub sequences: Vec<(CadSequence, String)>,
    /// Input positions of kept sequences.
    pub kept: Vec<usize>,
    pub invalid: usize,
    pub duplicates: usize,
}

/// Drops invalid sequences and every later sequence whose quantized tokens
/// match an earlier one.
pub fn dedup(seqs: &[CadSequence]) -> Deduped {
    let mut out = Deduped::default();
    let mut seen = HashSet::new();
    for (i, seq) in seqs.iter().enumerate() {
        let tokens = match quantize(seq) {
            Ok(t) if validate(seq).valid => t,
            _ => {
                out.invalid += 1;
                continue;
            }
        };
        let digest = token_digest(&tokens);
        if seen.insert(digest.clone()) {
            out.sequences.push((seq.clone(), digest));
            out.kept.push(i);
        } else {
            out.duplicates += 1;
        }
    }
    out
}
