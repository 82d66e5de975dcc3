//! Decoder output: per-row command-type scores and per-slot level scores.

use serde::{Deserialize, Serialize};

use super::{CommandType, TokenMatrix, TokenRow, N_LEVELS, N_SLOTS, N_TYPES, UNUSED};
use crate::error::{Error, Result};

/// Raw decoder scores for `rows` commands: `rows × 6` type logits and
/// `rows × 16 × 256` parameter logits, both row-major.
#[derive(Clone, Debug, PartialEq)]
pub struct Logits {
    rows: usize,
    cmd: Vec<f64>,
    param: Vec<f64>,
}

#[derive(Serialize, Deserialize)]
struct LogitsDoc {
    cmd_logits: Vec<Vec<f64>>,
    param_logits: Vec<Vec<Vec<f64>>>,
}

impl Logits {
    pub fn new(rows: usize, cmd: Vec<f64>, param: Vec<f64>) -> Result<Self> {
        if cmd.len() != rows * N_TYPES {
            return Err(Error::Shape(format!(
                "command logits have {} entries, expected {rows}×{N_TYPES}",
                cmd.len()
            )));
        }
        if param.len() != rows * N_SLOTS * N_LEVELS {
            return Err(Error::Shape(format!(
                "parameter logits have {} entries, expected {rows}×{N_SLOTS}×{N_LEVELS}",
                param.len()
            )));
        }
        Ok(Self { rows, cmd, param })
    }

    pub fn zeros(rows: usize) -> Self {
        Self {
            rows,
            cmd: vec![0.0; rows * N_TYPES],
            param: vec![0.0; rows * N_SLOTS * N_LEVELS],
        }
    }

    /// Logits that put `margin` on each target index of `tokens` and zero
    /// elsewhere. Unused slots stay all-zero.
    pub fn one_hot(tokens: &TokenMatrix, margin: f64) -> Self {
        let mut out = Self::zeros(tokens.n_max());
        for (i, row) in tokens.rows().iter().enumerate() {
            out.cmd_row_mut(i)[row.type_index as usize] = margin;
            for (s, &t) in row.params.iter().enumerate() {
                if t >= 0 {
                    out.param_slot_mut(i, s)[t as usize] = margin;
                }
            }
        }
        out
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cmd_row(&self, row: usize) -> &[f64] {
        &self.cmd[row * N_TYPES..(row + 1) * N_TYPES]
    }

    pub fn cmd_row_mut(&mut self, row: usize) -> &mut [f64] {
        &mut self.cmd[row * N_TYPES..(row + 1) * N_TYPES]
    }

    pub fn param_slot(&self, row: usize, slot: usize) -> &[f64] {
        let start = (row * N_SLOTS + slot) * N_LEVELS;
        &self.param[start..start + N_LEVELS]
    }

    pub fn param_slot_mut(&mut self, row: usize, slot: usize) -> &mut [f64] {
        let start = (row * N_SLOTS + slot) * N_LEVELS;
        &mut self.param[start..start + N_LEVELS]
    }

    pub fn cmd(&self) -> &[f64] {
        &self.cmd
    }

    pub fn param(&self) -> &[f64] {
        &self.param
    }

    pub fn cmd_mut(&mut self) -> &mut [f64] {
        &mut self.cmd
    }

    pub fn param_mut(&mut self) -> &mut [f64] {
        &mut self.param
    }

    pub fn check_finite(&self) -> Result<()> {
        if !self.cmd.iter().all(|v| v.is_finite()) {
            return Err(Error::NaN("command logits"));
        }
        if !self.param.iter().all(|v| v.is_finite()) {
            return Err(Error::NaN("parameter logits"));
        }
        Ok(())
    }

    /// Parses the JSON form `{"cmd_logits": [[6]...], "param_logits": [[[256]×16]...]}`.
    pub fn from_json(text: &str) -> Result<Self> {
        let doc: LogitsDoc =
            serde_json::from_str(text).map_err(|e| Error::Schema(e.to_string()))?;
        let rows = doc.cmd_logits.len();
        if doc.param_logits.len() != rows {
            return Err(Error::Shape(format!(
                "{rows} command rows but {} parameter rows",
                doc.param_logits.len()
            )));
        }
        if let Some(r) = doc.cmd_logits.iter().find(|r| r.len() != N_TYPES) {
            return Err(Error::Shape(format!(
                "command row has {} entries, expected {N_TYPES}",
                r.len()
            )));
        }
        for row in &doc.param_logits {
            if row.len() != N_SLOTS || row.iter().any(|s| s.len() != N_LEVELS) {
                return Err(Error::Shape(format!(
                    "parameter rows must be {N_SLOTS}×{N_LEVELS}"
                )));
            }
        }
        let cmd = doc.cmd_logits.into_iter().flatten().collect();
        let param = doc.param_logits.into_iter().flatten().flatten().collect();
        Self::new(rows, cmd, param)
    }

    pub fn to_json(&self) -> String {
        let doc = LogitsDoc {
            cmd_logits: self.cmd.chunks(N_TYPES).map(<[f64]>::to_vec).collect(),
            param_logits: self
                .param
                .chunks(N_SLOTS * N_LEVELS)
                .map(|r| r.chunks(N_LEVELS).map(<[f64]>::to_vec).collect())
                .collect(),
        };
        serde_json::to_string(&doc).expect("finite logits serialize")
    }
}

/// Index of the largest entry, lowest index on ties.
pub(crate) fn argmax(values: &[f64]) -> usize {
    let mut best = 0;
    for (i, v) in values.iter().enumerate().skip(1) {
        if *v > values[best] {
            best = i;
        }
    }
    best
}

/// Greedy decoding: argmax per row and per used slot; rows after the first
/// decoded `EOS` become padding.
pub fn decode_logits(logits: &Logits) -> Result<TokenMatrix> {
    logits.check_finite()?;
    let mut rows = Vec::with_capacity(logits.rows());
    for i in 0..logits.rows() {
        let kind = CommandType::ALL[argmax(logits.cmd_row(i))];
        let mut params = [UNUSED; N_SLOTS];
        for slot in kind.slots() {
            params[slot.index()] = argmax(logits.param_slot(i, slot.index())) as i16;
        }
        rows.push(TokenRow {
            type_index: kind as u8,
            params,
        });
        if kind == CommandType::Eos {
            break;
        }
    }
    rows.resize(logits.rows(), TokenRow::EOS);
    Ok(TokenMatrix::new(rows))
}
