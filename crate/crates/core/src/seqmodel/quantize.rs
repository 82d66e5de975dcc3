//! Integer token form of a sequence and its binary encoding.

use super::{CadSequence, Command, CommandType, ParamSlot, N_LEVELS, N_MAX, N_SLOTS};
use crate::error::{Error, Result};

/// Token value of a slot the command type does not use.
pub const UNUSED: i16 = -1;

const MAGIC: &[u8; 4] = b"SKEX";
const VERSION: u16 = 1;
const MAX_TOKEN: f64 = (N_LEVELS - 1) as f64;

/// One row of a [`TokenMatrix`]. Raw integers so malformed decoder output can
/// be represented and diagnosed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TokenRow {
    pub type_index: u8,
    pub params: [i16; N_SLOTS],
}

impl TokenRow {
    pub const EOS: TokenRow = TokenRow {
        type_index: CommandType::Eos as u8,
        params: [UNUSED; N_SLOTS],
    };

    pub fn kind(&self) -> Option<CommandType> {
        CommandType::from_index(self.type_index as usize)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TokenMatrix {
    rows: Vec<TokenRow>,
}

impl TokenMatrix {
    pub fn new(rows: Vec<TokenRow>) -> Self {
        Self { rows }
    }

    /// An all-`EOS` matrix with `n_max` rows.
    pub fn padding(n_max: usize) -> Self {
        Self::new(vec![TokenRow::EOS; n_max])
    }

    pub fn rows(&self) -> &[TokenRow] {
        &self.rows
    }

    pub fn n_max(&self) -> usize {
        self.rows.len()
    }

    /// Number of rows up to and including the first `EOS`; all rows if there is none.
    pub fn seq_len(&self) -> usize {
        self.rows
            .iter()
            .position(|r| r.type_index == CommandType::Eos as u8)
            .map_or(self.rows.len(), |i| i + 1)
    }

    /// Checks codes and sentinel placement, and that rows after the first
    /// `EOS` are padding.
    pub fn check(&self) -> Result<()> {
        let len = self.seq_len();
        for (i, row) in self.rows.iter().enumerate() {
            decode_row(row).map_err(|e| match e {
                Error::Code(m) => Error::Code(format!("row {i}: {m}")),
                other => other,
            })?;
            if i >= len && *row != TokenRow::EOS {
                return Err(Error::Code(format!("row {i}: non-padding row after EOS")));
            }
        }
        Ok(())
    }

    /// Little-endian binary form: `SKEX`, version u16, N_max u16, then per row
    /// a u8 type index and 16 i16 parameter tokens.
    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::with_capacity(8 + self.rows.len() * (1 + 2 * N_SLOTS));
        out.extend_from_slice(MAGIC);
        out.extend_from_slice(&VERSION.to_le_bytes());
        out.extend_from_slice(&(self.rows.len() as u16).to_le_bytes());
        for row in &self.rows {
            out.push(row.type_index);
            for p in row.params {
                out.extend_from_slice(&p.to_le_bytes());
            }
        }
        out
    }

    pub fn from_bytes(bytes: &[u8]) -> Result<Self> {
        if bytes.len() < 8 || &bytes[..4] != MAGIC {
            return Err(Error::Schema("missing SKEX header".into()));
        }
        let version = u16::from_le_bytes([bytes[4], bytes[5]]);
        if version != VERSION {
            return Err(Error::Schema(format!("unsupported token version {version}")));
        }
        let n = u16::from_le_bytes([bytes[6], bytes[7]]) as usize;
        let row_len = 1 + 2 * N_SLOTS;
        let body = &bytes[8..];
        if body.len() != n * row_len {
            return Err(Error::Schema(format!(
                "expected {} payload bytes for {n} rows, got {}",
                n * row_len,
                body.len()
            )));
        }
        let rows = body
            .chunks_exact(row_len)
            .map(|chunk| {
                let mut params = [0i16; N_SLOTS];
                for (k, p) in params.iter_mut().enumerate() {
                    *p = i16::from_le_bytes([chunk[1 + 2 * k], chunk[2 + 2 * k]]);
                }
                TokenRow {
                    type_index: chunk[0],
                    params,
                }
            })
            .collect();
        Ok(Self { rows })
    }
}

fn quantize_value(slot: ParamSlot, v: f64) -> Result<i16> {
    match slot.cardinality() {
        Some(n) => {
            if v.fract() != 0.0 || v < 0.0 || v >= f64::from(n) {
                return Err(Error::Range(format!("'{}' code {v} out of range", slot.name())));
            }
            Ok(v as i16)
        }
        None => {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::Range(format!(
                    "'{}' = {v} is outside [0, 1]",
                    slot.name()
                )));
            }
            Ok((v * MAX_TOKEN).round() as i16)
        }
    }
}

/// Quantizes continuous slots to 256 levels (`round(v · 255)`, halves away
/// from zero), keeps discrete codes, and pads to [`N_MAX`] rows with `EOS`.
pub fn quantize(seq: &CadSequence) -> Result<TokenMatrix> {
    if seq.len() > N_MAX {
        return Err(Error::Length {
            len: seq.len(),
            max: N_MAX,
        });
    }
    let mut rows = Vec::with_capacity(N_MAX);
    for cmd in seq.commands() {
        let slots = cmd.slots();
        let mut params = [UNUSED; N_SLOTS];
        for slot in cmd.kind().slots() {
            let v = slots[slot.index()].expect("used slot is populated");
            params[slot.index()] = quantize_value(*slot, v)?;
        }
        rows.push(TokenRow {
            type_index: cmd.kind() as u8,
            params,
        });
    }
    rows.resize(N_MAX, TokenRow::EOS);
    Ok(TokenMatrix { rows })
}

fn decode_row(row: &TokenRow) -> Result<Command> {
    let kind = row
        .kind()
        .ok_or_else(|| Error::Code(format!("type index {} out of range", row.type_index)))?;
    let mut slots = [None; N_SLOTS];
    for slot in ParamSlot::ALL {
        let t = row.params[slot.index()];
        if !kind.uses(slot) {
            if t != UNUSED {
                return Err(Error::Code(format!(
                    "{kind} row carries token {t} in unused slot '{}'",
                    slot.name()
                )));
            }
            continue;
        }
        let limit = slot.cardinality().map_or(N_LEVELS as i16, i16::from);
        if !(0..limit).contains(&t) {
            return Err(Error::Code(format!(
                "token {t} out of range for slot '{}'",
                slot.name()
            )));
        }
        slots[slot.index()] = Some(if slot.is_discrete() {
            f64::from(t)
        } else {
            f64::from(t) / MAX_TOKEN
        });
    }
    Command::from_slots(kind, &slots).map_err(|e| Error::Code(e.to_string()))
}

/// Inverse of [`quantize`]: token `k` becomes `k / 255`, padding after the
/// first `EOS` is dropped.
pub fn dequantize(tokens: &TokenMatrix) -> Result<CadSequence> {
    let len = tokens.seq_len();
    tokens.rows[..len]
        .iter()
        .enumerate()
        .map(|(i, row)| {
            decode_row(row).map_err(|e| match e {
                Error::Code(m) => Error::Code(format!("row {i}: {m}")),
                other => other,
            })
        })
        .collect::<Result<Vec<_>>>()
        .map(CadSequence::new)
}
