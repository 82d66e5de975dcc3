use crate::error::{Error, Result};
use crate::geomkern::{execute, SolidModel, DEFAULT_SAGITTA};
use crate::seqmodel::{
    dequantize, validate_with_tolerance, TokenMatrix, DEQUANTIZED_CLOSURE_TOLERANCE, UNUSED,
};

/// Default parameter tolerance in tokens.
pub const DEFAULT_ETA: u32 = 3;

fn check_shapes(pred: &TokenMatrix, gt: &TokenMatrix) -> Result<()> {
    if pred.n_max() != gt.n_max() {
        return Err(Error::Shape(format!(
            "prediction has {} rows, ground truth {}",
            pred.n_max(),
            gt.n_max()
        )));
    }
    Ok(())
}

/// Fraction of ground-truth rows (through its `EOS`) whose command type is
/// predicted exactly.
pub fn cmd_accuracy(pred: &TokenMatrix, gt: &TokenMatrix) -> Result<f64> {
    check_shapes(pred, gt)?;
    let len = gt.seq_len();
    if len == 0 {
        return Ok(1.0);
    }
    let hits = pred.rows()[..len]
        .iter()
        .zip(&gt.rows()[..len])
        .filter(|(p, g)| p.type_index == g.type_index)
        .count();
    Ok(hits as f64 / len as f64)
}

/// Fraction of used ground-truth parameter slots predicted within `eta`
/// tokens. Slots of rows with a mismatched type count as wrong. A ground
/// truth without parameters scores 1.
pub fn param_accuracy(pred: &TokenMatrix, gt: &TokenMatrix, eta: u32) -> Result<f64> {
    check_shapes(pred, gt)?;
    let len = gt.seq_len();
    let (mut total, mut hits) = (0usize, 0usize);
    for (p, g) in pred.rows()[..len].iter().zip(&gt.rows()[..len]) {
        let used = g.params.iter().filter(|t| **t != UNUSED).count();
        total += used;
        if p.type_index != g.type_index {
            continue;
        }
        hits += p
            .params
            .iter()
            .zip(&g.params)
            .filter(|(pt, gt)| {
                **gt != UNUSED && **pt != UNUSED && (i32::from(**pt) - i32::from(**gt)).unsigned_abs() <= eta
            })
            .count();
    }
    Ok(if total == 0 { 1.0 } else { hits as f64 / total as f64 })
}

/// Decodes, validates and executes tokens.
pub fn execute_tokens(tokens: &TokenMatrix) -> Result<SolidModel> {
    let seq = dequantize(tokens)?;
    let report = validate_with_tolerance(&seq, DEQUANTIZED_CLOSURE_TOLERANCE);
    if let Some(f) = report.failures.first() {
        return Err(Error::Grammar {
            index: f.index,
            message: format!("{:?}: {}", f.code, f.message),
        });
    }
    execute(&seq, DEFAULT_SAGITTA)
}

/// Share of samples that failed to parse (`None`) or fail
/// [`execute_tokens`].
pub fn invalid_ratio(batch: &[Option<TokenMatrix>]) -> Result<f64> {
    if batch.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let invalid = batch
        .iter()
        .filter(|s| s.as_ref().map_or(true, |t| execute_tokens(t).is_err()))
        .count();
    Ok(invalid as f64 / batch.len() as f64)
}
