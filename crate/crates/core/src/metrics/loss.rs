use crate::error::{Error, Result};
use crate::seqmodel::{Logits, TokenMatrix, N_SLOTS, UNUSED};

/// Weight of the parameter term.
pub const DEFAULT_LAMBDA: f64 = 2.0;

fn log_softmax_at(logits: &[f64], target: usize) -> f64 {
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let lse = max + logits.iter().map(|z| (z - max).exp()).sum::<f64>().ln();
    logits[target] - lse
}

/// `grad += scale · (softmax(logits) − onehot(target))`.
fn add_ce_grad(logits: &[f64], target: usize, scale: f64, grad: &mut [f64]) {
    let max = logits.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|z| (z - max).exp()).collect();
    let sum: f64 = exps.iter().sum();
    for (i, (g, e)) in grad.iter_mut().zip(&exps).enumerate() {
        *g += scale * (e / sum - if i == target { 1.0 } else { 0.0 });
    }
}

fn check(logits: &Logits, gt: &TokenMatrix) -> Result<usize> {
    if logits.rows() != gt.n_max() {
        return Err(Error::Shape(format!(
            "logits have {} rows, ground truth {}",
            logits.rows(),
            gt.n_max()
        )));
    }
    logits.check_finite()?;
    let len = gt.seq_len();
    for (i, row) in gt.rows()[..len].iter().enumerate() {
        if row.kind().is_none() {
            return Err(Error::Code(format!("row {i}: command type {}", row.type_index)));
        }
        if row.params.iter().any(|&t| t != UNUSED && !(0..=255).contains(&t)) {
            return Err(Error::Code(format!("row {i}: parameter token out of range")));
        }
    }
    Ok(len)
}

/// Summed cross-entropy over ground-truth rows (through `EOS`): the type term
/// plus `lambda` times the terms of the parameter slots the row uses.
pub fn loss(logits: &Logits, gt: &TokenMatrix, lambda: f64) -> Result<f64> {
    let len = check(logits, gt)?;
    let mut total = 0.0;
    for (i, row) in gt.rows()[..len].iter().enumerate() {
        total -= log_softmax_at(logits.cmd_row(i), row.type_index as usize);
        let mut params = 0.0;
        for s in 0..N_SLOTS {
            if row.params[s] != UNUSED {
                params -= log_softmax_at(logits.param_slot(i, s), row.params[s] as usize);
            }
        }
        total += lambda * params;
    }
    Ok(total)
}

/// Loss and its gradient with respect to every logit.
pub fn loss_and_grad(logits: &Logits, gt: &TokenMatrix, lambda: f64) -> Result<(f64, Logits)> {
    let value = loss(logits, gt, lambda)?;
    let mut grad = Logits::zeros(logits.rows());
    for (i, row) in gt.rows()[..gt.seq_len()].iter().enumerate() {
        add_ce_grad(logits.cmd_row(i), row.type_index as usize, 1.0, grad.cmd_row_mut(i));
        for s in 0..N_SLOTS {
            if row.params[s] != UNUSED {
                add_ce_grad(logits.param_slot(i, s), row.params[s] as usize, lambda, grad.param_slot_mut(i, s));
            }
        }
    }
    Ok((value, grad))
}
