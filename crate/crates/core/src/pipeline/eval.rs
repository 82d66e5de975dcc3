use std::collections::BTreeMap;
use std::path::{Path, PathBuf};

use log::warn;
use rayon::prelude::*;

use super::dataset::{sequence_files, DatasetManifest, MANIFEST};
use super::{derive_seed, Config};
use crate::error::{Error, Result};
use crate::geomkern::{normalize_points, sample_surface, PointCloud, SolidModel};
use crate::metrics::{chamfer, cmd_accuracy, execute_tokens, param_accuracy, Counts, MetricReport};
use crate::seqmodel::{parse_json_unchecked, quantize, TokenMatrix};

/// Tokens of a prediction file (`.json` sequence or `.skex` token matrix),
/// or `None` when the content is corrupt. Only I/O failures are errors.
pub fn read_prediction(path: &Path) -> Result<Option<TokenMatrix>> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    let tokens = if path.extension().is_some_and(|e| e == "skex") {
        TokenMatrix::from_bytes(&bytes)
    } else {
        std::str::from_utf8(&bytes)
            .map_err(|e| Error::Schema(e.to_string()))
            .and_then(parse_json_unchecked)
            .and_then(|s| quantize(&s))
    };
    Ok(tokens.map_err(|e| warn!("{}: {e}", path.display())).ok())
}

/// Sequence files by id: the models of a dataset root, or the `.json` and
/// `.skex` files of a flat directory.
fn collect(dir: &Path) -> Result<BTreeMap<String, PathBuf>> {
    if dir.join(MANIFEST).exists() {
        let m = DatasetManifest::load(dir)?;
        return Ok(m.models.iter().map(|e| (e.id.clone(), dir.join(&e.sequence.path))).collect());
    }
    let mut out: BTreeMap<String, PathBuf> = sequence_files(dir)?.into_iter().collect();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.extension().is_some_and(|e| e == "skex") {
            let stem = path.file_stem().and_then(|s| s.to_str()).unwrap_or_default().to_string();
            if out.insert(stem.clone(), path).is_some() {
                return Err(Error::Argument(format!("{stem} has both .json and .skex files")));
            }
        }
    }
    Ok(out)
}

fn surface(model: &SolidModel, cfg: &Config, seed: u64) -> Result<PointCloud> {
    let band = cfg.band_fraction * model.bounding_box().diagonal();
    Ok(normalize_points(&sample_surface(model, cfg.cd_samples, band, seed)?))
}

struct PairScore {
    cmd: f64,
    param: f64,
    cd: Option<f64>,
}

fn score_pair(id: &str, pred: &Path, gt: &Path, cfg: &Config) -> Result<PairScore> {
    let gt_tokens = read_prediction(gt)?
        .ok_or_else(|| Error::Argument(format!("ground truth {id} is unreadable")))?;
    let Some(tokens) = read_prediction(pred)? else {
        return Ok(PairScore { cmd: 0.0, param: 0.0, cd: None });
    };
    let (cmd, param) = match (cmd_accuracy(&tokens, &gt_tokens), param_accuracy(&tokens, &gt_tokens, cfg.eta)) {
        (Ok(c), Ok(p)) => (c, p),
        _ => return Ok(PairScore { cmd: 0.0, param: 0.0, cd: None }),
    };
    let seed = derive_seed(cfg.seed, id, 0);
    let pred_cloud = execute_tokens(&tokens).and_then(|m| surface(&m, cfg, seed));
    let cd = match pred_cloud {
        Ok(p) => {
            let gt_model = execute_tokens(&gt_tokens)
                .map_err(|e| Error::Argument(format!("ground truth {id} does not execute: {e}")))?;
            Some(chamfer(&p, &surface(&gt_model, cfg, seed)?)?)
        }
        Err(e) => {
            warn!("{id}: invalid prediction: {e}");
            None
        }
    };
    Ok(PairScore { cmd, param, cd })
}

/// Scores every prediction against the ground truth with the same id.
/// Accuracies are averaged over all pairs (corrupt predictions score 0);
/// Chamfer distance over pairs whose prediction executes.
pub fn eval_run(pred_dir: &Path, gt_dir: &Path, cfg: &Config) -> Result<MetricReport> {
    let preds = collect(pred_dir)?;
    let gts = collect(gt_dir)?;
    let orphans: Vec<String> = preds
        .keys()
        .filter(|k| !gts.contains_key(*k))
        .chain(gts.keys().filter(|k| !preds.contains_key(*k)))
        .cloned()
        .collect();
    if !orphans.is_empty() {
        return Err(Error::Pairing(orphans));
    }
    if preds.is_empty() {
        return Err(Error::EmptyBatch);
    }
    let scores = preds
        .par_iter()
        .map(|(id, p)| score_pair(id, p, &gts[id], cfg))
        .collect::<Result<Vec<_>>>()?;
    let n = scores.len() as f64;
    let valid: Vec<f64> = scores.iter().filter_map(|s| s.cd).collect();
    Ok(MetricReport {
        cmd_acc: scores.iter().map(|s| s.cmd).sum::<f64>() / n,
        param_acc: scores.iter().map(|s| s.param).sum::<f64>() / n,
        invalid_ratio: (scores.len() - valid.len()) as f64 / n,
        cd: (!valid.is_empty()).then(|| valid.iter().sum::<f64>() / valid.len() as f64),
        loss: None,
        counts: Counts {
            sequences: scores.len(),
            valid_pairs: valid.len(),
        },
        config: serde_json::to_value(cfg).expect("config serializes"),
    })
}
