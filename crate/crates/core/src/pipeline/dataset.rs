use std::path::{Path, PathBuf};

use log::{info, warn};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{derive_seed, dedup, sha256_hex, split_of, Config, Split};
use crate::error::{Error, Result};
use crate::geomkern::{execute, export_mesh, SolidModel, TriangleMesh};
use crate::imaging::{camera_ring, edge_map, render, Camera};
use crate::seqmodel::{parse_json, serialize_json, CadSequence};
use crate::wireframe::{oracle_proposals, proposals_to_json};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FileRef {
    /// Relative to the dataset root, `/`-separated.
    pub path: String,
    pub sha256: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ViewEntry {
    pub index: usize,
    pub camera: Camera,
    pub camera_file: FileRef,
    pub render: FileRef,
    pub edges: FileRef,
    pub proposals: FileRef,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ModelEntry {
    pub id: String,
    pub digest: String,
    pub split: Split,
    pub sequence: FileRef,
    pub views: Vec<ViewEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SkippedModel {
    pub id: String,
    pub reason: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DatasetCounts {
    pub inputs: usize,
    pub unparseable: usize,
    pub invalid: usize,
    pub duplicates: usize,
    pub skipped: usize,
    pub built: usize,
    pub views: usize,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DatasetManifest {
    pub tool_version: String,
    pub seed: u64,
    pub config: Config,
    pub counts: DatasetCounts,
    pub models: Vec<ModelEntry>,
    pub skipped: Vec<SkippedModel>,
}

pub const MANIFEST: &str = "manifest.json";

impl DatasetManifest {
    pub fn load(root: &Path) -> Result<Self> {
        let path = root.join(MANIFEST);
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Schema(format!("{}: {e}", path.display())))
    }

    /// Re-hashes every referenced file; returns the paths that are missing
    /// or differ.
    pub fn verify(&self, root: &Path) -> Vec<String> {
        let refs = self.models.iter().flat_map(|m| {
            std::iter::once(&m.sequence).chain(
                m.views
                    .iter()
                    .flat_map(|v| [&v.camera_file, &v.render, &v.edges, &v.proposals]),
            )
        });
        refs.filter(|r| {
            std::fs::read(root.join(&r.path)).map_or(true, |b| sha256_hex(&b) != r.sha256)
        })
        .map(|r| r.path.clone())
        .collect()
    }
}

fn write_ref(root: &Path, rel: &str, bytes: &[u8]) -> Result<FileRef> {
    let path = root.join(rel);
    std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    Ok(FileRef {
        path: rel.to_string(),
        sha256: sha256_hex(bytes),
    })
}

/// Sequence files (`*.json`) of a directory, sorted by name.
pub(crate) fn sequence_files(dir: &Path) -> Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).map_err(|e| Error::io(dir, e))? {
        let path = entry.map_err(|e| Error::io(dir, e))?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            if let Some(stem) = path.file_stem().and_then(|s| s.to_str()) {
                out.push((stem.to_string(), path.clone()));
            }
        }
    }
    out.sort();
    Ok(out)
}

fn build_view(
    root: &Path,
    dir: &str,
    model: &SolidModel,
    mesh: &TriangleMesh,
    camera: &Camera,
    index: usize,
    seed: u64,
    cfg: &Config,
) -> Result<ViewEntry> {
    let img = render(mesh, camera);
    let edges = edge_map(&img, cfg.sigma, cfg.t_low, cfg.t_high)?;
    let props = oracle_proposals(model, camera, cfg.jitter_sigma, cfg.drop_rate, cfg.clutter, seed)?;
    let mut doc = proposals_to_json(&props.lines, &props.endpoints);
    doc["truth"] = serde_json::json!(props.truth);
    let cam_json = serde_json::to_string_pretty(camera).expect("camera serializes") + "\n";
    Ok(ViewEntry {
        index,
        camera: *camera,
        camera_file: write_ref(root, &format!("{dir}/camera_{index:02}.json"), cam_json.as_bytes())?,
        render: write_ref(root, &format!("{dir}/view_{index:02}.png"), &img.to_png()?)?,
        edges: write_ref(root, &format!("{dir}/edges_{index:02}.png"), &edges.to_png()?)?,
        proposals: write_ref(
            root,
            &format!("{dir}/proposals_{index:02}.json"),
            (serde_json::to_string(&doc).expect("proposals serialize") + "\n").as_bytes(),
        )?,
    })
}

fn build_model(
    root: &Path,
    id: &str,
    seq: &CadSequence,
    digest: &str,
    cameras: &[Camera],
    cfg: &Config,
) -> Result<ModelEntry> {
    let model = execute(seq, cfg.sagitta)?.normalized();
    let mesh = export_mesh(&model, cfg.sagitta)?;
    let dir = format!("models/{id}");
    let abs = root.join(&dir);
    std::fs::create_dir_all(&abs).map_err(|e| Error::io(&abs, e))?;
    let sequence = write_ref(root, &format!("{dir}/sequence.json"), serialize_json(seq).as_bytes())?;
    let views = cameras
        .par_iter()
        .enumerate()
        .map(|(i, cam)| build_view(root, &dir, &model, &mesh, cam, i, derive_seed(cfg.seed, digest, i), cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(ModelEntry {
        id: id.to_string(),
        digest: digest.to_string(),
        split: split_of(digest),
        sequence,
        views,
    })
}

/// Builds renders, edge maps, proposals and camera sidecars for every valid,
/// distinct sequence in `seq_dir`, then writes `manifest.json`. Models that
/// fail are logged and listed as skipped; I/O errors abort.
pub fn dataset_build(seq_dir: &Path, out_dir: &Path, cfg: &Config) -> Result<DatasetManifest> {
    cfg.check()?;
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let manifest_path = out_dir.join(MANIFEST);
    if manifest_path.exists() {
        std::fs::remove_file(&manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
    }

    let files = sequence_files(seq_dir)?;
    let mut counts = DatasetCounts {
        inputs: files.len(),
        ..Default::default()
    };
    let mut skipped = Vec::new();
    let mut ids = Vec::new();
    let mut seqs = Vec::new();
    for (id, path) in &files {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        match parse_json(&text) {
            Ok(seq) => {
                ids.push(id.clone());
                seqs.push(seq);
            }
            Err(e) => {
                warn!("{id}: {e}");
                counts.unparseable += 1;
                skipped.push(SkippedModel { id: id.clone(), reason: e.to_string() });
            }
        }
    }
    let deduped = dedup(&seqs);
    counts.invalid = deduped.invalid;
    counts.duplicates = deduped.duplicates;

    let cameras = camera_ring(
        cfg.n_views,
        cfg.camera_radius,
        &cfg.elevations(),
        cfg.fov(),
        cfg.image_size,
        cfg.image_size,
    )?;
    let results: Vec<(String, Result<ModelEntry>)> = deduped
        .kept
        .par_iter()
        .zip(&deduped.sequences)
        .map(|(&i, (seq, digest))| {
            let id = &ids[i];
            let r = build_model(out_dir, id, seq, digest, &cameras, cfg);
            if r.is_ok() {
                info!("built {id}");
            }
            (id.clone(), r)
        })
        .collect();

    let mut models = Vec::new();
    for (id, r) in results {
        match r {
            Ok(entry) => models.push(entry),
            Err(e @ Error::Io { .. }) => return Err(e),
            Err(e) => {
                warn!("skipping {id}: {e}");
                skipped.push(SkippedModel { id, reason: e.to_string() });
            }
        }
    }
    counts.skipped = skipped.len() - counts.unparseable;
    counts.built = models.len();
    counts.views = models.iter().map(|m| m.views.len()).sum();
    let manifest = DatasetManifest {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        seed: cfg.seed,
        config: cfg.clone(),
        counts,
        models,
        skipped,
    };
    let tmp = out_dir.join("manifest.json.tmp");
    let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes") + "\n";
    std::fs::write(&tmp, text).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, &manifest_path).map_err(|e| Error::io(&manifest_path, e))?;
    Ok(manifest)
}
