use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::{info, warn};

use extrudekit::geomkern::{default_band, execute, export_mesh, normalize_points, sample_surface};
use extrudekit::imaging::{camera_ring, edge_map, render, GrayImage};
use extrudekit::metrics::loss;
use extrudekit::pipeline::{dataset_build, dedup, eval_run, generate, read_prediction, Config};
use extrudekit::seqmodel::{parse_json, serialize_json, validate, CadSequence, Logits};
use extrudekit::wireframe::{bind, loi_points, proposals_from_json, uniform_samples};

#[derive(Parser)]
#[command(name = "extrudekit", version, about = "Sketch-and-extrude sequence toolkit")]
struct Cli {
    /// Flat TOML file with pipeline parameters.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Overrides the configured seed.
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Overrides the configured number of views.
    #[arg(long, global = true)]
    views: Option<usize>,
    /// Output file or directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Clone, Copy, ValueEnum)]
enum MeshFormat {
    Obj,
    Stl,
    Xyz,
}

#[derive(Subcommand)]
enum Cmd {
    /// Validate sequence files and print a report per file.
    Validate { files: Vec<PathBuf> },
    /// Execute a sequence into a mesh or a surface point cloud.
    Execute {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "obj")]
        format: MeshFormat,
        /// Point count for `xyz`.
        #[arg(long, default_value_t = 2000)]
        points: usize,
    },
    /// Render the configured camera ring for a sequence.
    Render { file: PathBuf },
    /// Extract an edge map from an image.
    Edgemap {
        image: PathBuf,
        #[arg(long)]
        sigma: Option<f64>,
        #[arg(long)]
        t_low: Option<f64>,
        #[arg(long)]
        t_high: Option<f64>,
    },
    /// Bind line proposals to endpoint proposals.
    Bind {
        proposals: PathBuf,
        #[arg(long)]
        epsilon: Option<f64>,
        /// Also emit line-of-interest sample points.
        #[arg(long)]
        loi: bool,
    },
    /// Generate random valid sequences.
    Gen { count: usize },
    /// Drop invalid and duplicate sequences from a directory.
    Dedup { dir: PathBuf },
    /// Build renders, edge maps and proposals for a directory of sequences.
    Dataset { dir: PathBuf },
    /// Compare predictions against ground truth.
    Eval { pred: PathBuf, gt: PathBuf },
    /// Training loss of decoder logits against a ground-truth sequence.
    Loss {
        logits: PathBuf,
        gt: PathBuf,
        #[arg(long)]
        lambda: Option<f64>,
    },
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn write(path: &Path, bytes: impl AsRef<[u8]>) -> Result<()> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        fs::create_dir_all(parent)?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn load_sequence(path: &Path) -> Result<CadSequence> {
    parse_json(&read(path)?).with_context(|| format!("parsing {}", path.display()))
}

/// Prints to stdout, or writes to `--out` when given.
fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => write(p, text),
        None => {
            println!("{}", text.trim_end());
            Ok(())
        }
    }
}

fn out_dir(cli: &Cli) -> Result<&Path> {
    cli.out.as_deref().context("--out is required")
}

fn sequence_paths(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("listing {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|e| e == "json"))
        .collect();
    files.sort();
    Ok(files)
}

/// Runs a subcommand; `Ok(false)` means some items failed.
fn run(cli: &Cli, cfg: &Config) -> Result<bool> {
    let out = cli.out.as_deref();
    match &cli.command {
        Cmd::Validate { files } => {
            if files.is_empty() {
                bail!("no files given");
            }
            let mut ok = true;
            let mut reports = serde_json::Map::new();
            for f in files {
                let report = match parse_json(&read(f)?) {
                    Ok(seq) => serde_json::to_value(validate(&seq))?,
                    Err(e) => serde_json::json!({"valid": false, "error": e.to_string()}),
                };
                ok &= report["valid"] == true;
                reports.insert(f.display().to_string(), report);
            }
            emit(out, &serde_json::to_string_pretty(&reports)?)?;
            Ok(ok)
        }
        Cmd::Execute { file, format, points } => {
            let model = execute(&load_sequence(file)?, cfg.sagitta)?;
            let mut bytes = Vec::new();
            match format {
                MeshFormat::Obj => export_mesh(&model, cfg.sagitta)?.write_obj(&mut bytes)?,
                MeshFormat::Stl => export_mesh(&model, cfg.sagitta)?.write_stl(&mut bytes)?,
                MeshFormat::Xyz => {
                    let pc = sample_surface(&model, *points, default_band(&model), cfg.seed)?;
                    bytes = normalize_points(&pc).to_xyz().into_bytes();
                }
            }
            match out {
                Some(p) => write(p, bytes)?,
                None => std::io::Write::write_all(&mut std::io::stdout(), &bytes)?,
            }
            Ok(true)
        }
        Cmd::Render { file } => {
            let dir = out_dir(cli)?;
            let model = execute(&load_sequence(file)?, cfg.sagitta)?.normalized();
            let mesh = export_mesh(&model, cfg.sagitta)?;
            let cams = camera_ring(
                cfg.n_views,
                cfg.camera_radius,
                &cfg.elevations(),
                cfg.fov(),
                cfg.image_size,
                cfg.image_size,
            )?;
            fs::create_dir_all(dir)?;
            for (i, cam) in cams.iter().enumerate() {
                render(&mesh, cam).save(&dir.join(format!("view_{i:02}.png")))?;
                write(&dir.join(format!("camera_{i:02}.json")), serde_json::to_string_pretty(cam)? + "\n")?;
            }
            info!("rendered {} views", cams.len());
            Ok(true)
        }
        Cmd::Edgemap { image, sigma, t_low, t_high } => {
            let img = GrayImage::load(image)?;
            let edges = edge_map(
                &img,
                sigma.unwrap_or(cfg.sigma),
                t_low.unwrap_or(cfg.t_low),
                t_high.unwrap_or(cfg.t_high),
            )?;
            edges.save(out.context("--out is required")?)?;
            info!("{} edge pixels", edges.count());
            Ok(true)
        }
        Cmd::Bind { proposals, epsilon, loi } => {
            let doc: serde_json::Value = serde_json::from_str(&read(proposals)?)?;
            let (lines, endpoints) = proposals_from_json(&doc)?;
            let wf = bind(&lines, &endpoints, epsilon.unwrap_or(cfg.epsilon));
            let mut json = wf.to_json();
            if *loi {
                let ts = uniform_samples(cfg.t_samples);
                let sets = wf
                    .lines
                    .iter()
                    .map(|l| {
                        let s = loi_points(l, &ts)?;
                        let pts = |v: &[extrudekit::geomkern::Vec2]| v.iter().map(|p| [p.x, p.y]).collect::<Vec<_>>();
                        Ok(serde_json::json!({
                            "endpoints": pts(&s.endpoints),
                            "line": pts(&s.line),
                            "snapped": pts(&s.snapped),
                        }))
                    })
                    .collect::<Result<Vec<_>>>()?;
                json["loi"] = serde_json::Value::Array(sets);
            }
            emit(out, &serde_json::to_string(&json)?)?;
            Ok(true)
        }
        Cmd::Gen { count } => {
            let dir = out_dir(cli)?;
            fs::create_dir_all(dir)?;
            for (i, seq) in generate(*count, cfg.seed, cfg)?.iter().enumerate() {
                write(&dir.join(format!("gen_{i:04}.json")), serialize_json(seq))?;
            }
            Ok(true)
        }
        Cmd::Dedup { dir } => {
            let dest = out_dir(cli)?;
            let mut seqs = Vec::new();
            let mut names = Vec::new();
            let mut unparseable = 0;
            for p in sequence_paths(dir)? {
                match parse_json(&read(&p)?) {
                    Ok(s) => {
                        names.push(p.file_name().expect("file name").to_owned());
                        seqs.push(s);
                    }
                    Err(e) => {
                        warn!("{}: {e}", p.display());
                        unparseable += 1;
                    }
                }
            }
            let d = dedup(&seqs);
            fs::create_dir_all(dest)?;
            for (&i, (seq, _)) in d.kept.iter().zip(&d.sequences) {
                write(&dest.join(&names[i]), serialize_json(seq))?;
            }
            println!(
                "{}",
                serde_json::json!({
                    "kept": d.kept.len(),
                    "invalid": d.invalid,
                    "duplicates": d.duplicates,
                    "unparseable": unparseable,
                })
            );
            Ok(unparseable == 0)
        }
        Cmd::Dataset { dir } => {
            let m = dataset_build(dir, out_dir(cli)?, cfg)?;
            println!("{}", serde_json::to_string(&m.counts)?);
            Ok(m.skipped.is_empty())
        }
        Cmd::Eval { pred, gt } => {
            let report = eval_run(pred, gt, cfg)?;
            emit(out, &(serde_json::to_string_pretty(&report)? + "\n"))?;
            Ok(true)
        }
        Cmd::Loss { logits, gt, lambda } => {
            let logits = Logits::from_json(&read(logits)?)?;
            let tokens = read_prediction(gt)?.context("ground truth is not a valid sequence")?;
            let value = loss(&logits, &tokens, lambda.unwrap_or(cfg.lambda))?;
            emit(out, &serde_json::json!({ "loss": value }).to_string())?;
            Ok(true)
        }
    }
}

fn config(cli: &Cli) -> Result<Config> {
    let mut cfg = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    if let Some(s) = cli.seed {
        cfg.seed = s;
    }
    if let Some(v) = cli.views {
        cfg.n_views = v;
    }
    cfg.check()?;
    Ok(cfg)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match config(&cli).and_then(|cfg| run(&cli, &cfg)) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
