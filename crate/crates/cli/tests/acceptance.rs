//! Acceptance suite. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails.
//!
//! cargo test -p extrudekit-cli --test acceptance -- --nocapture

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::process::Command as Process;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use extrudekit::geomkern::{estimate_volume, execute, Aabb, PointCloud, Vec2, Vec3, DEFAULT_SAGITTA};
use extrudekit::imaging::{edge_map, render, Camera, GrayImage};
use extrudekit::metrics::{chamfer, loss, loss_and_grad, DEFAULT_LAMBDA};
use extrudekit::pipeline::DatasetManifest;
use extrudekit::seqmodel::{
    dequantize, parse_json, quantize, serialize_json, BooleanOp, CadSequence, Command, CommandType,
    ExtentKind, Extrusion, Logits, ParamSlot, TokenMatrix, TokenRow, UNUSED,
};
use extrudekit::wireframe::{bind, oracle_proposals, EndpointProposal, LineProposal};
use extrudekit::TriangleMesh;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome { pass, detail: detail.into() }
}

fn bin() -> &'static str {
    env!("CARGO_BIN_EXE_extrudekit")
}

fn run_cli(args: &[&str]) -> (i32, String) {
    let out = Process::new(bin()).args(args).output().expect("spawn cli");
    if !out.status.success() {
        eprintln!("{}", String::from_utf8_lossy(&out.stderr));
    }
    (out.status.code().unwrap_or(-1), String::from_utf8_lossy(&out.stdout).into_owned())
}

// 1. Round trips.

fn random_extrusion(rng: &mut ChaCha8Rng, first: bool) -> Extrusion {
    let mut v = || rng.random::<f64>();
    let (theta, phi, gamma, px, py, pz, scale, e1, e2) = (v(), v(), v(), v(), v(), v(), v(), v(), v());
    Extrusion {
        theta,
        phi,
        gamma,
        px,
        py,
        pz,
        scale,
        e1,
        e2,
        op: if first { BooleanOp::NewBody } else { BooleanOp::from_code(rng.random_range(0..4)).unwrap() },
        kind: ExtentKind::from_code(rng.random_range(0..3)).unwrap(),
    }
}

/// Grammar-valid sequence with arbitrary continuous values.
fn random_sequence(rng: &mut ChaCha8Rng) -> CadSequence {
    let mut cmds = Vec::new();
    for b in 0..rng.random_range(1..=4) {
        for _ in 0..rng.random_range(1..=2) {
            cmds.push(Command::Sol);
            if rng.random_bool(0.3) {
                cmds.push(Command::Circle { x: rng.random(), y: rng.random(), r: rng.random() });
            } else {
                for _ in 0..rng.random_range(1..=4) {
                    if rng.random_bool(0.5) {
                        cmds.push(Command::Line { x: rng.random(), y: rng.random() });
                    } else {
                        cmds.push(Command::Arc { x: rng.random(), y: rng.random(), sweep: rng.random(), ccw: rng.random() });
                    }
                }
            }
        }
        cmds.push(Command::Extrude(random_extrusion(rng, b == 0)));
    }
    cmds.push(Command::Eos);
    CadSequence::new(cmds)
}

fn criterion_round_trip() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let seqs: Vec<CadSequence> = (0..1000).map(|_| random_sequence(&mut rng)).collect();
    let mut worst: f64 = 0.0;
    for s in &seqs {
        let text = serialize_json(s);
        let back = match parse_json(&text) {
            Ok(b) => b,
            Err(e) => return outcome(false, format!("parse failed: {e}")),
        };
        if &back != s || serialize_json(&back) != text {
            return outcome(false, "parse∘serialize is not the identity");
        }
        let d = match quantize(s).and_then(|t| dequantize(&t)) {
            Ok(d) => d,
            Err(e) => return outcome(false, format!("quantize round trip failed: {e}")),
        };
        if d.len() != s.len() {
            return outcome(false, "dequantized length differs");
        }
        for (a, b) in s.commands().iter().zip(d.commands()) {
            if a.kind() != b.kind() {
                return outcome(false, "command type changed");
            }
            for slot in ParamSlot::ALL {
                let (x, y) = (a.slots()[slot.index()], b.slots()[slot.index()]);
                match (x, y) {
                    (Some(x), Some(y)) if slot.is_discrete() => {
                        if x != y {
                            return outcome(false, "discrete slot changed");
                        }
                    }
                    (Some(x), Some(y)) => worst = worst.max((x - y).abs()),
                    (None, None) => {}
                    _ => return outcome(false, "slot usage changed"),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let bound = 1.0 / 510.0 + 1e-12;
    outcome(
        worst <= bound && elapsed < Duration::from_secs(5),
        format!("1000 sequences, max |Δ| = {worst:.3e} (bound {bound:.3e}), {elapsed:.2?}"),
    )
}

// 2. Volumes.

fn extrusion(origin: [f64; 3], scale: f64, e1: f64, op: BooleanOp) -> Command {
    Command::Extrude(Extrusion {
        theta: 0.0,
        phi: 0.0,
        gamma: 0.0,
        px: (origin[0] + 1.0) / 2.0,
        py: (origin[1] + 1.0) / 2.0,
        pz: (origin[2] + 1.0) / 2.0,
        scale,
        e1,
        e2: 0.0,
        op,
        kind: ExtentKind::OneSided,
    })
}

fn unit_square() -> Vec<Command> {
    vec![
        Command::Sol,
        Command::Line { x: 1.0, y: 0.0 },
        Command::Line { x: 1.0, y: 1.0 },
        Command::Line { x: 0.0, y: 1.0 },
        Command::Line { x: 0.0, y: 0.0 },
    ]
}

fn seq(parts: Vec<Vec<Command>>) -> CadSequence {
    let mut cmds: Vec<Command> = parts.into_iter().flatten().collect();
    cmds.push(Command::Eos);
    CadSequence::new(cmds)
}

fn criterion_volumes() -> Outcome {
    let start = Instant::now();
    let cube = |op| [unit_square(), vec![extrusion([0.0; 3], 1.0, 1.0, op)]].concat();
    let cases = [
        (
            "cylinder",
            seq(vec![
                vec![Command::Sol, Command::Circle { x: 0.5, y: 0.5, r: 0.4 }],
                vec![extrusion([0.0; 3], 1.0, 0.6, BooleanOp::NewBody)],
            ]),
            std::f64::consts::PI * 0.16 * 0.6,
        ),
        (
            "box",
            seq(vec![unit_square(), vec![extrusion([0.0; 3], 1.0, 0.5, BooleanOp::NewBody)]]),
            0.5,
        ),
        (
            "box-minus-box",
            seq(vec![
                cube(BooleanOp::NewBody),
                unit_square(),
                vec![extrusion([0.25, 0.25, 0.5], 0.5, 1.0, BooleanOp::Cut)],
            ]),
            1.0 - 0.125,
        ),
        (
            "box-intersect-box",
            seq(vec![
                cube(BooleanOp::NewBody),
                unit_square(),
                vec![extrusion([0.5, 0.5, 0.5], 1.0, 1.0, BooleanOp::Intersect)],
            ]),
            0.125,
        ),
    ];
    let mut pass = true;
    let mut parts = Vec::new();
    for (name, s, exact) in cases {
        let model = match execute(&s, DEFAULT_SAGITTA) {
            Ok(m) => m,
            Err(e) => return outcome(false, format!("{name}: {e}")),
        };
        // Box around every body, so the estimate does not lean on the
        // model's own bounds.
        let bounds = Aabb::new(Vec3::repeat(-0.5), Vec3::repeat(2.0));
        let v = estimate_volume(&model, &bounds, 1_000_000, 17);
        let rel = (v - exact).abs() / exact;
        pass &= rel <= 0.02;
        parts.push(format!("{name} {rel:.2e}"));
    }
    let elapsed = start.elapsed();
    outcome(
        pass && elapsed < Duration::from_secs(30),
        format!("relative errors: {}; {elapsed:.2?}", parts.join(", ")),
    )
}

// 3. Chamfer.

fn brute_chamfer(a: &[Vec3], b: &[Vec3]) -> f64 {
    let side = |x: &[Vec3], y: &[Vec3]| {
        x.iter()
            .map(|p| y.iter().map(|q| (p - q).norm_squared()).fold(f64::INFINITY, f64::min))
            .sum::<f64>()
            / x.len() as f64
    };
    side(a, b) + side(b, a)
}

fn random_cloud(rng: &mut ChaCha8Rng, n: usize) -> Vec<Vec3> {
    (0..n)
        .map(|_| Vec3::new(rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5), rng.random_range(-0.5..0.5)))
        .collect()
}

fn criterion_chamfer() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..100 {
        let (n, m) = (rng.random_range(1..=200), rng.random_range(1..=200));
        let (a, b) = (random_cloud(&mut rng, n), random_cloud(&mut rng, m));
        let (pa, pb) = (PointCloud::new(a.clone()), PointCloud::new(b.clone()));
        let ab = chamfer(&pa, &pb).unwrap();
        if ab != chamfer(&pb, &pa).unwrap() {
            return outcome(false, "asymmetric");
        }
        if chamfer(&pa, &pa).unwrap() != 0.0 {
            return outcome(false, "CD(a, a) != 0");
        }
        worst = worst.max((ab - brute_chamfer(&a, &b)).abs());
    }
    let (a, b) = (PointCloud::new(random_cloud(&mut rng, 2000)), PointCloud::new(random_cloud(&mut rng, 2000)));
    let start = Instant::now();
    chamfer(&a, &b).unwrap();
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-12 && elapsed < Duration::from_secs(1),
        format!("max |index − brute| = {worst:.1e} over 100 pairs; 2000×2000 in {elapsed:.2?}"),
    )
}

// 4. Self-evaluation through the CLI.

fn criterion_self_eval(gt: &Path, work: &Path) -> Outcome {
    let report_path = work.join("report.json");
    let (code, _) = run_cli(&["eval", path(gt), path(gt), "--out", path(&report_path)]);
    if code != 0 {
        return outcome(false, format!("eval exited with {code}"));
    }
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&report_path).unwrap()).unwrap();
    let cd = r["cd"].as_f64().unwrap_or(f64::INFINITY);
    let pass = r["cmd_acc"] == 1.0
        && r["param_acc"] == 1.0
        && r["invalid_ratio"] == 0.0
        && cd < 1e-6
        && r["counts"]["sequences"] == 50;
    outcome(
        pass,
        format!(
            "cmd_acc={} param_acc={} invalid_ratio={} cd={cd:e} over {} pairs",
            r["cmd_acc"], r["param_acc"], r["invalid_ratio"], r["counts"]["valid_pairs"]
        ),
    )
}

// 5. Binding.

fn criterion_binding() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let pt = |rng: &mut ChaCha8Rng| Vec2::new(rng.random_range(0.0..512.0), rng.random_range(0.0..512.0));
    for _ in 0..100 {
        let lines: Vec<LineProposal> = (0..rng.random_range(1..60))
            .map(|_| LineProposal { x1: pt(&mut rng), x2: pt(&mut rng) })
            .collect();
        let endpoints: Vec<EndpointProposal> = (0..rng.random_range(1..40))
            .map(|_| EndpointProposal { position: pt(&mut rng), score: rng.random() })
            .collect();
        let mut eps: Vec<f64> = (0..8).map(|_| rng.random_range(0.0..2000.0)).collect();
        eps.sort_by(f64::total_cmp);
        let mut prev: Vec<usize> = Vec::new();
        for e in eps {
            let kept: Vec<usize> = bind(&lines, &endpoints, e).lines.iter().map(|l| l.source).collect();
            if !prev.iter().all(|p| kept.contains(p)) {
                return outcome(false, "kept set shrank as ε grew");
            }
            prev = kept;
        }
    }

    let example = bind(
        &[LineProposal { x1: Vec2::new(10.0, 10.0), x2: Vec2::new(50.0, 10.0) }],
        &[
            EndpointProposal { position: Vec2::new(11.0, 10.0), score: 1.0 },
            EndpointProposal { position: Vec2::new(50.0, 13.0), score: 1.0 },
        ],
        25.0,
    );
    let l = example.lines.first();
    if !l.is_some_and(|l| (l.delta1, l.delta2, l.delta) == (1.0, 9.0, 9.0)) {
        return outcome(false, "worked example mismatch");
    }

    let models = [
        seq(vec![unit_square(), vec![extrusion([-0.5; 3], 1.0, 1.0, BooleanOp::NewBody)]]),
        seq(vec![
            unit_square(),
            vec![Command::Sol, Command::Circle { x: 0.5, y: 0.5, r: 0.25 }],
            vec![extrusion([-0.5, -0.5, -0.2], 1.0, 0.4, BooleanOp::NewBody)],
        ]),
    ];
    let mut scenes = 0;
    for m in &models {
        let model = execute(m, DEFAULT_SAGITTA).unwrap();
        for (k, eye) in [[2.5, 1.0, 1.5], [-1.0, 2.2, 1.9], [0.3, -2.4, 1.2]].iter().enumerate() {
            let cam = Camera::new(Vec3::from(*eye), Vec3::zeros(), Vec3::z(), 0.9, 512, 512).unwrap();
            let p = oracle_proposals(&model, &cam, 0.0, 0.0, 0, k as u64).unwrap();
            for e in [1e-9, 1.0, 4.0, 1e6] {
                let kept = bind(&p.lines, &p.endpoints, e).lines;
                let tp = kept.iter().filter(|l| p.truth[l.source]).count();
                let positives = p.truth.iter().filter(|t| **t).count();
                if positives == 0 || tp != kept.len() || tp != positives {
                    return outcome(false, format!("noiseless recovery failed at ε={e}"));
                }
            }
            scenes += 1;
        }
    }
    outcome(true, format!("100 random scenes monotone; worked example δ=(1, 9, 9); {scenes} noiseless scenes recovered exactly"))
}

// 6. Edges.

fn criterion_edges() -> Outcome {
    let size = 160u32;
    // Square in the x = 0 plane facing away from a camera on +x: it renders black.
    let h = 0.37;
    let mesh = TriangleMesh {
        vertices: vec![
            Vec3::new(0.0, -h, -h),
            Vec3::new(0.0, h, -h),
            Vec3::new(0.0, h, h),
            Vec3::new(0.0, -h, h),
        ],
        triangles: vec![[0, 2, 1], [0, 3, 2]],
    };
    let cam = Camera::new(Vec3::new(2.0, 0.0, 0.0), Vec3::zeros(), Vec3::z(), 0.8, size, size).unwrap();
    let img = render(&mesh, &cam);
    let basis = cam.basis();
    let corners: Vec<Vec2> = mesh.vertices.iter().map(|v| basis.project(v).unwrap().0).collect();
    let (x0, x1) = (corners.iter().map(|c| c.x).fold(f64::INFINITY, f64::min), corners.iter().map(|c| c.x).fold(0.0, f64::max));
    let (y0, y1) = (corners.iter().map(|c| c.y).fold(f64::INFINITY, f64::min), corners.iter().map(|c| c.y).fold(0.0, f64::max));
    if img.get(size as usize / 2, size as usize / 2) != 0.0 || img.get(2, 2) != 1.0 {
        return outcome(false, "square did not render black on white");
    }
    let edges = edge_map(&img, 1.4, 0.05, 0.15).unwrap();
    let dist = |p: Vec2| {
        let dx = (x0 - p.x).max(p.x - x1).max(0.0);
        let dy = (y0 - p.y).max(p.y - y1).max(0.0);
        if dx > 0.0 || dy > 0.0 {
            dx.hypot(dy)
        } else {
            (p.x - x0).min(x1 - p.x).min(p.y - y0).min(y1 - p.y)
        }
    };
    let pixels: Vec<Vec2> = edges.pixels().map(|(x, y)| Vec2::new(x as f64 + 0.5, y as f64 + 0.5)).collect();
    let near = pixels.iter().filter(|p| dist(**p) <= 1.0).count() as f64 / pixels.len().max(1) as f64;

    let mut boundary = Vec::new();
    let steps = ((x1 - x0).max(y1 - y0)).ceil() as usize;
    for i in 0..=steps {
        let t = i as f64 / steps as f64;
        let (x, y) = (x0 + t * (x1 - x0), y0 + t * (y1 - y0));
        boundary.extend([Vec2::new(x, y0), Vec2::new(x, y1), Vec2::new(x0, y), Vec2::new(x1, y)]);
    }
    let covered = boundary
        .iter()
        .filter(|b| pixels.iter().any(|p| (*p - **b).norm() <= 1.0))
        .count() as f64
        / boundary.len() as f64;

    let constant = edge_map(&GrayImage::filled(64, 64, 0.4), 1.4, 0.05, 0.15).unwrap().count();
    outcome(
        near >= 0.9 && covered >= 0.9 && constant == 0,
        format!(
            "{} edge pixels, {:.1}% within 1 px, {:.1}% of boundary covered; constant image {constant} edges",
            pixels.len(),
            100.0 * near,
            100.0 * covered
        ),
    )
}

// 7. Loss.

fn token_rows(rows: Vec<TokenRow>) -> TokenMatrix {
    TokenMatrix::new(rows)
}

fn row(kind: CommandType, params: &[(ParamSlot, i16)]) -> TokenRow {
    let mut r = TokenRow { type_index: kind.index() as u8, params: [UNUSED; 16] };
    for (s, v) in params {
        r.params[s.index()] = *v;
    }
    r
}

fn criterion_loss() -> Outcome {
    let mut notes = Vec::new();
    // Uniform logits over rows without parameters.
    let gt = token_rows(vec![row(CommandType::Sol, &[]), TokenRow::EOS, TokenRow::EOS]);
    let l = loss(&Logits::zeros(3), &gt, 2.0).unwrap();
    let per_row_ok = (l - 2.0 * 6f64.ln()).abs() <= 1e-6;
    notes.push(format!("uniform {:.9}/row", l / 2.0));

    let gt = token_rows(vec![
        row(CommandType::Sol, &[]),
        row(CommandType::Line, &[(ParamSlot::X, 12), (ParamSlot::Y, 200)]),
        row(CommandType::Circle, &[(ParamSlot::X, 1), (ParamSlot::Y, 2), (ParamSlot::R, 3)]),
        TokenRow::EOS,
        TokenRow::EOS,
    ]);
    let full = loss(&Logits::zeros(5), &gt, 2.0).unwrap();
    let expected = 4.0 * 6f64.ln() + 2.0 * 5.0 * 256f64.ln();
    let uniform_ok = (full - expected).abs() <= 1e-6;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut logits = Logits::zeros(5);
    logits.cmd_mut().iter_mut().for_each(|v| *v = rng.random_range(-3.0..3.0));
    logits.param_mut().iter_mut().for_each(|v| *v = rng.random_range(-3.0..3.0));
    let (base, grad) = loss_and_grad(&logits, &gt, 2.0).unwrap();
    let h = 1e-5;
    let mut worst: f64 = 0.0;
    for i in 0..logits.cmd().len() {
        let mut p = logits.clone();
        p.cmd_mut()[i] += h;
        let mut m = logits.clone();
        m.cmd_mut()[i] -= h;
        let num = (loss(&p, &gt, 2.0).unwrap() - loss(&m, &gt, 2.0).unwrap()) / (2.0 * h);
        let ana = grad.cmd()[i];
        if ana.abs() > 1e-6 || num.abs() > 1e-6 {
            worst = worst.max((num - ana).abs() / ana.abs().max(num.abs()));
        }
    }
    for _ in 0..400 {
        let i = rng.random_range(0..logits.param().len());
        let mut p = logits.clone();
        p.param_mut()[i] += h;
        let mut m = logits.clone();
        m.param_mut()[i] -= h;
        let num = (loss(&p, &gt, 2.0).unwrap() - loss(&m, &gt, 2.0).unwrap()) / (2.0 * h);
        let ana = grad.param()[i];
        if ana.abs() > 1e-6 || num.abs() > 1e-6 {
            worst = worst.max((num - ana).abs() / ana.abs().max(num.abs()));
        }
    }
    let grad_ok = worst <= 1e-4;
    notes.push(format!("max FD rel err {worst:.1e}"));

    // Unused slots of used rows and every slot of excluded rows.
    let mut masked = logits.clone();
    masked.param_slot_mut(1, ParamSlot::Theta.index())[9] += 40.0;
    masked.param_slot_mut(0, ParamSlot::X.index())[0] -= 13.0;
    masked.cmd_row_mut(4)[1] += 5.0;
    let mask_ok = loss(&masked, &gt, 2.0).unwrap().to_bits() == base.to_bits();

    let zero = loss(&logits, &gt, 0.0).unwrap();
    let one = loss(&logits, &gt, 1.0).unwrap();
    let lambda_ok = DEFAULT_LAMBDA == 2.0 && ((base - zero) - 2.0 * (one - zero)).abs() <= 1e-9 * base;
    notes.push(format!("λ = {DEFAULT_LAMBDA}"));

    outcome(
        per_row_ok && uniform_ok && grad_ok && mask_ok && lambda_ok,
        format!(
            "{}; masked perturbation bit-identical: {mask_ok}; uniform with params: {uniform_ok}",
            notes.join(", ")
        ),
    )
}

// 8. Dataset smoke run.

fn files(root: &Path) -> BTreeMap<PathBuf, Vec<u8>> {
    let mut out = BTreeMap::new();
    let mut stack = vec![root.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in std::fs::read_dir(&d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else {
                out.insert(p.strip_prefix(root).unwrap().to_path_buf(), std::fs::read(&p).unwrap());
            }
        }
    }
    out
}

fn criterion_dataset(seqs: &Path, work: &Path) -> Outcome {
    let (a, b) = (work.join("ds_a"), work.join("ds_b"));
    let start = Instant::now();
    let (code, stdout) = run_cli(&["dataset", path(seqs), "--out", path(&a), "--views", "36", "--seed", "11"]);
    let elapsed = start.elapsed();
    if code != 0 {
        return outcome(false, format!("dataset exited with {code}: {stdout}"));
    }
    let manifest = DatasetManifest::load(&a).unwrap();
    let c = &manifest.counts;
    let complete = c.built == 50 && c.skipped == 0 && c.views == 50 * 36 && manifest.verify(&a).is_empty();
    let (code_b, _) = run_cli(&["dataset", path(seqs), "--out", path(&b), "--views", "36", "--seed", "11"]);
    let (fa, fb) = (files(&a), files(&b));
    let identical = code_b == 0 && fa == fb;
    outcome(
        complete && identical && elapsed < Duration::from_secs(600),
        format!(
            "{} models, {} views, {} skipped, {} files, rerun identical: {identical}, first run {elapsed:.1?}",
            c.built,
            c.views,
            c.skipped,
            fa.len()
        ),
    )
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn acceptance() {
    let work = tempfile::tempdir().unwrap();
    let seqs = work.path().join("gt");
    let (code, _) = run_cli(&["gen", "50", "--seed", "2024", "--out", path(&seqs)]);
    assert_eq!(code, 0, "sequence generation failed");

    let results = [
        ("1 round trip", criterion_round_trip()),
        ("2 geometry volumes", criterion_volumes()),
        ("3 chamfer", criterion_chamfer()),
        ("4 self-evaluation", criterion_self_eval(&seqs, work.path())),
        ("5 binding", criterion_binding()),
        ("6 edge pipeline", criterion_edges()),
        ("7 loss", criterion_loss()),
        ("8 dataset smoke", criterion_dataset(&seqs, work.path())),
    ];
    println!();
    for (name, o) in &results {
        println!("[{}] criterion {name}: {}", if o.pass { "PASS" } else { "FAIL" }, o.detail);
    }
    let failed: Vec<&str> = results.iter().filter(|(_, o)| !o.pass).map(|(n, _)| *n).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
