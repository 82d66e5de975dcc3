//! Random valid sequences on the quantization grid.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{token_digest, Config};
use crate::error::{Error, Result};
use crate::geomkern::{default_band, execute, export_mesh, sample_surface};
use crate::seqmodel::{quantize, validate, BooleanOp, CadSequence, Command, ExtentKind, Extrusion};

const ATTEMPTS: usize = 1000;
const PROBE_POINTS: usize = 64;

fn grid(k: i32) -> f64 {
    f64::from(k) / 255.0
}

fn cross(o: (i32, i32), a: (i32, i32), b: (i32, i32)) -> i64 {
    i64::from(a.0 - o.0) * i64::from(b.1 - o.1) - i64::from(a.1 - o.1) * i64::from(b.0 - o.0)
}

/// Vertices (in tokens) of a strictly convex counter-clockwise polygon
/// starting at the origin.
fn convex_polygon(rng: &mut ChaCha8Rng, n: usize) -> Option<Vec<(i32, i32)>> {
    let a = rng.random_range(60..=255);
    let verts = match n {
        3 => vec![(0, 0), (a, 0), (rng.random_range(0..=255), rng.random_range(60..=255))],
        _ => vec![
            (0, 0),
            (a, 0),
            (rng.random_range(40..=255), rng.random_range(40..=255)),
            (rng.random_range(0..=a.min(200)), rng.random_range(60..=255)),
        ],
    };
    let m = verts.len();
    (0..m)
        .all(|i| cross(verts[i], verts[(i + 1) % m], verts[(i + 2) % m]) > 0)
        .then_some(verts)
}

/// One closed loop of `n` curves (a lone circle for `n = 1`), with the
/// polygon vertices for `n >= 3`.
fn outer_loop(rng: &mut ChaCha8Rng, n: usize) -> Option<(Vec<Command>, Vec<(i32, i32)>)> {
    let mut cmds = vec![Command::Sol];
    match n {
        1 => {
            let r = rng.random_range(40..=120);
            let (x, y) = (rng.random_range(r..=255), rng.random_range(r..=255));
            cmds.push(Command::Circle { x: grid(x), y: grid(y), r: grid(r) });
            Some((cmds, Vec::new()))
        }
        2 => {
            // A chord closed by an arc.
            let a = rng.random_range(60..=255);
            cmds.push(Command::Line { x: grid(a), y: 0.0 });
            cmds.push(Command::Arc { x: 0.0, y: 0.0, sweep: grid(rng.random_range(64..=160)), ccw: false });
            Some((cmds, Vec::new()))
        }
        _ => {
            let poly = convex_polygon(rng, n)?;
            for i in 0..poly.len() {
                let (x, y) = poly[(i + 1) % poly.len()];
                if rng.random_bool(0.25) {
                    // Bulges outward of the counter-clockwise polygon.
                    cmds.push(Command::Arc { x: grid(x), y: grid(y), sweep: grid(rng.random_range(16..=64)), ccw: true });
                } else {
                    cmds.push(Command::Line { x: grid(x), y: grid(y) });
                }
            }
            Some((cmds, poly))
        }
    }
}

/// Squared distance in tokens from `p` to segment `ab`.
fn seg_dist2(p: (i32, i32), a: (i32, i32), b: (i32, i32)) -> f64 {
    let (px, py) = (f64::from(p.0), f64::from(p.1));
    let (ax, ay, bx, by) = (f64::from(a.0), f64::from(a.1), f64::from(b.0), f64::from(b.1));
    let (dx, dy) = (bx - ax, by - ay);
    let t = (((px - ax) * dx + (py - ay) * dy) / (dx * dx + dy * dy)).clamp(0.0, 1.0);
    (px - ax - t * dx).powi(2) + (py - ay - t * dy).powi(2)
}

/// A circle strictly inside the convex polygon `poly`, if one fits.
fn hole(rng: &mut ChaCha8Rng, poly: &[(i32, i32)]) -> Option<Command> {
    let r = rng.random_range(8..=40);
    let xs = poly.iter().map(|p| p.0);
    let ys = poly.iter().map(|p| p.1);
    let (x0, x1) = (xs.clone().min()?, xs.max()?);
    let (y0, y1) = (ys.clone().min()?, ys.max()?);
    let c = (rng.random_range(x0..=x1), rng.random_range(y0..=y1));
    let m = poly.len();
    let inside = (0..m).all(|i| cross(poly[i], poly[(i + 1) % m], c) > 0);
    let clear = (0..m).all(|i| seg_dist2(c, poly[i], poly[(i + 1) % m]).sqrt() > f64::from(r) + 6.0);
    (inside && clear).then(|| Command::Circle { x: grid(c.0), y: grid(c.1), r: grid(r) })
}

fn extrusion(rng: &mut ChaCha8Rng, first: bool) -> Extrusion {
    // Mostly axis-aligned sketch planes, like typical mechanical parts.
    let (theta, phi) = match rng.random_range(0..4) {
        0 => (0, 0),
        1 => (128, 0),
        2 => (128, 64),
        _ => (rng.random_range(0..=255), rng.random_range(0..=255)),
    };
    let op = if first {
        BooleanOp::NewBody
    } else {
        match rng.random_range(0..20) {
            0..=9 => BooleanOp::Join,
            10..=16 => BooleanOp::Cut,
            _ => BooleanOp::Intersect,
        }
    };
    let kind = match rng.random_range(0..3) {
        0 => ExtentKind::OneSided,
        1 => ExtentKind::Symmetric,
        _ => ExtentKind::TwoSided,
    };
    let e2 = if kind == ExtentKind::TwoSided { rng.random_range(10..=120) } else { 0 };
    Extrusion {
        theta: grid(theta),
        phi: grid(phi),
        gamma: grid(if rng.random_bool(0.7) { 0 } else { rng.random_range(0..=255) }),
        px: grid(rng.random_range(100..=155)),
        py: grid(rng.random_range(100..=155)),
        pz: grid(rng.random_range(100..=155)),
        scale: grid(rng.random_range(100..=255)),
        e1: grid(rng.random_range(20..=200)),
        e2: grid(e2),
        op,
        kind,
    }
}

fn candidate(rng: &mut ChaCha8Rng, cfg: &Config) -> Option<CadSequence> {
    let bodies = rng.random_range(1..=cfg.gen_max_bodies);
    let mut cmds = Vec::new();
    for b in 0..bodies {
        let curves = rng.random_range(1..=cfg.gen_max_curves);
        let (outer, poly) = outer_loop(rng, curves)?;
        cmds.extend(outer);
        if curves >= 3 && rng.random_bool(0.3) {
            if let Some(c) = hole(rng, &poly) {
                cmds.push(Command::Sol);
                cmds.push(c);
            }
        }
        cmds.push(Command::Extrude(extrusion(rng, b == 0)));
    }
    cmds.push(Command::Eos);
    Some(CadSequence::new(cmds))
}

/// Checks that a sequence validates, executes, meshes and has a surface.
pub fn check_generated(seq: &CadSequence, cfg: &Config) -> Result<()> {
    let report = validate(seq);
    if let Some(f) = report.failures.first() {
        return Err(Error::Grammar { index: f.index, message: f.message.clone() });
    }
    let model = execute(seq, cfg.sagitta)?;
    export_mesh(&model, cfg.sagitta)?;
    sample_surface(&model, PROBE_POINTS, default_band(&model), 0)?;
    Ok(())
}

/// One valid sequence drawn from `rng`.
pub fn generate_sequence(rng: &mut ChaCha8Rng, cfg: &Config) -> Result<CadSequence> {
    for _ in 0..ATTEMPTS {
        if let Some(seq) = candidate(rng, cfg) {
            if check_generated(&seq, cfg).is_ok() {
                return Ok(seq);
            }
        }
    }
    Err(Error::Argument(format!("no valid sequence after {ATTEMPTS} attempts")))
}

/// `n` distinct valid sequences. Sequence `i` comes from stream `i` of the
/// seeded generator, so prefixes agree across different `n`.
pub fn generate(n: usize, seed: u64, cfg: &Config) -> Result<Vec<CadSequence>> {
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::with_capacity(n);
    for i in 0..n {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(i as u64);
        loop {
            let seq = generate_sequence(&mut rng, cfg)?;
            if seen.insert(token_digest(&quantize(&seq)?)) {
                out.push(seq);
                break;
            }
        }
    }
    Ok(out)
}
