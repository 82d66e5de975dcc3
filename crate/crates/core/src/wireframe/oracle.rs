use std::collections::BTreeMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use super::{EndpointProposal, LineProposal};
use crate::error::{Error, Result};
use crate::geomkern::{SolidModel, Vec2, Vec3};
use crate::imaging::Camera;

/// Profile corners turning more than this get a side edge.
pub const SHARP_CORNER_DEG: f64 = 20.0;

/// Synthetic proposals with ground-truth labels.
#[derive(Clone, Debug, Default)]
pub struct OracleProposals {
    pub lines: Vec<LineProposal>,
    pub endpoints: Vec<EndpointProposal>,
    /// Whether each line comes from a model edge (false for clutter).
    pub truth: Vec<bool>,
}

fn key(p: &Vec3) -> [u64; 3] {
    [p.x.to_bits(), p.y.to_bits(), p.z.to_bits()]
}

/// 3D edges of every body: both cap outlines plus side edges at sharp
/// profile corners.
fn model_edges(model: &SolidModel) -> Vec<[Vec3; 2]> {
    let cos_sharp = SHARP_CORNER_DEG.to_radians().cos();
    let mut edges = Vec::new();
    for body in model.bodies() {
        let (lo, hi) = body.extent();
        let f = &body.frame;
        for poly in &body.outline().loops {
            let v = poly.vertices();
            let n = poly.segment_count();
            for w in [lo, hi] {
                for i in 0..n {
                    let (a, b) = (v[i], v[(i + 1) % n]);
                    edges.push([f.to_world(a.x, a.y, w), f.to_world(b.x, b.y, w)]);
                }
            }
            for i in 0..n {
                let d0 = (v[i] - v[(i + n - 1) % n]).normalize();
                let d1 = (v[(i + 1) % n] - v[i]).normalize();
                if d0.dot(&d1) < cos_sharp {
                    edges.push([f.to_world(v[i].x, v[i].y, lo), f.to_world(v[i].x, v[i].y, hi)]);
                }
            }
        }
    }
    edges
}

/// Projects model edges through `camera` into line and junction proposals.
/// Each line endpoint and each junction gets independent Gaussian jitter,
/// true lines are dropped with probability `drop_rate`, and `clutter`
/// uniformly random false lines are appended. Edges with an endpoint behind
/// the camera or outside the image are skipped, as are edges that project to
/// a single pixel position.
pub fn oracle_proposals(
    model: &SolidModel,
    camera: &Camera,
    jitter_sigma: f64,
    drop_rate: f64,
    clutter: usize,
    seed: u64,
) -> Result<OracleProposals> {
    camera.check()?;
    if !(jitter_sigma >= 0.0 && jitter_sigma.is_finite()) {
        return Err(Error::Argument(format!("jitter {jitter_sigma} must be non-negative")));
    }
    if !(0.0..1.0).contains(&drop_rate) {
        return Err(Error::Argument(format!("drop rate {drop_rate} outside [0, 1)")));
    }
    let basis = camera.basis();
    let (w, h) = (f64::from(camera.width), f64::from(camera.height));
    let in_image = |p: &Vec2| p.x >= 0.0 && p.y >= 0.0 && p.x <= w && p.y <= h;

    let mut junctions: BTreeMap<[u64; 3], usize> = BTreeMap::new();
    let mut pixels: Vec<Vec2> = Vec::new();
    let mut true_lines: Vec<(usize, usize)> = Vec::new();
    for [a, b] in model_edges(model) {
        let (Some((pa, _)), Some((pb, _))) = (basis.project(&a), basis.project(&b)) else {
            continue;
        };
        if !in_image(&pa) || !in_image(&pb) || pa == pb {
            continue;
        }
        let mut id = |p: &Vec3, px: Vec2| {
            *junctions.entry(key(p)).or_insert_with(|| {
                pixels.push(px);
                pixels.len() - 1
            })
        };
        let (ia, ib) = (id(&a, pa), id(&b, pb));
        true_lines.push((ia, ib));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let noise = Normal::new(0.0, jitter_sigma).map_err(|e| Error::Argument(e.to_string()))?;
    let jitter = |rng: &mut ChaCha8Rng, p: Vec2| {
        if jitter_sigma == 0.0 {
            p
        } else {
            p + Vec2::new(noise.sample(rng), noise.sample(rng))
        }
    };

    let mut out = OracleProposals::default();
    for (ia, ib) in true_lines {
        let keep = rng.random::<f64>() >= drop_rate;
        let x1 = jitter(&mut rng, pixels[ia]);
        let x2 = jitter(&mut rng, pixels[ib]);
        if keep && x1 != x2 {
            out.lines.push(LineProposal { x1, x2 });
            out.truth.push(true);
        }
    }
    for &p in &pixels {
        let q = jitter(&mut rng, p);
        out.endpoints.push(EndpointProposal {
            position: Vec2::new(q.x.clamp(0.0, w), q.y.clamp(0.0, h)),
            score: 1.0,
        });
    }
    while out.truth.iter().filter(|t| !**t).count() < clutter {
        let x1 = Vec2::new(rng.random::<f64>() * w, rng.random::<f64>() * h);
        let x2 = Vec2::new(rng.random::<f64>() * w, rng.random::<f64>() * h);
        if x1 != x2 {
            out.lines.push(LineProposal { x1, x2 });
            out.truth.push(false);
        }
    }
    Ok(out)
}
