//! Surface sampling that respects boolean composition.
//!
//! Candidates are drawn uniformly by area from every body's untrimmed boundary
//! (caps and side walls). A candidate survives when occupancy differs on the
//! two sides of the surface along its outward normal, which discards faces
//! that were cut away or buried inside another body.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::triangulate::triangulate;
use super::{ExtrusionBody, PointCloud, SolidModel, Vec2, Vec3, DEFAULT_BAND_FRACTION};
use crate::error::{Error, Result};

/// Candidates drawn before giving up on a model that keeps nothing.
pub const MIN_CANDIDATES: usize = 20_000;
/// Additional candidate budget per requested point.
pub const CANDIDATES_PER_POINT: usize = 200;

#[derive(Clone, Copy, Debug)]
pub(crate) enum Patch {
    Triangle { a: Vec3, b: Vec3, c: Vec3, normal: Vec3 },
    /// Rectangle `origin + s·du + t·dv`, `s, t ∈ [0, 1]`.
    Quad { origin: Vec3, du: Vec3, dv: Vec3, normal: Vec3 },
}

impl Patch {
    pub(crate) fn area(&self) -> f64 {
        match self {
            Patch::Triangle { a, b, c, .. } => (b - a).cross(&(c - a)).norm() / 2.0,
            Patch::Quad { du, dv, .. } => du.cross(dv).norm(),
        }
    }

    fn sample(&self, rng: &mut impl Rng) -> (Vec3, Vec3) {
        let (r1, r2): (f64, f64) = (rng.random(), rng.random());
        match *self {
            Patch::Triangle { a, b, c, normal } => {
                let s = r1.sqrt();
                (a * (1.0 - s) + b * (s * (1.0 - r2)) + c * (s * r2), normal)
            }
            Patch::Quad { origin, du, dv, normal } => (origin + du * r1 + dv * r2, normal),
        }
    }
}

/// Boundary patches of one body with outward normals.
pub(crate) fn body_patches(body: &ExtrusionBody) -> Result<Vec<Patch>> {
    let outline = body.outline();
    let frame = &body.frame;
    let (lo, hi) = body.extent();
    let mut out = Vec::new();
    let at = |p: Vec2, w: f64| frame.to_world(p.x, p.y, w);
    for tri in triangulate(outline)? {
        let [a, b, c] = tri.map(|(l, i)| outline.loops[l].points[i]);
        out.push(Patch::Triangle { a: at(a, hi), b: at(b, hi), c: at(c, hi), normal: frame.normal });
        out.push(Patch::Triangle { a: at(a, lo), b: at(c, lo), c: at(b, lo), normal: -frame.normal });
    }
    let height = frame.normal * (hi - lo);
    for poly in &outline.loops {
        for (a, b) in poly.segments() {
            let d = (b - a).normalize();
            // Material is on the left of each segment, so outward is right.
            let normal = frame.plane_direction(d.y, -d.x);
            out.push(Patch::Quad { origin: at(a, lo), du: at(b, lo) - at(a, lo), dv: height, normal });
        }
    }
    Ok(out)
}

/// Survival band: a fixed fraction of the model's bounding-box diagonal.
pub fn default_band(model: &SolidModel) -> f64 {
    DEFAULT_BAND_FRACTION * model.bounding_box().diagonal()
}

/// Draws `n` points on the surface of the composed solid.
pub fn sample_surface(model: &SolidModel, n: usize, band: f64, seed: u64) -> Result<PointCloud> {
    if n == 0 {
        return Err(Error::Argument("sample count must be at least 1".into()));
    }
    if !(band > 0.0) {
        return Err(Error::Argument(format!("band {band} must be positive")));
    }
    let mut patches = Vec::new();
    for body in model.bodies() {
        patches.extend(body_patches(body)?);
    }
    let weights: Vec<f64> = patches.iter().map(Patch::area).collect();
    let dist = WeightedIndex::new(&weights).map_err(|e| Error::Argument(format!("surface weights: {e}")))?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let budget = MIN_CANDIDATES + CANDIDATES_PER_POINT * n;
    let mut points = Vec::with_capacity(n);
    let mut drawn = 0;
    while points.len() < n {
        if drawn >= budget || (drawn >= MIN_CANDIDATES && points.is_empty()) {
            return Err(Error::EmptySurface(drawn));
        }
        drawn += 1;
        let (p, m) = patches[dist.sample(&mut rng)].sample(&mut rng);
        if model.contains(&(p + m * band)) != model.contains(&(p - m * band)) {
            points.push(p);
        }
    }
    Ok(PointCloud::new(points))
}
