//! Closed 2D regions bounded by loops, with even-odd inside/outside semantics.

use super::curve::{tessellate_loop, Curve, Polyline};
use super::Vec2;
use crate::error::{Error, Result};

/// Points this close to a boundary segment count as inside.
pub const BOUNDARY_TOL: f64 = 1e-9;
/// Loops whose end is this far from their start are rejected at tessellation.
pub const LOOP_CLOSURE_TOL: f64 = 1.0 / 255.0;

#[derive(Clone, Debug, PartialEq)]
pub struct Profile {
    pub loops: Vec<Vec<Curve>>,
}

/// Tessellated profile.
///
/// Loops are re-oriented so the material is on the left of every segment:
/// outer boundaries (even nesting depth) run counter-clockwise and holes run
/// clockwise. Consecutive duplicate and collinear vertices are removed.
#[derive(Clone, Debug)]
pub struct Outline {
    pub loops: Vec<Polyline>,
    /// Nesting depth of each loop: how many other loops enclose it.
    pub depth: Vec<usize>,
    pub min: Vec2,
    pub max: Vec2,
}

impl Outline {
    pub fn new(profile: &Profile, sagitta_tol: f64) -> Result<Self> {
        let mut loops = Vec::with_capacity(profile.loops.len());
        for curves in &profile.loops {
            let poly = simplify(&tessellate_loop(curves, sagitta_tol, LOOP_CLOSURE_TOL)?);
            if poly.segment_count() < 3 {
                return Err(Error::Tessellation("loop encloses no area".into()));
            }
            loops.push(poly);
        }
        if loops.is_empty() {
            return Err(Error::Tessellation("profile has no loops".into()));
        }
        let depth: Vec<usize> = (0..loops.len())
            .map(|i| {
                let probe = loops[i].points[0];
                (0..loops.len())
                    .filter(|&j| j != i && parity_inside(&loops[j], probe))
                    .count()
            })
            .collect();
        for (poly, d) in loops.iter_mut().zip(&depth) {
            let ccw = poly.signed_area() > 0.0;
            if ccw != (d % 2 == 0) {
                *poly = poly.reversed();
            }
        }
        let mut min = Vec2::repeat(f64::INFINITY);
        let mut max = Vec2::repeat(f64::NEG_INFINITY);
        for p in loops.iter().flat_map(|l| l.points.iter()) {
            min = min.inf(p);
            max = max.sup(p);
        }
        Ok(Self {
            loops,
            depth,
            min,
            max,
        })
    }

    /// Even-odd containment; points on the boundary are inside.
    pub fn contains(&self, q: Vec2) -> bool {
        if q.x < self.min.x - BOUNDARY_TOL
            || q.y < self.min.y - BOUNDARY_TOL
            || q.x > self.max.x + BOUNDARY_TOL
            || q.y > self.max.y + BOUNDARY_TOL
        {
            return false;
        }
        let mut inside = false;
        for poly in &self.loops {
            for (a, b) in poly.segments() {
                if segment_distance(q, a, b) <= BOUNDARY_TOL {
                    return true;
                }
                if crosses(q, a, b) {
                    inside = !inside;
                }
            }
        }
        inside
    }

    /// Area enclosed under the even-odd rule.
    pub fn area(&self) -> f64 {
        self.loops.iter().map(Polyline::signed_area).sum()
    }
}

/// Whether the `+x` ray from `q` crosses segment `ab` (half-open in y).
fn crosses(q: Vec2, a: Vec2, b: Vec2) -> bool {
    if (a.y > q.y) == (b.y > q.y) {
        return false;
    }
    let x = a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y);
    q.x < x
}

fn parity_inside(poly: &Polyline, q: Vec2) -> bool {
    poly.segments().filter(|&(a, b)| crosses(q, a, b)).count() % 2 == 1
}

pub(crate) fn segment_distance(q: Vec2, a: Vec2, b: Vec2) -> f64 {
    let ab = b - a;
    let len2 = ab.norm_squared();
    let t = if len2 > 0.0 {
        ((q - a).dot(&ab) / len2).clamp(0.0, 1.0)
    } else {
        0.0
    };
    (a + ab * t - q).norm()
}

fn simplify(poly: &Polyline) -> Polyline {
    let mut pts: Vec<Vec2> = Vec::with_capacity(poly.points.len());
    for &p in poly.vertices() {
        if pts.last().is_none_or(|q| (p - q).norm() > 1e-12) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && (pts[0] - pts[pts.len() - 1]).norm() <= 1e-12 {
        pts.pop();
    }
    // Drop vertices where the boundary continues straight on.
    let mut changed = true;
    while changed && pts.len() > 3 {
        changed = false;
        let n = pts.len();
        for i in 0..n {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let (d1, d2) = (b - a, c - b);
            let cross = d1.x * d2.y - d1.y * d2.x;
            if cross.abs() <= 1e-14 * d1.norm() * d2.norm() && d1.dot(&d2) > 0.0 {
                pts.remove(i);
                changed = true;
                break;
            }
        }
    }
    if let Some(&first) = pts.first() {
        pts.push(first);
    }
    Polyline { points: pts }
}

/// Even-odd point-in-profile test against the tessellated loops.
pub fn point_in_profile(profile: &Profile, q: Vec2, sagitta_tol: f64) -> Result<bool> {
    Ok(Outline::new(profile, sagitta_tol)?.contains(q))
}
