//! Sketch curves and their tessellation.

use std::f64::consts::TAU;

use super::Vec2;
use crate::error::{Error, Result};

/// Minimum chord length for arcs and lines.
const CHORD_EPS: f64 = 1e-12;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Curve {
    Line {
        start: Vec2,
        end: Vec2,
    },
    /// `sweep` in radians, in `(0, 2π)`.
    Arc {
        start: Vec2,
        end: Vec2,
        sweep: f64,
        ccw: bool,
    },
    Circle {
        center: Vec2,
        radius: f64,
    },
}

impl Curve {
    pub fn start(&self) -> Vec2 {
        match *self {
            Curve::Line { start, .. } | Curve::Arc { start, .. } => start,
            Curve::Circle { center, radius } => center + Vec2::new(radius, 0.0),
        }
    }

    pub fn end(&self) -> Vec2 {
        match *self {
            Curve::Line { end, .. } | Curve::Arc { end, .. } => end,
            Curve::Circle { .. } => self.start(),
        }
    }
}

/// Center and radius of the arc from `start` to `end` that subtends `sweep`
/// radians, turning counter-clockwise when `ccw` is set.
///
/// The radius is `|end − start| / (2·sin(sweep/2))`. The center sits on the
/// chord's perpendicular bisector, at signed distance `r·cos(sweep/2)` to the
/// left of the chord for counter-clockwise arcs and to the right otherwise.
pub fn arc_geometry(start: Vec2, end: Vec2, sweep: f64, ccw: bool) -> Result<(Vec2, f64)> {
    let chord = end - start;
    let len = chord.norm();
    if len <= CHORD_EPS {
        return Err(Error::DegenerateArc(format!(
            "coincident end points ({}, {})",
            start.x, start.y
        )));
    }
    if !(sweep > 0.0 && sweep < TAU) {
        return Err(Error::DegenerateArc(format!("sweep {sweep} outside (0, 2π)")));
    }
    let half = sweep / 2.0;
    let radius = len / (2.0 * half.sin());
    let left = Vec2::new(-chord.y, chord.x) / len;
    let offset = radius * half.cos();
    let mid = (start + end) / 2.0;
    let center = if ccw { mid + left * offset } else { mid - left * offset };
    Ok((center, radius))
}

/// Points along an arc at parameter `t ∈ [0, 1]`.
pub fn arc_point(center: Vec2, radius: f64, start: Vec2, sweep: f64, ccw: bool, t: f64) -> Vec2 {
    let a0 = (start.y - center.y).atan2(start.x - center.x);
    let a = a0 + if ccw { sweep } else { -sweep } * t;
    center + Vec2::new(a.cos(), a.sin()) * radius
}

/// Number of chords so that a circular arc of `radius` swept over `sweep`
/// deviates from its chords by at most `sagitta_tol`.
pub fn arc_segments(radius: f64, sweep: f64, sagitta_tol: f64) -> usize {
    let max_step = if sagitta_tol >= radius {
        std::f64::consts::PI
    } else {
        2.0 * (1.0 - sagitta_tol / radius).acos()
    };
    ((sweep / max_step).ceil() as usize).max(1)
}

/// A closed polyline; the last vertex equals the first.
#[derive(Clone, Debug, PartialEq)]
pub struct Polyline {
    pub points: Vec<Vec2>,
}

impl Polyline {
    /// Segments as `(a, b)` pairs.
    pub fn segments(&self) -> impl Iterator<Item = (Vec2, Vec2)> + '_ {
        self.points.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn segment_count(&self) -> usize {
        self.points.len().saturating_sub(1)
    }

    /// Distinct vertices, the closing duplicate excluded.
    pub fn vertices(&self) -> &[Vec2] {
        &self.points[..self.segment_count()]
    }

    /// Shoelace area, positive for counter-clockwise loops.
    pub fn signed_area(&self) -> f64 {
        self.segments()
            .map(|(a, b)| a.x * b.y - b.x * a.y)
            .sum::<f64>()
            / 2.0
    }

    pub fn reversed(&self) -> Self {
        Self {
            points: self.points.iter().rev().copied().collect(),
        }
    }
}

/// Tessellates one closed loop. Lines contribute their end points, arcs and
/// circles are subdivided to the sagitta tolerance.
pub fn tessellate_loop(curves: &[Curve], sagitta_tol: f64, closure_tol: f64) -> Result<Polyline> {
    if curves.is_empty() {
        return Err(Error::Tessellation("empty loop".into()));
    }
    if !(sagitta_tol > 0.0) {
        return Err(Error::Argument(format!("sagitta tolerance {sagitta_tol} must be positive")));
    }
    let first = curves[0].start();
    let last = curves[curves.len() - 1].end();
    if (last - first).norm() > closure_tol {
        return Err(Error::Tessellation(format!(
            "loop is open: ends at ({}, {}), starts at ({}, {})",
            last.x, last.y, first.x, first.y
        )));
    }
    let mut points = Vec::new();
    for curve in curves {
        match *curve {
            Curve::Line { start, .. } => points.push(start),
            Curve::Arc {
                start,
                end,
                sweep,
                ccw,
            } => {
                let (center, radius) = arc_geometry(start, end, sweep, ccw)?;
                let n = arc_segments(radius, sweep, sagitta_tol);
                points.push(start);
                points.extend((1..n).map(|k| arc_point(center, radius, start, sweep, ccw, k as f64 / n as f64)));
            }
            Curve::Circle { center, radius } => {
                if !(radius > 0.0) {
                    return Err(Error::DegenerateArc(format!("circle radius {radius}")));
                }
                let n = arc_segments(radius, TAU, sagitta_tol).max(3);
                points.extend((0..n).map(|k| {
                    let a = TAU * k as f64 / n as f64;
                    center + Vec2::new(a.cos(), a.sin()) * radius
                }));
            }
        }
    }
    points.push(points[0]);
    Ok(Polyline { points })
}
