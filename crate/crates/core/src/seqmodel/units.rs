//! Mapping from normalized `[0, 1]` parameter values to geometric quantities.
//!
//! Sketch coordinates (`x`, `y`, `r`) are used as-is in the sketch-local frame.
//! Lengths that live in the world (`s`, `e1`, `e2`) share one world unit; the
//! sketch plane origin spans `[-1, 1]` on each axis.

use std::f64::consts::{PI, TAU};

/// Arc sweep angle in radians, `[0, 2π]`.
pub fn sweep(v: f64) -> f64 {
    v * TAU
}

/// Polar angle of the sketch plane normal, `[0, π]`.
pub fn theta(v: f64) -> f64 {
    v * PI
}

/// Azimuth of the sketch plane normal, `[0, 2π]`.
pub fn phi(v: f64) -> f64 {
    v * TAU
}

/// In-plane rotation of the sketch axes, `[0, 2π]`.
pub fn gamma(v: f64) -> f64 {
    v * TAU
}

/// One coordinate of the sketch plane origin, `[-1, 1]`.
pub fn origin(v: f64) -> f64 {
    2.0 * v - 1.0
}

/// Sketch scale and extrusion extents, world units.
pub fn length(v: f64) -> f64 {
    v
}

/// Inverse of [`origin`].
pub fn origin_inv(w: f64) -> f64 {
    (w + 1.0) / 2.0
}
