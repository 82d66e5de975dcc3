use nalgebra::Isometry3;

use super::{Vec3, FRAME_TOL};
use crate::error::{Error, Result};

/// Sketch plane placement. Sketch point `(u, v)` at height `w` maps to
/// `origin + scale·(u·e_u + v·e_v) + w·normal`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Frame {
    pub origin: Vec3,
    pub e_u: Vec3,
    pub e_v: Vec3,
    pub normal: Vec3,
    pub scale: f64,
}

impl Frame {
    /// World axes at the origin, unit scale.
    pub fn identity() -> Self {
        Self {
            origin: Vec3::zeros(),
            e_u: Vec3::x(),
            e_v: Vec3::y(),
            normal: Vec3::z(),
            scale: 1.0,
        }
    }

    pub fn is_orthonormal(&self, tol: f64) -> bool {
        let unit = |v: &Vec3| (v.norm() - 1.0).abs() <= tol;
        unit(&self.e_u)
            && unit(&self.e_v)
            && unit(&self.normal)
            && self.e_u.dot(&self.e_v).abs() <= tol
            && self.e_u.dot(&self.normal).abs() <= tol
            && self.e_v.dot(&self.normal).abs() <= tol
            && (self.e_u.cross(&self.e_v) - self.normal).norm() <= tol
    }

    /// Sketch coordinates `(u, v)` and signed height `w` of a world point.
    pub fn to_local(&self, p: &Vec3) -> (f64, f64, f64) {
        let d = p - self.origin;
        (
            d.dot(&self.e_u) / self.scale,
            d.dot(&self.e_v) / self.scale,
            d.dot(&self.normal),
        )
    }

    pub fn to_world(&self, u: f64, v: f64, w: f64) -> Vec3 {
        self.origin + (self.e_u * u + self.e_v * v) * self.scale + self.normal * w
    }

    /// Sketch-plane direction `(du, dv)` as a world vector, without scale.
    pub fn plane_direction(&self, du: f64, dv: f64) -> Vec3 {
        self.e_u * du + self.e_v * dv
    }

    pub fn transformed(&self, iso: &Isometry3<f64>) -> Self {
        Self {
            origin: iso.transform_point(&self.origin.into()).coords,
            e_u: iso.transform_vector(&self.e_u),
            e_v: iso.transform_vector(&self.e_v),
            normal: iso.transform_vector(&self.normal),
            scale: self.scale,
        }
    }

    /// Uniform translate-then-scale: `p ↦ (p − center)·factor`.
    pub fn rescaled(&self, center: &Vec3, factor: f64) -> Self {
        Self {
            origin: (self.origin - center) * factor,
            scale: self.scale * factor,
            ..*self
        }
    }
}

/// Frame from the plane normal's polar angle `theta` and azimuth `phi`, an
/// in-plane rotation `gamma`, an origin and a sketch scale.
///
/// The base in-plane axis is `ẑ × n` normalized, or `x̂` when `n` is parallel
/// to `ẑ`; it is rotated by `gamma` about `n`, and `e_v = n × e_u`.
pub fn sketch_plane_frame(theta: f64, phi: f64, gamma: f64, origin: Vec3, scale: f64) -> Result<Frame> {
    if !(scale > 0.0) {
        return Err(Error::Scale(scale));
    }
    let (st, ct) = theta.sin_cos();
    let (sp, cp) = phi.sin_cos();
    let normal = Vec3::new(st * cp, st * sp, ct);
    let zxn = Vec3::z().cross(&normal);
    let base = if zxn.norm() > FRAME_TOL {
        zxn.normalize()
    } else {
        Vec3::x()
    };
    let (sg, cg) = gamma.sin_cos();
    let e_u = base * cg + normal.cross(&base) * sg;
    let e_v = normal.cross(&e_u);
    Ok(Frame {
        origin,
        e_u,
        e_v,
        normal,
        scale,
    })
}
