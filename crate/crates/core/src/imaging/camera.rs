use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geomkern::{Vec2, Vec3};

/// Pinhole camera. Pixel coordinates have their origin at the top-left
/// corner, `x` to the right and `y` down; pixel `(i, j)` covers
/// `[i, i+1) × [j, j+1)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Camera {
    pub eye: [f64; 3],
    pub look_at: [f64; 3],
    pub up: [f64; 3],
    /// Vertical field of view, radians.
    pub fov: f64,
    pub width: u32,
    pub height: u32,
}

/// Orthonormal camera axes.
#[derive(Clone, Copy, Debug)]
pub struct ViewBasis {
    pub eye: Vec3,
    pub forward: Vec3,
    pub right: Vec3,
    pub up: Vec3,
    /// Focal length in pixels.
    pub focal: f64,
    pub center: Vec2,
}

impl Camera {
    pub fn new(eye: Vec3, look_at: Vec3, up: Vec3, fov: f64, width: u32, height: u32) -> Result<Self> {
        let cam = Self {
            eye: eye.into(),
            look_at: look_at.into(),
            up: up.into(),
            fov,
            width,
            height,
        };
        cam.check()?;
        Ok(cam)
    }

    pub fn check(&self) -> Result<()> {
        if Vec3::from(self.eye) == Vec3::from(self.look_at) {
            return Err(Error::Argument("camera eye equals look-at".into()));
        }
        if !(self.fov > 0.0 && self.fov < std::f64::consts::PI) {
            return Err(Error::Argument(format!("field of view {} outside (0, π)", self.fov)));
        }
        if self.width == 0 || self.height == 0 {
            return Err(Error::Argument("image has zero size".into()));
        }
        Ok(())
    }

    pub fn basis(&self) -> ViewBasis {
        let eye = Vec3::from(self.eye);
        let forward = (Vec3::from(self.look_at) - eye).normalize();
        let mut up_hint = Vec3::from(self.up);
        if forward.cross(&up_hint).norm() < 1e-9 {
            // Looking along the up vector: fall back to +y, then +x.
            up_hint = if forward.cross(&Vec3::y()).norm() < 1e-9 { Vec3::x() } else { Vec3::y() };
        }
        let right = forward.cross(&up_hint).normalize();
        let up = right.cross(&forward);
        ViewBasis {
            eye,
            forward,
            right,
            up,
            focal: f64::from(self.height) / 2.0 / (self.fov / 2.0).tan(),
            center: Vec2::new(f64::from(self.width) / 2.0, f64::from(self.height) / 2.0),
        }
    }

    /// Distance from the eye to the look-at point.
    pub fn distance(&self) -> f64 {
        (Vec3::from(self.eye) - Vec3::from(self.look_at)).norm()
    }
}

impl ViewBasis {
    /// Pixel position and view depth, or `None` behind the near plane.
    pub fn project(&self, p: &Vec3) -> Option<(Vec2, f64)> {
        let d = p - self.eye;
        let z = d.dot(&self.forward);
        if z <= NEAR {
            return None;
        }
        let x = d.dot(&self.right);
        let y = d.dot(&self.up);
        Some((
            Vec2::new(self.center.x + self.focal * x / z, self.center.y - self.focal * y / z),
            z,
        ))
    }
}

const NEAR: f64 = 1e-6;

/// Cameras on rings around the origin: `n_views / elevations.len()` equally
/// spaced azimuths (starting on `+x`) per elevation, elevation-major, all
/// looking at the origin with `+z` up.
pub fn camera_ring(
    n_views: usize,
    radius: f64,
    elevations: &[f64],
    fov: f64,
    width: u32,
    height: u32,
) -> Result<Vec<Camera>> {
    if elevations.is_empty() || n_views % elevations.len() != 0 || n_views == 0 {
        return Err(Error::Argument(format!(
            "{n_views} views cannot be split evenly over {} elevations",
            elevations.len()
        )));
    }
    if !(radius > 0.0) {
        return Err(Error::Argument(format!("ring radius {radius} must be positive")));
    }
    let per_ring = n_views / elevations.len();
    let mut out = Vec::with_capacity(n_views);
    for &el in elevations {
        for k in 0..per_ring {
            let az = std::f64::consts::TAU * k as f64 / per_ring as f64;
            let eye = Vec3::new(el.cos() * az.cos(), el.cos() * az.sin(), el.sin()) * radius;
            out.push(Camera::new(eye, Vec3::zeros(), Vec3::z(), fov, width, height)?);
        }
    }
    Ok(out)
}
