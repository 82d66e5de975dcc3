//! Executes sequences into solids represented by occupancy: sketch frames,
//! curve and profile evaluation, extrusion, boolean composition, surface
//! sampling and visualization-grade meshing.

mod body;
mod curve;
mod execute;
mod frame;
mod mesh;
mod points;
pub mod primitives;
mod profile;
mod sample;
mod triangulate;
mod volume;

use nalgebra::{Vector2, Vector3};

pub use body::{body_occupancy, model_occupancy, ExtrusionBody, SolidModel};
pub use curve::{arc_geometry, arc_point, arc_segments, tessellate_loop, Curve, Polyline};
pub use execute::{execute, profile_of_loops};
pub use frame::{sketch_plane_frame, Frame};
pub use mesh::{export_mesh, TriangleMesh};
pub use points::{normalize_points, PointCloud};
pub use profile::{point_in_profile, Outline, Profile, BOUNDARY_TOL, LOOP_CLOSURE_TOL};
pub use sample::{default_band, sample_surface, MIN_CANDIDATES, CANDIDATES_PER_POINT};
pub use triangulate::triangulate;
pub use volume::estimate_volume;

pub type Vec2 = Vector2<f64>;
pub type Vec3 = Vector3<f64>;

/// Tolerance for frame orthonormality and the pole fallback.
pub const FRAME_TOL: f64 = 1e-9;
/// Default chord-to-curve deviation for tessellation, sketch units.
pub const DEFAULT_SAGITTA: f64 = 1e-3;
/// Surface-survival band as a fraction of the model diagonal.
pub const DEFAULT_BAND_FRACTION: f64 = 1e-4;

/// Axis-aligned box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Aabb {
    pub min: Vec3,
    pub max: Vec3,
}

impl Aabb {
    pub fn new(min: Vec3, max: Vec3) -> Self {
        Self { min, max }
    }

    pub fn empty() -> Self {
        Self {
            min: Vec3::repeat(f64::INFINITY),
            max: Vec3::repeat(f64::NEG_INFINITY),
        }
    }

    pub fn grow(&mut self, p: &Vec3) {
        self.min = self.min.inf(p);
        self.max = self.max.sup(p);
    }

    pub fn merge(&mut self, other: &Aabb) {
        self.min = self.min.inf(&other.min);
        self.max = self.max.sup(&other.max);
    }

    pub fn contains(&self, p: &Vec3) -> bool {
        // Slack so boundary points of a body are never culled by round-off.
        let eps = 1e-9;
        (0..3).all(|i| p[i] >= self.min[i] - eps && p[i] <= self.max[i] + eps)
    }

    pub fn center(&self) -> Vec3 {
        (self.min + self.max) / 2.0
    }

    pub fn diagonal(&self) -> f64 {
        (self.max - self.min).norm()
    }

    pub fn volume(&self) -> f64 {
        let d = self.max - self.min;
        d.x * d.y * d.z
    }
}
