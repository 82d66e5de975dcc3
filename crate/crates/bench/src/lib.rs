//! Fixtures shared by the benchmarks.

use extrudekit::geomkern::{default_band, execute, export_mesh, sample_surface, DEFAULT_SAGITTA};
use extrudekit::imaging::{camera_ring, default_elevations, render};
use extrudekit::pipeline::{generate, Config};
use extrudekit::{GrayImage, PointCloud, SolidModel, TriangleMesh};

/// A generated model, normalized to the unit-diagonal box.
pub fn model(seed: u64) -> SolidModel {
    let seq = generate(1, seed, &Config::default()).expect("generator").remove(0);
    execute(&seq, DEFAULT_SAGITTA).expect("generated sequences execute").normalized()
}

pub fn mesh(model: &SolidModel) -> TriangleMesh {
    export_mesh(model, DEFAULT_SAGITTA).expect("mesh")
}

pub fn cloud(model: &SolidModel, n: usize, seed: u64) -> PointCloud {
    sample_surface(model, n, default_band(model), seed).expect("surface samples")
}

/// First view of the default camera ring at `size` pixels.
pub fn view(mesh: &TriangleMesh, size: u32) -> GrayImage {
    let cfg = Config::default();
    let cams = camera_ring(3, cfg.camera_radius, &default_elevations(), cfg.fov(), size, size).expect("cameras");
    render(mesh, &cams[0])
}
