//! Cameras, rasterization and edge extraction.

mod camera;
mod edge;
mod image;
mod render;

pub use camera::{camera_ring, Camera, ViewBasis};
pub use edge::{
    edge_map, gaussian_blur, gaussian_kernel, hysteresis, non_max_suppression, sobel,
    DEFAULT_SIGMA, DEFAULT_T_HIGH, DEFAULT_T_LOW,
};
pub use image::{EdgeMap, GrayImage};
pub use render::render;

pub const DEFAULT_IMAGE_SIZE: u32 = 512;
pub const DEFAULT_VIEWS: usize = 36;

/// Ring elevations used by default, radians.
pub fn default_elevations() -> Vec<f64> {
    [20.0f64, 40.0, 60.0].iter().map(|d| d.to_radians()).collect()
}
