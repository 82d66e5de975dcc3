//! Z-buffered flat-shaded rasterizer.

use super::{Camera, GrayImage};
use crate::geomkern::{TriangleMesh, Vec2};

const BACKGROUND: f64 = 1.0;

fn edge(a: Vec2, b: Vec2, p: Vec2) -> f64 {
    (b.x - a.x) * (p.y - a.y) - (b.y - a.y) * (p.x - a.x)
}

/// Top-left fill rule for a triangle with positive `edge` area in pixel
/// coordinates (`y` down): pixels exactly on an edge belong to it only if the
/// edge is a top or left edge.
fn owns_boundary(a: Vec2, b: Vec2) -> bool {
    let d = b - a;
    (d.y == 0.0 && d.x < 0.0) || d.y > 0.0
}

/// Renders the mesh with Lambertian shading `max(0, n̂·l̂)`, where `l̂` points
/// from the scene toward the camera along the view axis, over a white
/// background.
pub fn render(mesh: &TriangleMesh, cam: &Camera) -> GrayImage {
    let (w, h) = (cam.width as usize, cam.height as usize);
    let mut img = GrayImage::filled(w, h, BACKGROUND);
    // Reciprocal depth; larger is closer.
    let mut zbuf = vec![0.0f64; w * h];
    let basis = cam.basis();
    let light = -basis.forward;

    for t in 0..mesh.triangles.len() {
        let tri = mesh.triangle(t);
        let Some(proj) = tri
            .iter()
            .map(|p| basis.project(p))
            .collect::<Option<Vec<_>>>()
        else {
            continue;
        };
        let shade = mesh.face_normal(t).dot(&light).max(0.0);
        if !shade.is_finite() {
            continue;
        }
        let (mut a, mut b, c) = (proj[0], proj[1], proj[2]);
        let mut area = edge(a.0, b.0, c.0);
        if area == 0.0 {
            continue;
        }
        if area < 0.0 {
            std::mem::swap(&mut a, &mut b);
            area = -area;
        }
        let (pa, pb, pc) = (a.0, b.0, c.0);
        let x0 = pa.x.min(pb.x).min(pc.x).floor().max(0.0) as usize;
        let y0 = pa.y.min(pb.y).min(pc.y).floor().max(0.0) as usize;
        let x1 = (pa.x.max(pb.x).max(pc.x).ceil() as isize).clamp(0, w as isize) as usize;
        let y1 = (pa.y.max(pb.y).max(pc.y).ceil() as isize).clamp(0, h as isize) as usize;
        let (own_bc, own_ca, own_ab) = (owns_boundary(pb, pc), owns_boundary(pc, pa), owns_boundary(pa, pb));
        let (iza, izb, izc) = (1.0 / a.1, 1.0 / b.1, 1.0 / c.1);
        for y in y0..y1 {
            for x in x0..x1 {
                let p = Vec2::new(x as f64 + 0.5, y as f64 + 0.5);
                let wa = edge(pb, pc, p);
                let wb = edge(pc, pa, p);
                let wc = edge(pa, pb, p);
                let inside = |w: f64, own: bool| w > 0.0 || (w == 0.0 && own);
                if !(inside(wa, own_bc) && inside(wb, own_ca) && inside(wc, own_ab)) {
                    continue;
                }
                let inv_z = (wa * iza + wb * izb + wc * izc) / area;
                let idx = y * w + x;
                if inv_z > zbuf[idx] {
                    zbuf[idx] = inv_z;
                    img.data[idx] = shade;
                }
            }
        }
    }
    img
}
