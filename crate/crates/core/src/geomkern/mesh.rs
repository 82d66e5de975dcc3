//! Per-body triangle meshes. Bodies are concatenated without boolean trimming,
//! so the result is for display and rasterization only.

use std::collections::HashMap;
use std::io::{self, Write};

use super::profile::Outline;
use super::triangulate::triangulate;
use super::{ExtrusionBody, SolidModel, Vec3};
use crate::error::Result;

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TriangleMesh {
    pub vertices: Vec<Vec3>,
    pub triangles: Vec<[u32; 3]>,
}

impl TriangleMesh {
    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn append(&mut self, other: &TriangleMesh) {
        let base = self.vertices.len() as u32;
        self.vertices.extend_from_slice(&other.vertices);
        self.triangles
            .extend(other.triangles.iter().map(|t| t.map(|i| i + base)));
    }

    pub fn triangle(&self, t: usize) -> [Vec3; 3] {
        self.triangles[t].map(|i| self.vertices[i as usize])
    }

    /// Unit normal from the counter-clockwise winding.
    pub fn face_normal(&self, t: usize) -> Vec3 {
        let [a, b, c] = self.triangle(t);
        (b - a).cross(&(c - a)).normalize()
    }

    pub fn surface_area(&self) -> f64 {
        (0..self.triangles.len())
            .map(|t| {
                let [a, b, c] = self.triangle(t);
                (b - a).cross(&(c - a)).norm() / 2.0
            })
            .sum()
    }

    /// Every directed edge appears once and its reverse appears once.
    pub fn is_closed_manifold(&self) -> bool {
        let mut directed: HashMap<(u32, u32), usize> = HashMap::new();
        for t in &self.triangles {
            for k in 0..3 {
                *directed.entry((t[k], t[(k + 1) % 3])).or_default() += 1;
            }
        }
        directed
            .iter()
            .all(|(&(a, b), &n)| n == 1 && directed.get(&(b, a)) == Some(&1))
    }

    /// `V − E + F` over referenced vertices.
    pub fn euler_characteristic(&self) -> i64 {
        let mut edges = std::collections::HashSet::new();
        let mut verts = std::collections::HashSet::new();
        for t in &self.triangles {
            for k in 0..3 {
                let (a, b) = (t[k], t[(k + 1) % 3]);
                edges.insert((a.min(b), a.max(b)));
                verts.insert(a);
            }
        }
        verts.len() as i64 - edges.len() as i64 + self.triangles.len() as i64
    }

    /// ASCII OBJ with `v` and `f` records.
    pub fn write_obj(&self, mut w: impl Write) -> io::Result<()> {
        for v in &self.vertices {
            writeln!(w, "v {} {} {}", v.x, v.y, v.z)?;
        }
        for t in &self.triangles {
            writeln!(w, "f {} {} {}", t[0] + 1, t[1] + 1, t[2] + 1)?;
        }
        Ok(())
    }

    /// Binary STL.
    pub fn write_stl(&self, mut w: impl Write) -> io::Result<()> {
        let mut header = [0u8; 80];
        let tag = b"extrudekit binary STL";
        header[..tag.len()].copy_from_slice(tag);
        w.write_all(&header)?;
        w.write_all(&(self.triangles.len() as u32).to_le_bytes())?;
        for t in 0..self.triangles.len() {
            let n = self.face_normal(t);
            for v in std::iter::once(n).chain(self.triangle(t)) {
                for c in [v.x, v.y, v.z] {
                    w.write_all(&(c as f32).to_le_bytes())?;
                }
            }
            w.write_all(&[0, 0])?;
        }
        Ok(())
    }
}

/// Closed mesh of one body: two triangulated caps and quad side walls.
pub fn body_mesh(body: &ExtrusionBody, sagitta_tol: f64) -> Result<TriangleMesh> {
    let rebuilt;
    let outline = if sagitta_tol == body.sagitta_tol() {
        body.outline()
    } else {
        rebuilt = Outline::new(&body.profile, sagitta_tol)?;
        &rebuilt
    };
    let (lo, hi) = body.extent();
    let frame = &body.frame;

    let mut mesh = TriangleMesh::default();
    // Vertex ids: loop offsets into a bottom ring followed by a top ring.
    let mut offsets = Vec::with_capacity(outline.loops.len());
    let mut count = 0u32;
    for poly in &outline.loops {
        offsets.push(count);
        count += poly.segment_count() as u32;
    }
    for w in [lo, hi] {
        for poly in &outline.loops {
            mesh.vertices
                .extend(poly.vertices().iter().map(|p| frame.to_world(p.x, p.y, w)));
        }
    }
    let bottom = |l: usize, i: usize| offsets[l] + i as u32;
    let top = |l: usize, i: usize| count + offsets[l] + i as u32;

    for [a, b, c] in triangulate(outline)? {
        mesh.triangles.push([top(a.0, a.1), top(b.0, b.1), top(c.0, c.1)]);
        mesh.triangles.push([bottom(a.0, a.1), bottom(c.0, c.1), bottom(b.0, b.1)]);
    }
    for (l, poly) in outline.loops.iter().enumerate() {
        let n = poly.segment_count();
        for i in 0..n {
            let j = (i + 1) % n;
            mesh.triangles.push([bottom(l, i), bottom(l, j), top(l, j)]);
            mesh.triangles.push([bottom(l, i), top(l, j), top(l, i)]);
        }
    }
    Ok(mesh)
}

/// Concatenated per-body meshes of the model.
pub fn export_mesh(model: &SolidModel, sagitta_tol: f64) -> Result<TriangleMesh> {
    let mut mesh = TriangleMesh::default();
    for body in model.bodies() {
        mesh.append(&body_mesh(body, sagitta_tol)?);
    }
    Ok(mesh)
}
