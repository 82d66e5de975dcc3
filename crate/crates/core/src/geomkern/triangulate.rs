//! Ear-clipping triangulation of an [`Outline`], with holes bridged into their
//! enclosing boundary.

use super::profile::Outline;
use super::Vec2;
use crate::error::{Error, Result};

/// Index of a vertex: `(loop, vertex within loop)`.
pub type VertexRef = (usize, usize);

fn cross(o: Vec2, a: Vec2, b: Vec2) -> f64 {
    (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x)
}

/// Proper or touching intersection of two segments.
fn segments_intersect(a: Vec2, b: Vec2, c: Vec2, d: Vec2) -> bool {
    let (d1, d2) = (cross(c, d, a), cross(c, d, b));
    let (d3, d4) = (cross(a, b, c), cross(a, b, d));
    if ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
    {
        return true;
    }
    let on = |p: Vec2, q: Vec2, r: Vec2, c: f64| {
        c == 0.0
            && r.x >= p.x.min(q.x)
            && r.x <= p.x.max(q.x)
            && r.y >= p.y.min(q.y)
            && r.y <= p.y.max(q.y)
    };
    on(c, d, a, d1) || on(c, d, b, d2) || on(a, b, c, d3) || on(a, b, d, d4)
}

/// Fails if any two non-adjacent boundary segments touch.
pub fn check_simple(outline: &Outline) -> Result<()> {
    let segs: Vec<(usize, usize, Vec2, Vec2)> = outline
        .loops
        .iter()
        .enumerate()
        .flat_map(|(l, poly)| poly.segments().enumerate().map(move |(i, (a, b))| (l, i, a, b)))
        .collect();
    for (i, &(li, si, a, b)) in segs.iter().enumerate() {
        let ni = outline.loops[li].segment_count();
        for &(lj, sj, c, d) in &segs[i + 1..] {
            if li == lj && (sj == (si + 1) % ni || si == (sj + 1) % ni) {
                continue;
            }
            if segments_intersect(a, b, c, d) {
                return Err(Error::Tessellation(format!(
                    "profile boundary self-intersects near ({:.4}, {:.4})",
                    a.x, a.y
                )));
            }
        }
    }
    Ok(())
}

/// Triangulates the outline. Triangles are counter-clockwise in sketch
/// coordinates and reference loop vertices.
pub fn triangulate(outline: &Outline) -> Result<Vec<[VertexRef; 3]>> {
    check_simple(outline)?;
    let point = |r: VertexRef| outline.loops[r.0].points[r.1];
    let mut triangles = Vec::new();

    for (outer, &depth) in outline.depth.iter().enumerate() {
        if depth % 2 == 1 {
            continue;
        }
        // Holes directly inside this boundary.
        let mut holes: Vec<usize> = (0..outline.loops.len())
            .filter(|&h| {
                outline.depth[h] == depth + 1 && encloses(outline, outer, h)
            })
            .collect();
        holes.sort_by(|&a, &b| {
            max_x(outline, b).partial_cmp(&max_x(outline, a)).expect("finite")
        });

        let mut ring: Vec<VertexRef> = (0..outline.loops[outer].segment_count()).map(|i| (outer, i)).collect();
        for (k, &hole) in holes.iter().enumerate() {
            let hn = outline.loops[hole].segment_count();
            let m = (0..hn)
                .max_by(|&a, &b| {
                    let (pa, pb) = (point((hole, a)), point((hole, b)));
                    pa.x.partial_cmp(&pb.x).expect("finite")
                })
                .expect("non-empty hole");
            let mp = point((hole, m));
            let blockers: Vec<(Vec2, Vec2)> = ring_edges(&ring, &point)
                .chain(holes[k..].iter().flat_map(|&h| outline.loops[h].segments()))
                .collect();
            let mut best: Option<(usize, f64)> = None;
            for (idx, &r) in ring.iter().enumerate() {
                let p = point(r);
                let dist = (p - mp).norm_squared();
                if best.is_some_and(|(_, d)| d <= dist) {
                    continue;
                }
                let visible = blockers.iter().all(|&(a, b)| {
                    a == p || b == p || a == mp || b == mp || !segments_intersect(mp, p, a, b)
                });
                if visible {
                    best = Some((idx, dist));
                }
            }
            let (idx, _) = best.ok_or_else(|| Error::Tessellation("no bridge to hole".into()))?;
            let bridge_to = ring[idx];
            let mut spliced = Vec::with_capacity(ring.len() + hn + 2);
            spliced.extend_from_slice(&ring[..=idx]);
            spliced.extend((0..=hn).map(|j| (hole, (m + j) % hn)));
            spliced.push(bridge_to);
            spliced.extend_from_slice(&ring[idx + 1..]);
            ring = spliced;
        }
        clip_ears(ring, &point, &mut triangles)?;
    }
    Ok(triangles)
}

fn ring_edges<'a>(
    ring: &'a [VertexRef],
    point: &'a impl Fn(VertexRef) -> Vec2,
) -> impl Iterator<Item = (Vec2, Vec2)> + 'a {
    (0..ring.len()).map(move |i| (point(ring[i]), point(ring[(i + 1) % ring.len()])))
}

fn max_x(outline: &Outline, l: usize) -> f64 {
    outline.loops[l].points.iter().map(|p| p.x).fold(f64::NEG_INFINITY, f64::max)
}

fn encloses(outline: &Outline, outer: usize, inner: usize) -> bool {
    let q = outline.loops[inner].points[0];
    outline.loops[outer]
        .segments()
        .filter(|&(a, b)| {
            (a.y > q.y) != (b.y > q.y) && q.x < a.x + (q.y - a.y) * (b.x - a.x) / (b.y - a.y)
        })
        .count()
        % 2
        == 1
}

fn in_triangle(p: Vec2, a: Vec2, b: Vec2, c: Vec2) -> bool {
    cross(a, b, p) >= 0.0 && cross(b, c, p) >= 0.0 && cross(c, a, p) >= 0.0
}

fn clip_ears(
    mut ring: Vec<VertexRef>,
    point: &impl Fn(VertexRef) -> Vec2,
    out: &mut Vec<[VertexRef; 3]>,
) -> Result<()> {
    while ring.len() > 3 {
        let n = ring.len();
        let mut clipped = false;
        for i in 0..n {
            let (ia, ib, ic) = ((i + n - 1) % n, i, (i + 1) % n);
            let (a, b, c) = (point(ring[ia]), point(ring[ib]), point(ring[ic]));
            if cross(a, b, c) <= 0.0 {
                continue;
            }
            let blocked = ring.iter().enumerate().any(|(j, &r)| {
                if j == ia || j == ib || j == ic {
                    return false;
                }
                let p = point(r);
                p != a && p != b && p != c && in_triangle(p, a, b, c)
            });
            if blocked {
                continue;
            }
            out.push([ring[ia], ring[ib], ring[ic]]);
            ring.remove(ib);
            clipped = true;
            break;
        }
        if !clipped {
            return Err(Error::Tessellation(format!(
                "ear clipping stalled with {} vertices left",
                ring.len()
            )));
        }
    }
    if ring.len() == 3 {
        let (a, b, c) = (point(ring[0]), point(ring[1]), point(ring[2]));
        if cross(a, b, c) > 0.0 {
            out.push([ring[0], ring[1], ring[2]]);
        } else {
            return Err(Error::Tessellation("degenerate final triangle".into()));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geomkern::curve::Curve;
    use crate::geomkern::profile::Profile;

    fn v(x: f64, y: f64) -> Vec2 {
        Vec2::new(x, y)
    }

    fn polygon(pts: &[Vec2]) -> Vec<Curve> {
        (0..pts.len())
            .map(|i| Curve::Line { start: pts[i], end: pts[(i + 1) % pts.len()] })
            .collect()
    }

    fn tri_area(o: &Outline, t: &[VertexRef; 3]) -> f64 {
        let p = |r: VertexRef| o.loops[r.0].points[r.1];
        cross(p(t[0]), p(t[1]), p(t[2])) / 2.0
    }

    #[test]
    fn square_gives_two_triangles() {
        let o = Outline::new(
            &Profile { loops: vec![polygon(&[v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)])] },
            1e-3,
        )
        .unwrap();
        let tris = triangulate(&o).unwrap();
        assert_eq!(tris.len(), 2);
        let area: f64 = tris.iter().map(|t| tri_area(&o, t)).sum();
        assert!((area - 1.0).abs() < 1e-12);
    }

    #[test]
    fn square_with_circular_hole_covers_the_annulus() {
        let o = Outline::new(
            &Profile {
                loops: vec![
                    polygon(&[v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.0, 1.0)]),
                    vec![Curve::Circle { center: v(0.5, 0.5), radius: 0.25 }],
                ],
            },
            1e-3,
        )
        .unwrap();
        let tris = triangulate(&o).unwrap();
        assert!(tris.iter().all(|t| tri_area(&o, t) > 0.0));
        let area: f64 = tris.iter().map(|t| tri_area(&o, t)).sum();
        assert!((area - o.area()).abs() < 1e-9, "{area} vs {}", o.area());
    }

    #[test]
    fn concave_polygon() {
        let pts = [v(0.0, 0.0), v(1.0, 0.0), v(1.0, 1.0), v(0.5, 0.3), v(0.0, 1.0)];
        let o = Outline::new(&Profile { loops: vec![polygon(&pts)] }, 1e-3).unwrap();
        let tris = triangulate(&o).unwrap();
        assert_eq!(tris.len(), 3);
        let area: f64 = tris.iter().map(|t| tri_area(&o, t)).sum();
        assert!((area - o.area()).abs() < 1e-12);
    }

    #[test]
    fn bow_tie_is_rejected() {
        let pts = [v(0.0, 0.0), v(1.0, 1.0), v(1.0, 0.0), v(0.0, 1.0)];
        let o = Outline::new(&Profile { loops: vec![polygon(&pts)] }, 1e-3).unwrap();
        assert!(matches!(triangulate(&o), Err(Error::Tessellation(_))));
    }
}
