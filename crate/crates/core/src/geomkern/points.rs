use super::{Aabb, Vec3};

#[derive(Clone, Debug, Default, PartialEq)]
pub struct PointCloud {
    pub points: Vec<Vec3>,
}

impl PointCloud {
    pub fn new(points: Vec<Vec3>) -> Self {
        Self { points }
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn bounding_box(&self) -> Aabb {
        let mut bb = Aabb::empty();
        for p in &self.points {
            bb.grow(p);
        }
        bb
    }

    /// Plain-text `x y z` lines.
    pub fn to_xyz(&self) -> String {
        let mut out = String::with_capacity(self.points.len() * 32);
        for p in &self.points {
            out.push_str(&format!("{} {} {}\n", p.x, p.y, p.z));
        }
        out
    }
}

/// Centers the cloud's bounding box at the origin and scales its diagonal to 1.
/// A cloud with zero extent is only translated.
pub fn normalize_points(pc: &PointCloud) -> PointCloud {
    if pc.is_empty() {
        return pc.clone();
    }
    let bb = pc.bounding_box();
    let center = bb.center();
    let diag = bb.diagonal();
    let factor = if diag > 0.0 { 1.0 / diag } else { 1.0 };
    PointCloud::new(pc.points.iter().map(|p| (p - center) * factor).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn two_points() {
        let pc = PointCloud::new(vec![Vec3::zeros(), Vec3::new(2.0, 0.0, 0.0)]);
        let n = normalize_points(&pc);
        assert_eq!(n.points, vec![Vec3::new(-0.5, 0.0, 0.0), Vec3::new(0.5, 0.0, 0.0)]);
    }

    #[test]
    fn single_point_is_translated_only() {
        let n = normalize_points(&PointCloud::new(vec![Vec3::new(3.0, 4.0, 5.0)]));
        assert_eq!(n.points, vec![Vec3::zeros()]);
    }

    proptest! {
        #[test]
        fn unit_diagonal_and_idempotent(
            pts in prop::collection::vec((-10.0..10.0f64, -10.0..10.0f64, -10.0..10.0f64), 2..50)
        ) {
            let pc = PointCloud::new(pts.into_iter().map(|(x, y, z)| Vec3::new(x, y, z)).collect());
            prop_assume!(pc.bounding_box().diagonal() > 1e-6);
            let n = normalize_points(&pc);
            prop_assert!((n.bounding_box().diagonal() - 1.0).abs() < 1e-9);
            prop_assert!(n.bounding_box().center().norm() < 1e-9);
            let nn = normalize_points(&n);
            for (a, b) in n.points.iter().zip(&nn.points) {
                prop_assert!((a - b).norm() < 1e-12);
            }
        }
    }
}
