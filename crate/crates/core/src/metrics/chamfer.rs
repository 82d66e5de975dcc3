use kiddo::immutable::float::kdtree::ImmutableKdTree;
use kiddo::SquaredEuclidean;

use crate::error::{Error, Result};
use crate::geomkern::PointCloud;

type Tree = ImmutableKdTree<f64, u32, 3, 32>;

fn coords(pc: &PointCloud) -> Vec<[f64; 3]> {
    pc.points.iter().map(|p| [p.x, p.y, p.z]).collect()
}

/// Mean squared distance from each point of `from` to its nearest neighbor
/// in `tree`.
fn one_sided(from: &[[f64; 3]], tree: &Tree) -> f64 {
    let sum: f64 = from
        .iter()
        .map(|q| tree.nearest_one::<SquaredEuclidean>(q).distance)
        .sum();
    sum / from.len() as f64
}

/// Two-sided Chamfer distance with squared nearest-neighbor distances.
pub fn chamfer(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::EmptyCloud);
    }
    let (ca, cb) = (coords(a), coords(b));
    let (ta, tb) = (Tree::new_from_slice(&ca), Tree::new_from_slice(&cb));
    Ok(one_sided(&ca, &tb) + one_sided(&cb, &ta))
}
