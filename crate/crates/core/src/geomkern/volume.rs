use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Aabb, SolidModel, Vec3};

/// Monte Carlo volume: fraction of `samples` uniform points in `bounds` that
/// the model occupies, times the box volume.
pub fn estimate_volume(model: &SolidModel, bounds: &Aabb, samples: usize, seed: u64) -> f64 {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let size = bounds.max - bounds.min;
    let hits = (0..samples)
        .filter(|_| {
            let p = bounds.min
                + Vec3::new(
                    size.x * rng.random::<f64>(),
                    size.y * rng.random::<f64>(),
                    size.z * rng.random::<f64>(),
                );
            model.contains(&p)
        })
        .count();
    bounds.volume() * hits as f64 / samples as f64
}
