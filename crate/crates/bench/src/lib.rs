//! Seeded inputs shared by the benchmarks.

use dengue_moo::{ObjectiveVector, Rng};
use rand::{Rng as _, SeedableRng};

/// A uniformly random control on the default 1001-node grid.
pub fn random_control(seed: u64) -> Vec<f64> {
    let mut rng = Rng::seed_from_u64(seed);
    (0..1001).map(|_| rng.random()).collect()
}

/// `len` mutually nondominated points on a convex curve, shuffled, plus the
/// same number of dominated points.
pub fn mixed_objectives(len: usize, seed: u64) -> Vec<ObjectiveVector> {
    let mut rng = Rng::seed_from_u64(seed);
    let mut v: Vec<ObjectiveVector> = (0..len)
        .flat_map(|_| {
            let t: f64 = rng.random();
            let front = ObjectiveVector::new(t * 3.0, 80.0 * (1.0 - t).powi(2));
            let behind = ObjectiveVector::new(front.f1() + rng.random::<f64>(), front.f2() + 5.0 * rng.random::<f64>());
            [front, behind]
        })
        .collect();
    let n = v.len();
    for i in (1..n).rev() {
        v.swap(i, rng.random_range(0..=i));
    }
    v
}
