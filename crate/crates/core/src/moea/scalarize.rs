use crate::error::{Error, Result};

use super::ObjectiveVector;

/// Evenly spaced biobjective weights `((j)/(μ−1), 1 − j/(μ−1))`.
#[derive(Debug, Clone, PartialEq)]
pub struct WeightVectorSet {
    vectors: Vec<[f64; 2]>,
}

impl WeightVectorSet {
    pub fn vectors(&self) -> &[[f64; 2]] {
        &self.vectors
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    /// Indices of the `t` weights closest to weight `i` (itself included),
    /// nearest first, ties by index.
    pub fn neighborhood(&self, i: usize, t: usize) -> Vec<usize> {
        let wi = self.vectors[i];
        let mut idx: Vec<usize> = (0..self.vectors.len()).collect();
        let dist = |j: usize| {
            let wj = self.vectors[j];
            (wi[0] - wj[0]).powi(2) + (wi[1] - wj[1]).powi(2)
        };
        idx.sort_by(|&a, &b| dist(a).total_cmp(&dist(b)).then(a.cmp(&b)));
        idx.truncate(t);
        idx
    }
}

pub fn generate_weights(count: usize) -> Result<WeightVectorSet> {
    if count < 2 {
        return Err(Error::TooFewWeights(count));
    }
    let last = (count - 1) as f64;
    let vectors = (0..count)
        .map(|j| {
            let w = j as f64 / last;
            [w, 1.0 - w]
        })
        .collect();
    Ok(WeightVectorSet { vectors })
}

/// Min-max normalization of each objective over `objectives`.
///
/// A constant column maps to 0 for every member.
pub fn normalize_objectives(objectives: &[ObjectiveVector]) -> Vec<[f64; 2]> {
    let mut lo = [f64::INFINITY; 2];
    let mut hi = [f64::NEG_INFINITY; 2];
    for f in objectives {
        for i in 0..2 {
            lo[i] = lo[i].min(f[i]);
            hi[i] = hi[i].max(f[i]);
        }
    }
    objectives
        .iter()
        .map(|f| {
            std::array::from_fn(|i| {
                let span = hi[i] - lo[i];
                if span > 0.0 {
                    (f[i] - lo[i]) / span
                } else {
                    0.0
                }
            })
        })
        .collect()
}

/// Weighted Chebyshev value `max_i w_i · f̄_i`.
#[inline]
pub fn chebyshev_fitness(fbar: &[f64], w: &[f64]) -> f64 {
    debug_assert_eq!(fbar.len(), w.len());
    fbar.iter().zip(w).map(|(f, w)| f * w).fold(f64::NEG_INFINITY, f64::max)
}
