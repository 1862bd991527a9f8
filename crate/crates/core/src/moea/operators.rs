use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};

use super::Bounds;

/// `count` points in `bounds^n`, one per stratum in every coordinate.
pub fn latin_hypercube<R: Rng + ?Sized>(count: usize, n: usize, bounds: &Bounds, rng: &mut R) -> Vec<Vec<f64>> {
    let mut points = vec![vec![0.0; n]; count];
    let width = bounds.width() / count as f64;
    let mut strata: Vec<usize> = (0..count).collect();
    for d in 0..n {
        strata.shuffle(rng);
        for (p, &s) in points.iter_mut().zip(&strata) {
            let lo = bounds.lower + s as f64 * width;
            // Stay strictly below the stratum's upper edge.
            p[d] = (lo + rng.random::<f64>() * width).min(next_below(lo + width));
        }
    }
    points
}

fn next_below(v: f64) -> f64 {
    if v > 0.0 {
        f64::from_bits(v.to_bits() - 1)
    } else {
        v
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SbxParams {
    pub eta: f64,
    pub probability: f64,
}

impl Default for SbxParams {
    fn default() -> Self {
        Self {
            eta: 20.0,
            probability: 0.9,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PolynomialMutationParams {
    pub eta: f64,
    pub probability: f64,
}

impl PolynomialMutationParams {
    /// Distribution index 20, per-variable probability `1/n`.
    pub fn for_dimension(n: usize) -> Self {
        Self {
            eta: 20.0,
            probability: 1.0 / n.max(1) as f64,
        }
    }
}

/// SBX spread factor β for a uniform draw `u`.
pub fn sbx_spread_factor(u: f64, eta: f64) -> f64 {
    let e = 1.0 / (eta + 1.0);
    if u <= 0.5 {
        (2.0 * u).powf(e)
    } else {
        (1.0 / (2.0 * (1.0 - u))).powf(e)
    }
}

/// Children values for one variable given the spread factor.
#[inline]
pub fn sbx_children(p1: f64, p2: f64, beta: f64) -> (f64, f64) {
    (
        0.5 * ((1.0 + beta) * p1 + (1.0 - beta) * p2),
        0.5 * ((1.0 - beta) * p1 + (1.0 + beta) * p2),
    )
}

/// Simulated binary crossover; each variable recombines with probability ½
/// once the pair is selected for crossover.
pub fn sbx_crossover<R: Rng + ?Sized>(
    p1: &[f64],
    p2: &[f64],
    params: &SbxParams,
    bounds: &Bounds,
    rng: &mut R,
) -> (Vec<f64>, Vec<f64>) {
    let mut c1 = p1.to_vec();
    let mut c2 = p2.to_vec();
    if rng.random::<f64>() < params.probability {
        for i in 0..p1.len() {
            if rng.random::<f64>() < 0.5 {
                let beta = sbx_spread_factor(rng.random(), params.eta);
                let (a, b) = sbx_children(p1[i], p2[i], beta);
                c1[i] = bounds.clamp(a);
                c2[i] = bounds.clamp(b);
            }
        }
    }
    (c1, c2)
}

/// Polynomial perturbation δ ∈ [−1, 1] for a uniform draw `u`.
pub fn polynomial_perturbation(u: f64, eta: f64) -> f64 {
    let e = 1.0 / (eta + 1.0);
    if u < 0.5 {
        (2.0 * u).powf(e) - 1.0
    } else {
        1.0 - (2.0 * (1.0 - u)).powf(e)
    }
}

pub fn polynomial_mutation<R: Rng + ?Sized>(
    x: &mut [f64],
    params: &PolynomialMutationParams,
    bounds: &Bounds,
    rng: &mut R,
) {
    for v in x.iter_mut() {
        if rng.random::<f64>() < params.probability {
            let delta = polynomial_perturbation(rng.random(), params.eta);
            *v = bounds.clamp(*v + delta * bounds.width());
        }
    }
}

/// DE/rand/1/bin trial: `r1 + F (r2 − r3)` crossed binomially with `target`.
#[allow(clippy::too_many_arguments)]
pub fn de_rand_1_bin<R: Rng + ?Sized>(
    target: &[f64],
    r1: &[f64],
    r2: &[f64],
    r3: &[f64],
    f: f64,
    cr: f64,
    bounds: &Bounds,
    rng: &mut R,
) -> Vec<f64> {
    let n = target.len();
    let forced = rng.random_range(0..n);
    (0..n)
        .map(|j| {
            if j == forced || rng.random::<f64>() < cr {
                bounds.clamp(r1[j] + f * (r2[j] - r3[j]))
            } else {
                target[j]
            }
        })
        .collect()
}

/// [`de_rand_1_bin`] on population members, requiring four distinct indices.
#[allow(clippy::too_many_arguments)]
pub fn de_rand_1_bin_indexed<R: Rng + ?Sized>(
    population: &[Vec<f64>],
    target: usize,
    donors: [usize; 3],
    f: f64,
    cr: f64,
    bounds: &Bounds,
    rng: &mut R,
) -> Result<Vec<f64>> {
    let all = [target, donors[0], donors[1], donors[2]];
    for i in 0..4 {
        if all[i + 1..].contains(&all[i]) {
            return Err(Error::IndicesNotDistinct(all));
        }
    }
    Ok(de_rand_1_bin(
        &population[target],
        &population[donors[0]],
        &population[donors[1]],
        &population[donors[2]],
        f,
        cr,
        bounds,
        rng,
    ))
}
