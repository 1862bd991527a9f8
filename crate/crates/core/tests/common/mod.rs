//! Independent reference implementations used as test oracles.
#![allow(dead_code)]

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Table values, written out here rather than taken from the library.
const B: f64 = 1.0;
const BETA_MH: f64 = 0.375;
const BETA_HM: f64 = 0.375;
const MU_H: f64 = 1.0 / (71.0 * 365.0);
const ETA_H: f64 = 1.0 / 3.0;
const MU_M: f64 = 1.0 / 11.0;
const PHI: f64 = 6.0;
const MU_A: f64 = 1.0 / 4.0;
const ETA_A: f64 = 0.08;
const ETA_M: f64 = 1.0 / 11.0;
const NU_H: f64 = 1.0 / 4.0;
const M: f64 = 6.0;
const K: f64 = 3.0;

pub const Y0: [f64; 8] = [0.99865, 0.00035, 0.001, 0.0, 1.0, 1.0, 0.0, 0.0];
pub const HORIZON: f64 = 84.0;

pub fn rhs(y: &[f64; 8], c: f64) -> [f64; 8] {
    let [sh, eh, ih, rh, am, sm, em, im] = *y;
    [
        MU_H - (B * BETA_MH * M * im + MU_H) * sh,
        B * BETA_MH * M * im * sh - (NU_H + MU_H) * eh,
        NU_H * eh - (ETA_H + MU_H) * ih,
        ETA_H * ih - MU_H * rh,
        PHI * (M / K) * (1.0 - am) * (sm + em + im) - (ETA_A + MU_A) * am,
        ETA_A * (K / M) * am - (B * BETA_HM * ih + MU_M) * sm - c * sm,
        B * BETA_HM * ih * sm - (MU_M + ETA_M) * em - c * em,
        ETA_M * em - MU_M * im - c * im,
    ]
}

fn axpy(y: &[f64; 8], a: f64, k: &[f64; 8]) -> [f64; 8] {
    std::array::from_fn(|i| y[i] + a * k[i])
}

/// Classical RK4 with `steps` uniform steps over the horizon, control given
/// as a function of time.
pub fn integrate(steps: usize, control: impl Fn(f64) -> f64) -> Vec<[f64; 8]> {
    let h = HORIZON / steps as f64;
    let mut y = Y0;
    let mut out = vec![y];
    for s in 0..steps {
        let t = s as f64 * h;
        let k1 = rhs(&y, control(t));
        let k2 = rhs(&axpy(&y, h / 2.0, &k1), control(t + h / 2.0));
        let k3 = rhs(&axpy(&y, h / 2.0, &k2), control(t + h / 2.0));
        let k4 = rhs(&axpy(&y, h, &k3), control(t + h));
        y = std::array::from_fn(|i| y[i] + h / 6.0 * (k1[i] + 2.0 * k2[i] + 2.0 * k3[i] + k4[i]));
        out.push(y);
    }
    out
}

/// Piecewise-linear interpolation of node values on the uniform grid.
pub fn interpolate(nodes: &[f64]) -> impl Fn(f64) -> f64 + '_ {
    let h = HORIZON / (nodes.len() - 1) as f64;
    move |t| {
        let pos = (t / h).clamp(0.0, (nodes.len() - 1) as f64);
        let i = (pos.floor() as usize).min(nodes.len() - 2);
        let w = pos - i as f64;
        nodes[i] * (1.0 - w) + nodes[i + 1] * w
    }
}

pub fn trapezoid(values: &[f64], h: f64) -> f64 {
    values.windows(2).map(|w| 0.5 * h * (w[0] + w[1])).sum()
}

/// `∫ i_h dt` from a fine integration.
pub fn fine_f1(steps: usize, control: impl Fn(f64) -> f64) -> f64 {
    let traj = integrate(steps, control);
    let ih: Vec<f64> = traj.iter().map(|y| y[2].max(0.0)).collect();
    trapezoid(&ih, HORIZON / steps as f64)
}

pub fn dominates(a: [f64; 2], b: [f64; 2]) -> bool {
    a[0] <= b[0] && a[1] <= b[1] && (a[0] < b[0] || a[1] < b[1])
}

/// Indices not dominated by any other point, O(N²).
pub fn brute_nondominated(points: &[[f64; 2]]) -> Vec<usize> {
    (0..points.len())
        .filter(|&i| !points.iter().any(|q| dominates(*q, points[i])))
        .collect()
}

/// Front ranks by repeated peeling with the brute-force filter.
pub fn peel_ranks(points: &[[f64; 2]]) -> Vec<usize> {
    let mut rank = vec![usize::MAX; points.len()];
    let mut left: Vec<usize> = (0..points.len()).collect();
    let mut r = 0;
    while !left.is_empty() {
        let sub: Vec<[f64; 2]> = left.iter().map(|&i| points[i]).collect();
        let front: Vec<usize> = brute_nondominated(&sub).into_iter().map(|k| left[k]).collect();
        for &i in &front {
            rank[i] = r;
        }
        left.retain(|i| !front.contains(i));
        r += 1;
    }
    rank
}

/// Monte Carlo hypervolume estimate and its standard error.
pub fn mc_hypervolume(points: &[[f64; 2]], reference: [f64; 2], samples: usize, seed: u64) -> (f64, f64) {
    let lo = [
        points.iter().map(|p| p[0]).fold(reference[0], f64::min),
        points.iter().map(|p| p[1]).fold(reference[1], f64::min),
    ];
    let area = (reference[0] - lo[0]) * (reference[1] - lo[1]);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut hits = 0usize;
    for _ in 0..samples {
        let z = [
            lo[0] + rng.random::<f64>() * (reference[0] - lo[0]),
            lo[1] + rng.random::<f64>() * (reference[1] - lo[1]),
        ];
        if points.iter().any(|p| p[0] <= z[0] && p[1] <= z[1]) {
            hits += 1;
        }
    }
    let p = hits as f64 / samples as f64;
    (area * p, area * (p * (1.0 - p) / samples as f64).sqrt())
}

/// Random point sets with duplicates and shared coordinates mixed in.
pub fn random_points(rng: &mut ChaCha8Rng, max_len: usize) -> Vec<[f64; 2]> {
    let len = rng.random_range(1..=max_len);
    let grid = rng.random_bool(0.5);
    let mut pts: Vec<[f64; 2]> = (0..len)
        .map(|_| {
            if grid {
                [
                    rng.random_range(0..20) as f64 / 4.0,
                    rng.random_range(0..20) as f64 / 4.0,
                ]
            } else {
                [rng.random::<f64>() * 5.0, rng.random::<f64>() * 5.0]
            }
        })
        .collect();
    if len > 2 {
        let a = rng.random_range(0..len);
        let b = rng.random_range(0..len);
        pts[a] = pts[b];
    }
    pts
}
