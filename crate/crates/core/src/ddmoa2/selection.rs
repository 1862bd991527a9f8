use rand::Rng as _;

use crate::error::{Error, Result};
use crate::moea::{chebyshev_fitness, normalize_objectives, ObjectiveVector, Rng, WeightVectorSet};

use super::Individual;

const DENOMINATOR_FLOOR: f64 = 1e-12;

/// Chebyshev values on min-max normalized objectives: `m[i][j]` for member
/// `i` and weight vector `j`.
fn chebyshev_matrix(objectives: &[ObjectiveVector], weights: &WeightVectorSet) -> Vec<Vec<f64>> {
    normalize_objectives(objectives)
        .iter()
        .map(|f| weights.vectors().iter().map(|w| chebyshev_fitness(f, w)).collect())
        .collect()
}

fn argmin(values: impl Iterator<Item = f64>) -> Option<usize> {
    values
        .enumerate()
        .fold(None, |best: Option<(usize, f64)>, (i, v)| match best {
            Some((_, b)) if b <= v => best,
            _ => Some((i, v)),
        })
        .map(|(i, _)| i)
}

/// Flags the Chebyshev minimizer of every weight vector. Ties go to the
/// lowest index.
pub fn select_leaders(objectives: &[ObjectiveVector], weights: &WeightVectorSet) -> Vec<bool> {
    let m = chebyshev_matrix(objectives, weights);
    let mut leader = vec![false; objectives.len()];
    for j in 0..weights.len() {
        if let Some(i) = argmin(m.iter().map(|row| row[j])) {
            leader[i] = true;
        }
    }
    leader
}

/// Tournament winners per weight vector: one round among leaders, one among
/// the rest. Returns how many offspring each member produces.
pub fn parent_selection(pop: &[Individual], weights: &WeightVectorSet, rng: &mut Rng) -> Vec<usize> {
    let objectives: Vec<ObjectiveVector> = pop.iter().map(|i| i.f).collect();
    let m = chebyshev_matrix(&objectives, weights);
    let leaders: Vec<usize> = (0..pop.len()).filter(|&i| pop[i].is_leader).collect();
    let others: Vec<usize> = (0..pop.len()).filter(|&i| !pop[i].is_leader).collect();
    let mut counts = vec![0; pop.len()];
    for group in [&leaders, &others] {
        if group.is_empty() {
            continue;
        }
        for j in 0..weights.len() {
            let a = group[rng.random_range(0..group.len())];
            let b = group[rng.random_range(0..group.len())];
            let winner = if m[b][j] < m[a][j] || (m[b][j] == m[a][j] && b < a) {
                b
            } else {
                a
            };
            counts[winner] += 1;
        }
    }
    counts
}

/// Per-row fitness of a member-by-weight matrix. Each column is divided by
/// its minimum; the minimizing row is divided by the runner-up instead, so
/// it scores below 1 exactly when it is the unique best.
pub fn scaled_fitness(m: &[Vec<f64>]) -> Vec<f64> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut fitness = vec![f64::INFINITY; rows];
    for j in 0..cols {
        let Some(best) = argmin(m.iter().map(|r| r[j])) else {
            continue;
        };
        let runner_up = (0..rows)
            .filter(|&i| i != best)
            .map(|i| m[i][j])
            .fold(f64::INFINITY, f64::min);
        let lowest = m[best][j].max(DENOMINATOR_FLOOR);
        let second = runner_up.max(DENOMINATOR_FLOOR);
        for i in 0..rows {
            let v = m[i][j] / if i == best { second } else { lowest };
            fitness[i] = fitness[i].min(v);
        }
    }
    fitness
}

/// Keeps the `mu` rows with the smallest scaled fitness (ties by index),
/// returned in ascending index order.
pub fn selection_from_matrix(m: &[Vec<f64>], mu: usize) -> Vec<usize> {
    let fitness = scaled_fitness(m);
    let mut order: Vec<usize> = (0..m.len()).collect();
    order.sort_by(|&a, &b| fitness[a].total_cmp(&fitness[b]).then(a.cmp(&b)));
    order.truncate(mu);
    order.sort_unstable();
    order
}

pub fn environmental_selection(
    objectives: &[ObjectiveVector],
    weights: &WeightVectorSet,
    mu: usize,
) -> Result<Vec<usize>> {
    if objectives.len() < mu {
        return Err(Error::PopulationTooSmall {
            size: objectives.len(),
            mu,
        });
    }
    Ok(selection_from_matrix(&chebyshev_matrix(objectives, weights), mu))
}
