use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::moea::{
    de_rand_1_bin, generate_weights, log_generation, nondominated_filter, polynomial_mutation, Evaluator,
    ObjectiveVector, PolynomialMutationParams, Problem, Rng, RunResult, Solution,
};

use super::random_population;

/// MOEA/D with the DE operator.
#[derive(Debug, Clone, PartialEq)]
pub struct MoeadConfig {
    /// Population size, equal to the number of weight vectors.
    pub pop_size: usize,
    /// Neighborhood size T.
    pub neighborhood_size: usize,
    /// Probability of mating inside the neighborhood.
    pub neighborhood_prob: f64,
    /// Maximum replacements per child.
    pub max_replaced: usize,
    pub f: f64,
    pub cr: f64,
    pub mutation: Option<PolynomialMutationParams>,
    pub max_evals: u64,
    pub log_reference: ObjectiveVector,
}

impl Default for MoeadConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            neighborhood_size: 20,
            neighborhood_prob: 0.9,
            max_replaced: 2,
            f: 0.5,
            cr: 1.0,
            mutation: None,
            max_evals: 100_000,
            log_reference: crate::metrics::DEFAULT_REFERENCE,
        }
    }
}

/// Tchebycheff value `max_i w_i |f_i − z_i|`; zero weights count as 1e-4.
pub fn tchebycheff(f: &ObjectiveVector, w: &[f64; 2], ideal: &[f64; 2]) -> f64 {
    (0..2)
        .map(|i| {
            let w = if w[i] == 0.0 { 1e-4 } else { w[i] };
            w * (f[i] - ideal[i]).abs()
        })
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Replaces at most `max_replaced` members of `pool` (visited in the given
/// order) whose subproblem value `child` matches or improves. Returns the
/// number of replacements.
pub fn replace_in_pool(
    pop: &mut [Solution],
    weights: &[[f64; 2]],
    pool: &[usize],
    child: &Solution,
    ideal: &[f64; 2],
    max_replaced: usize,
) -> usize {
    let mut replaced = 0;
    for &j in pool {
        if replaced >= max_replaced {
            break;
        }
        if tchebycheff(&child.f, &weights[j], ideal) <= tchebycheff(&pop[j].f, &weights[j], ideal) {
            pop[j] = child.clone();
            replaced += 1;
        }
    }
    replaced
}

pub fn moead_run<P: Problem + ?Sized>(problem: &P, config: &MoeadConfig, rng: &mut Rng) -> RunResult {
    assert!(
        config.neighborhood_size >= 2 && config.neighborhood_size <= config.pop_size,
        "neighborhood size must lie in [2, pop_size]"
    );
    assert!(config.max_replaced >= 1);
    let n = problem.dimension();
    let bounds = problem.bounds();
    let mutation = config
        .mutation
        .unwrap_or_else(|| PolynomialMutationParams::for_dimension(n));
    let weights = generate_weights(config.pop_size).expect("pop_size >= 2");
    let neighborhoods: Vec<Vec<usize>> = (0..config.pop_size)
        .map(|i| weights.neighborhood(i, config.neighborhood_size))
        .collect();
    let everyone: Vec<usize> = (0..config.pop_size).collect();

    let mut ev = Evaluator::new(problem, config.max_evals);
    let mut pop: Vec<Solution> = random_population(config.pop_size, n, &bounds, rng)
        .into_iter()
        .map(|x| ev.evaluate_unchecked(x))
        .collect();
    let mut ideal = [f64::INFINITY; 2];
    for s in &pop {
        for i in 0..2 {
            ideal[i] = ideal[i].min(s.f[i]);
        }
    }
    let mut log = Vec::new();
    log_generation(
        &mut log,
        &ev,
        pop.len(),
        nondominated_filter(pop.clone()).len(),
        config.log_reference,
    );

    let mut order = everyone.clone();
    'run: while !ev.exhausted() {
        order.shuffle(rng);
        for &i in &order {
            let local = rng.random::<f64>() < config.neighborhood_prob;
            let pool = if local { &neighborhoods[i] } else { &everyone };
            let candidates: Vec<usize> = pool.iter().copied().filter(|&j| j != i).collect();
            let r2 = candidates[rng.random_range(0..candidates.len())];
            let r3 = loop {
                let r = candidates[rng.random_range(0..candidates.len())];
                if r != r2 || candidates.len() == 1 {
                    break r;
                }
            };
            let mut y = de_rand_1_bin(
                &pop[i].x, &pop[i].x, &pop[r2].x, &pop[r3].x, config.f, config.cr, &bounds, rng,
            );
            polynomial_mutation(&mut y, &mutation, &bounds, rng);
            let Some(child) = ev.evaluate(y) else {
                break 'run;
            };
            for k in 0..2 {
                ideal[k] = ideal[k].min(child.f[k]);
            }
            let mut visit = pool.clone();
            visit.shuffle(rng);
            replace_in_pool(&mut pop, weights.vectors(), &visit, &child, &ideal, config.max_replaced);
        }
        log_generation(
            &mut log,
            &ev,
            pop.len(),
            nondominated_filter(pop.clone()).len(),
            config.log_reference,
        );
    }
    if log.last().map(|r| r.fun_eval) != Some(ev.budget().used) {
        log_generation(
            &mut log,
            &ev,
            pop.len(),
            nondominated_filter(pop.clone()).len(),
            config.log_reference,
        );
    }

    RunResult {
        front: nondominated_filter(pop),
        log,
        evaluations: ev.budget().used,
    }
}
