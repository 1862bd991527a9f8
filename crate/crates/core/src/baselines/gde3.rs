use rand::Rng as _;

use crate::moea::{
    de_rand_1_bin_indexed, log_generation, nondominated_filter, Evaluator, ObjectiveVector, Problem, Rng, RunResult,
    Solution,
};

use super::{random_population, truncate_by_rank_and_crowding};

#[derive(Debug, Clone, PartialEq)]
pub struct Gde3Config {
    pub pop_size: usize,
    pub f: f64,
    pub cr: f64,
    pub max_evals: u64,
    pub log_reference: ObjectiveVector,
}

impl Default for Gde3Config {
    fn default() -> Self {
        Self {
            pop_size: 100,
            f: 0.5,
            cr: 0.5,
            max_evals: 100_000,
            log_reference: crate::metrics::DEFAULT_REFERENCE,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Gde3Outcome {
    /// Trial weakly dominates the target and replaces it.
    Trial,
    /// Target dominates the trial.
    Target,
    /// Neither dominates: both go to the next population.
    Both,
}

/// Selection between a feasible target and its trial.
pub fn gde3_select(target: &ObjectiveVector, trial: &ObjectiveVector) -> Gde3Outcome {
    if trial.weakly_dominates(target) {
        Gde3Outcome::Trial
    } else if target.dominates(trial) {
        Gde3Outcome::Target
    } else {
        Gde3Outcome::Both
    }
}

fn pick_donors(rng: &mut Rng, size: usize, target: usize) -> [usize; 3] {
    let mut donors = [usize::MAX; 3];
    let mut k = 0;
    while k < 3 {
        let r = rng.random_range(0..size);
        if r != target && !donors[..k].contains(&r) {
            donors[k] = r;
            k += 1;
        }
    }
    donors
}

pub fn gde3_run<P: Problem + ?Sized>(problem: &P, config: &Gde3Config, rng: &mut Rng) -> RunResult {
    assert!(config.pop_size >= 4, "DE/rand/1 needs at least four members");
    let n = problem.dimension();
    let bounds = problem.bounds();
    let mut ev = Evaluator::new(problem, config.max_evals);
    let mut pop: Vec<Solution> = random_population(config.pop_size, n, &bounds, rng)
        .into_iter()
        .map(|x| ev.evaluate_unchecked(x))
        .collect();
    let mut log = Vec::new();
    log_generation(
        &mut log,
        &ev,
        pop.len(),
        nondominated_filter(pop.clone()).len(),
        config.log_reference,
    );

    while !ev.exhausted() {
        let xs: Vec<Vec<f64>> = pop.iter().map(|s| s.x.clone()).collect();
        let mut next = Vec::with_capacity(2 * pop.len());
        for (i, target) in pop.iter().enumerate() {
            let donors = pick_donors(rng, xs.len(), i);
            let trial = de_rand_1_bin_indexed(&xs, i, donors, config.f, config.cr, &bounds, rng)
                .expect("donors are distinct from the target");
            let Some(trial) = ev.evaluate(trial) else {
                next.push(target.clone());
                continue;
            };
            match gde3_select(&target.f, &trial.f) {
                Gde3Outcome::Trial => next.push(trial),
                Gde3Outcome::Target => next.push(target.clone()),
                Gde3Outcome::Both => {
                    next.push(target.clone());
                    next.push(trial);
                }
            }
        }
        debug_assert!(next.len() >= config.pop_size);
        if next.len() > config.pop_size {
            let objs: Vec<ObjectiveVector> = next.iter().map(|s| s.f).collect();
            let keep = truncate_by_rank_and_crowding(&objs, config.pop_size);
            next = keep.into_iter().map(|i| next[i].clone()).collect();
        }
        pop = next;
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
