use crate::moea::{
    log_generation, nondominated_filter, polynomial_mutation, sbx_crossover, Evaluator, ObjectiveVector,
    PolynomialMutationParams, Problem, Rng, RunResult, SbxParams, Solution,
};

use super::{crowded_tournament, random_population, rank_and_crowding, truncate_by_rank_and_crowding};

#[derive(Debug, Clone, PartialEq)]
pub struct Nsga2Config {
    /// Even population size.
    pub pop_size: usize,
    pub sbx: SbxParams,
    /// `None` uses distribution index 20 and probability `1/n`.
    pub mutation: Option<PolynomialMutationParams>,
    pub max_evals: u64,
    pub log_reference: ObjectiveVector,
}

impl Default for Nsga2Config {
    fn default() -> Self {
        Self {
            pop_size: 100,
            sbx: SbxParams::default(),
            mutation: None,
            max_evals: 100_000,
            log_reference: crate::metrics::DEFAULT_REFERENCE,
        }
    }
}

pub fn nsga2_run<P: Problem + ?Sized>(problem: &P, config: &Nsga2Config, rng: &mut Rng) -> RunResult {
    assert!(
        config.pop_size >= 2 && config.pop_size.is_multiple_of(2),
        "pop_size must be even"
    );
    let n = problem.dimension();
    let bounds = problem.bounds();
    let mutation = config
        .mutation
        .unwrap_or_else(|| PolynomialMutationParams::for_dimension(n));
    let mut ev = Evaluator::new(problem, config.max_evals);
    let mut pop: Vec<Solution> = random_population(config.pop_size, n, &bounds, rng)
        .into_iter()
        .map(|x| ev.evaluate_unchecked(x))
        .collect();
    let mut log = Vec::new();
    let objs = |p: &[Solution]| p.iter().map(|s| s.f).collect::<Vec<_>>();
    let (mut rank, mut crowd) = rank_and_crowding(&objs(&pop));
    log_generation(
        &mut log,
        &ev,
        pop.len(),
        rank.iter().filter(|&&r| r == 0).count(),
        config.log_reference,
    );

    while !ev.exhausted() {
        let mut offspring = Vec::with_capacity(config.pop_size);
        'fill: while offspring.len() < config.pop_size {
            let a = crowded_tournament(&rank, &crowd, rng);
            let b = crowded_tournament(&rank, &crowd, rng);
            let (mut c1, mut c2) = sbx_crossover(&pop[a].x, &pop[b].x, &config.sbx, &bounds, rng);
            polynomial_mutation(&mut c1, &mutation, &bounds, rng);
            polynomial_mutation(&mut c2, &mutation, &bounds, rng);
            for child in [c1, c2] {
                match ev.evaluate(child) {
                    Some(s) => offspring.push(s),
                    None => break 'fill,
                }
            }
        }
        pop.extend(offspring);
        let keep = truncate_by_rank_and_crowding(&objs(&pop), config.pop_size);
        pop = keep.into_iter().map(|i| pop[i].clone()).collect();
        (rank, crowd) = rank_and_crowding(&objs(&pop));
        log_generation(
            &mut log,
            &ev,
            pop.len(),
            rank.iter().filter(|&&r| r == 0).count(),
            config.log_reference,
        );
    }

    RunResult {
        front: nondominated_filter(pop),
        log,
        evaluations: ev.budget().used,
    }
}
