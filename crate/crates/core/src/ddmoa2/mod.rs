//! Descent-direction guided hybrid multiobjective algorithm.
//!
//! Each generation flags the population's leaders (the best member for at
//! least one Chebyshev weight vector), refreshes every member's two-column
//! search matrix with coordinate-search descent directions, adapts the
//! reproduction step sizes, and then mutates the tournament winners along
//! their search matrices before truncating back to `mu` members.

mod search;
mod selection;

use std::sync::Arc;

use rand::Rng as _;
use rand_distr::StandardNormal;

use crate::moea::{
    generate_weights, latin_hypercube, log_generation, nondominated_filter, Evaluator, ObjectiveVector, Problem, Rng,
    RunResult, Solution, WeightVectorSet,
};

pub use search::{coordinate_search, update_search_matrices, SearchOutcome};
pub use selection::{environmental_selection, parent_selection, scaled_fitness, select_leaders, selection_from_matrix};

#[derive(Debug, Clone, PartialEq)]
pub struct DdmoaConfig {
    /// Population size, also the number of weight vectors.
    pub mu: usize,
    /// Initial local-search step δ.
    pub delta0: f64,
    /// Initial reproduction step σ.
    pub sigma0: f64,
    /// Number of leader subpopulations.
    pub alpha: usize,
    pub delta_tol: f64,
    /// Learning rate for the step-size noise; `None` means `1/√(2n)`.
    pub tau: Option<f64>,
    pub max_evals: u64,
    /// Probe budget per representative; `None` means `min(2n, remaining/8)`.
    pub probe_cap: Option<u64>,
    pub log_reference: ObjectiveVector,
}

impl Default for DdmoaConfig {
    fn default() -> Self {
        Self {
            mu: 100,
            delta0: 0.4,
            sigma0: 5.0,
            alpha: 5,
            delta_tol: 1e-3,
            tau: None,
            max_evals: 100_000,
            probe_cap: None,
            log_reference: crate::metrics::DEFAULT_REFERENCE,
        }
    }
}

impl DdmoaConfig {
    pub fn tau_for(&self, n: usize) -> f64 {
        self.tau.unwrap_or_else(|| 1.0 / (2.0 * n as f64).sqrt())
    }

    fn probe_cap_for(&self, n: usize, remaining: u64) -> u64 {
        self.probe_cap.unwrap_or_else(|| (2 * n as u64).min(remaining / 8))
    }
}

/// Two descent directions stored as columns.
#[derive(Debug, Clone, PartialEq)]
pub struct SearchMatrix {
    pub columns: [Vec<f64>; 2],
}

impl SearchMatrix {
    pub fn zeros(n: usize) -> Self {
        Self {
            columns: [vec![0.0; n], vec![0.0; n]],
        }
    }

    /// `S ν` for a two-component `ν`.
    pub fn apply(&self, nu: [f64; 2]) -> Vec<f64> {
        self.columns[0]
            .iter()
            .zip(&self.columns[1])
            .map(|(a, b)| nu[0] * a + nu[1] * b)
            .collect()
    }
}

/// Population member with its strategy parameters.
#[derive(Debug, Clone)]
pub struct Individual {
    pub x: Vec<f64>,
    pub f: ObjectiveVector,
    pub eval_id: u64,
    /// Local-search step.
    pub delta: f64,
    /// Reproduction step.
    pub sigma: f64,
    /// Shared between a leader and the non-leaders that copied it.
    pub search: Arc<SearchMatrix>,
    pub is_leader: bool,
}

impl Individual {
    pub fn with_defaults(s: Solution, config: &DdmoaConfig, zero: &Arc<SearchMatrix>) -> Self {
        Self {
            x: s.x,
            f: s.f,
            eval_id: s.eval_id,
            delta: config.delta0,
            sigma: config.sigma0,
            search: Arc::clone(zero),
            is_leader: false,
        }
    }

    pub fn to_solution(&self) -> Solution {
        Solution {
            x: self.x.clone(),
            f: self.f,
            eval_id: self.eval_id,
        }
    }
}

pub(crate) fn objectives(pop: &[Individual]) -> Vec<ObjectiveVector> {
    pop.iter().map(|i| i.f).collect()
}

/// `max{exp(τ·z) · σ0^(1 − 3·used/max), δ_tol}` for a standard normal draw `z`.
pub fn step_size(config: &DdmoaConfig, tau: f64, fun_eval: u64, normal: f64) -> f64 {
    let progress = fun_eval as f64 / config.max_evals as f64;
    let sigma = (tau * normal).exp() * config.sigma0.powf(1.0 - 3.0 * progress);
    sigma.max(config.delta_tol)
}

/// Draws a fresh σ for every member.
pub fn update_step_sizes(pop: &mut [Individual], config: &DdmoaConfig, tau: f64, fun_eval: u64, rng: &mut Rng) {
    for ind in pop {
        let z: f64 = rng.sample(StandardNormal);
        ind.sigma = step_size(config, tau, fun_eval, z);
    }
}

/// Offspring position `clip(x + σ S ν)`.
pub fn mutate_point(ind: &Individual, nu: [f64; 2], bounds: &crate::moea::Bounds) -> Vec<f64> {
    let step = ind.search.apply(nu);
    ind.x
        .iter()
        .zip(step)
        .map(|(x, s)| bounds.clamp(x + ind.sigma * s))
        .collect()
}

/// Evaluates `counts[i]` mutants of every member and appends them. Stops
/// early when the budget runs out.
pub fn mutation<P: Problem + ?Sized>(
    pop: &mut Vec<Individual>,
    counts: &[usize],
    ev: &mut Evaluator<'_, P>,
    rng: &mut Rng,
) {
    let bounds = ev.problem().bounds();
    let parents = pop.len();
    'outer: for i in 0..parents {
        for _ in 0..counts[i] {
            let nu = [rng.random::<f64>(), rng.random::<f64>()];
            let x = mutate_point(&pop[i], nu, &bounds);
            let Some(s) = ev.evaluate(x) else {
                break 'outer;
            };
            let parent = &pop[i];
            let child = Individual {
                x: s.x,
                f: s.f,
                eval_id: s.eval_id,
                delta: parent.delta,
                sigma: parent.sigma,
                search: Arc::clone(&parent.search),
                is_leader: false,
            };
            pop.push(child);
        }
    }
}

/// Full run; returns the nondominated members of the final population.
pub fn run<P: Problem + ?Sized>(problem: &P, config: &DdmoaConfig, rng: &mut Rng) -> RunResult {
    let (result, _) = run_with_population(problem, config, rng);
    result
}

/// Like [`run`] but also hands back the final population.
pub fn run_with_population<P: Problem + ?Sized>(
    problem: &P,
    config: &DdmoaConfig,
    rng: &mut Rng,
) -> (RunResult, Vec<Individual>) {
    assert!(config.mu >= 2, "at least two weight vectors are needed");
    assert!(config.alpha >= 1);
    let n = problem.dimension();
    let bounds = problem.bounds();
    let tau = config.tau_for(n);
    let weights: WeightVectorSet = generate_weights(config.mu).expect("mu >= 2");
    let zero = Arc::new(SearchMatrix::zeros(n));
    let mut ev = Evaluator::new(problem, config.max_evals);

    let mut pop: Vec<Individual> = latin_hypercube(config.mu, n, &bounds, rng)
        .into_iter()
        .map(|x| Individual::with_defaults(ev.evaluate_unchecked(x), config, &zero))
        .collect();
    let mut log = Vec::new();
    let initial_leaders = select_leaders(&objectives(&pop), &weights);
    log_generation(
        &mut log,
        &ev,
        pop.len(),
        initial_leaders.iter().filter(|&&l| l).count(),
        config.log_reference,
    );

    while !ev.exhausted() {
        let leaders = select_leaders(&objectives(&pop), &weights);
        let n_leaders = leaders.iter().filter(|&&l| l).count();
        for (ind, l) in pop.iter_mut().zip(leaders) {
            ind.is_leader = l;
        }
        update_search_matrices(&mut pop, config, &zero, &mut ev, rng);
        update_step_sizes(&mut pop, config, tau, ev.budget().used, rng);
        let counts = parent_selection(&pop, &weights, rng);
        mutation(&mut pop, &counts, &mut ev, rng);
        let keep =
            environmental_selection(&objectives(&pop), &weights, config.mu).expect("population never shrinks below mu");
        let mut next = Vec::with_capacity(config.mu);
        let mut slots: Vec<Option<Individual>> = pop.into_iter().map(Some).collect();
        for i in keep {
            next.push(slots[i].take().expect("indices are unique"));
        }
        pop = next;
        log_generation(&mut log, &ev, pop.len(), n_leaders, config.log_reference);
    }

    let front = nondominated_filter(pop.iter().map(Individual::to_solution).collect());
    (
        RunResult {
            front,
            log,
            evaluations: ev.budget().used,
        },
        pop,
    )
}
