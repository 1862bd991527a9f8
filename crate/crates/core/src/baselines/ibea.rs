use rand::Rng as _;

use crate::moea::{
    log_generation, nondominated_filter, normalize_objectives, polynomial_mutation, sbx_crossover, Evaluator,
    ObjectiveVector, PolynomialMutationParams, Problem, Rng, RunResult, SbxParams, Solution,
};

use super::random_population;

#[derive(Debug, Clone, PartialEq)]
pub struct IbeaConfig {
    pub pop_size: usize,
    /// Fitness scaling factor κ.
    pub kappa: f64,
    pub sbx: SbxParams,
    pub mutation: Option<PolynomialMutationParams>,
    pub max_evals: u64,
    pub log_reference: ObjectiveVector,
}

impl Default for IbeaConfig {
    fn default() -> Self {
        Self {
            pop_size: 100,
            kappa: 0.05,
            sbx: SbxParams::default(),
            mutation: None,
            max_evals: 100_000,
            log_reference: crate::metrics::DEFAULT_REFERENCE,
        }
    }
}

/// Additive ε-indicator: the smallest shift making `a` weakly dominate `b`.
pub fn epsilon_indicator(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(a, b)| a - b).fold(f64::NEG_INFINITY, f64::max)
}

struct IndicatorTable {
    /// `indicator[y][x] = I(y, x)` on normalized objectives.
    indicator: Vec<Vec<f64>>,
    scale: f64,
}

impl IndicatorTable {
    fn new(objectives: &[ObjectiveVector], kappa: f64) -> Self {
        let norm = normalize_objectives(objectives);
        let indicator: Vec<Vec<f64>> = norm
            .iter()
            .map(|y| norm.iter().map(|x| epsilon_indicator(y, x)).collect())
            .collect();
        let c = indicator.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
        let c = if c > 0.0 { c } else { 1.0 };
        Self {
            indicator,
            scale: c * kappa,
        }
    }

    fn contribution(&self, y: usize, x: usize) -> f64 {
        (-self.indicator[y][x] / self.scale).exp()
    }
}

/// `F(x) = Σ_{y≠x} −exp(−I(y, x) / (c·κ))`, with `c` the largest |I| in the
/// population.
pub fn ibea_fitness(objectives: &[ObjectiveVector], kappa: f64) -> Vec<f64> {
    let table = IndicatorTable::new(objectives, kappa);
    fitness_from(&table, objectives.len())
}

fn fitness_from(table: &IndicatorTable, n: usize) -> Vec<f64> {
    (0..n)
        .map(|x| (0..n).filter(|&y| y != x).map(|y| -table.contribution(y, x)).sum())
        .collect()
}

/// Iteratively drops the worst member until `keep` remain. Returns the
/// surviving indices (ascending) and the removal order.
pub fn ibea_truncate(objectives: &[ObjectiveVector], kappa: f64, keep: usize) -> (Vec<usize>, Vec<usize>) {
    let n = objectives.len();
    let table = IndicatorTable::new(objectives, kappa);
    let mut fitness = fitness_from(&table, n);
    let mut alive = vec![true; n];
    let mut removed = Vec::new();
    for _ in keep..n {
        let worst = (0..n)
            .filter(|&i| alive[i])
            .fold(None, |best: Option<usize>, i| match best {
                Some(b) if fitness[b] <= fitness[i] => Some(b),
                _ => Some(i),
            })
            .expect("population larger than keep");
        alive[worst] = false;
        removed.push(worst);
        for x in (0..n).filter(|&i| alive[i]) {
            fitness[x] += table.contribution(worst, x);
        }
    }
    ((0..n).filter(|&i| alive[i]).collect(), removed)
}

pub fn ibea_run<P: Problem + ?Sized>(problem: &P, config: &IbeaConfig, rng: &mut Rng) -> RunResult {
    assert!(config.kappa > 0.0, "kappa must be positive");
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

    loop {
        let objs: Vec<ObjectiveVector> = pop.iter().map(|s| s.f).collect();
        let (keep, _) = ibea_truncate(&objs, config.kappa, config.pop_size.min(pop.len()));
        pop = keep.into_iter().map(|i| pop[i].clone()).collect();
        let front_size = nondominated_filter(pop.clone()).len();
        log_generation(&mut log, &ev, pop.len(), front_size, config.log_reference);
        if ev.exhausted() {
            break;
        }

        let fitness = ibea_fitness(&pop.iter().map(|s| s.f).collect::<Vec<_>>(), config.kappa);
        let tournament = |rng: &mut Rng| {
            let a = rng.random_range(0..pop.len());
            let b = rng.random_range(0..pop.len());
            if fitness[b] > fitness[a] || (fitness[b] == fitness[a] && b < a) {
                b
            } else {
                a
            }
        };
        let mut offspring = Vec::with_capacity(config.pop_size);
        'fill: while offspring.len() < config.pop_size {
            let a = tournament(rng);
            let b = tournament(rng);
            let (mut c1, mut c2) = sbx_crossover(&pop[a].x, &pop[b].x, &config.sbx, &bounds, rng);
            polynomial_mutation(&mut c1, &mutation, &bounds, rng);
            polynomial_mutation(&mut c2, &mutation, &bounds, rng);
            for child in [c1, c2] {
                if offspring.len() == config.pop_size {
                    break 'fill;
                }
                match ev.evaluate(child) {
                    Some(s) => offspring.push(s),
                    None => break 'fill,
                }
            }
        }
        pop.extend(offspring);
    }

    RunResult {
        front: nondominated_filter(pop),
        log,
        evaluations: ev.budget().used,
    }
}
