//! Shared multiobjective machinery: dominance, scalarization, variation
//! operators, budgets and archives used by every optimizer in the crate.

mod archive;
mod dominance;
mod io;
mod operators;
mod scalarize;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub use archive::{nondominated_filter, FrontArchive};
pub use dominance::{dominates, dominates_slices, weakly_dominates, ObjectiveVector};
pub use io::{read_front_csv, read_sidecar_csv, write_front_csv, write_sidecar_csv};
pub use operators::{
    de_rand_1_bin, de_rand_1_bin_indexed, latin_hypercube, polynomial_mutation, polynomial_perturbation, sbx_children,
    sbx_crossover, sbx_spread_factor, PolynomialMutationParams, SbxParams,
};
pub use scalarize::{chebyshev_fitness, generate_weights, normalize_objectives, WeightVectorSet};

/// Generator used by every stochastic routine.
pub type Rng = ChaCha8Rng;

/// Generator for run `run_index` of a campaign seeded with `base_seed`.
///
/// Each run owns a single stream seeded with `base_seed + run_index`; nothing
/// inside a run forks or shares it.
pub fn run_rng(base_seed: u64, run_index: u64) -> Rng {
    Rng::seed_from_u64(base_seed.wrapping_add(run_index))
}

/// Axis-aligned box shared by every coordinate.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Bounds {
    pub lower: f64,
    pub upper: f64,
}

impl Bounds {
    pub const UNIT: Bounds = Bounds { lower: 0.0, upper: 1.0 };

    pub fn width(&self) -> f64 {
        self.upper - self.lower
    }

    #[inline]
    pub fn clamp(&self, v: f64) -> f64 {
        v.max(self.lower).min(self.upper)
    }

    pub fn project(&self, x: &mut [f64]) {
        for v in x {
            *v = self.clamp(*v);
        }
    }

    pub fn contains(&self, x: &[f64]) -> bool {
        x.iter().all(|v| (self.lower..=self.upper).contains(v))
    }
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds::UNIT
    }
}

/// A box-constrained biobjective minimization problem.
pub trait Problem: Sync {
    fn dimension(&self) -> usize;

    fn bounds(&self) -> Bounds {
        Bounds::UNIT
    }

    fn evaluate(&self, x: &[f64]) -> ObjectiveVector;
}

impl<P: Problem + ?Sized> Problem for &P {
    fn dimension(&self) -> usize {
        (**self).dimension()
    }

    fn bounds(&self) -> Bounds {
        (**self).bounds()
    }

    fn evaluate(&self, x: &[f64]) -> ObjectiveVector {
        (**self).evaluate(x)
    }
}

/// An evaluated decision vector.
#[derive(Debug, Clone, PartialEq)]
pub struct Solution {
    pub x: Vec<f64>,
    pub f: ObjectiveVector,
    /// Position of this evaluation in the run, starting at 0.
    pub eval_id: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EvaluationBudget {
    pub used: u64,
    pub max: u64,
}

impl EvaluationBudget {
    pub fn new(max: u64) -> Self {
        Self { used: 0, max }
    }

    pub fn remaining(&self) -> u64 {
        self.max.saturating_sub(self.used)
    }

    pub fn exhausted(&self) -> bool {
        self.used >= self.max
    }
}

/// Counts objective evaluations against a budget and keeps the nondominated
/// union of everything evaluated so far.
pub struct Evaluator<'a, P: Problem + ?Sized> {
    problem: &'a P,
    budget: EvaluationBudget,
    archive: Vec<ObjectiveVector>,
}

impl<'a, P: Problem + ?Sized> Evaluator<'a, P> {
    pub fn new(problem: &'a P, max_evals: u64) -> Self {
        Self {
            problem,
            budget: EvaluationBudget::new(max_evals),
            archive: Vec::new(),
        }
    }

    pub fn problem(&self) -> &P {
        self.problem
    }

    pub fn budget(&self) -> EvaluationBudget {
        self.budget
    }

    pub fn exhausted(&self) -> bool {
        self.budget.exhausted()
    }

    pub fn remaining(&self) -> u64 {
        self.budget.remaining()
    }

    /// Evaluates `x` unless the budget is spent.
    pub fn evaluate(&mut self, x: Vec<f64>) -> Option<Solution> {
        if self.budget.exhausted() {
            return None;
        }
        Some(self.evaluate_unchecked(x))
    }

    /// Evaluates regardless of the budget; used only for the initial
    /// population, which every run needs in full.
    pub fn evaluate_unchecked(&mut self, x: Vec<f64>) -> Solution {
        let f = self.problem.evaluate(&x);
        let eval_id = self.budget.used;
        self.budget.used += 1;
        self.record(f);
        Solution { x, f, eval_id }
    }

    fn record(&mut self, f: ObjectiveVector) {
        if self.archive.iter().any(|a| a.weakly_dominates(&f)) {
            return;
        }
        self.archive.retain(|a| !f.dominates(a));
        self.archive.push(f);
    }

    /// Nondominated union of every evaluated objective vector.
    pub fn evaluated_front(&self) -> &[ObjectiveVector] {
        &self.archive
    }
}

/// One line of the per-generation log.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub fun_eval: u64,
    pub pop_size: usize,
    /// Leaders for the decomposition-guided search, first-front size otherwise.
    pub n_leaders: usize,
    /// Hypervolume of the nondominated union of all evaluated points.
    pub hv: f64,
}

/// Outcome of one optimizer run.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub front: FrontArchive,
    pub log: Vec<GenerationRecord>,
    pub evaluations: u64,
}

pub fn write_generation_log<W: std::io::Write>(mut out: W, log: &[GenerationRecord]) -> std::io::Result<()> {
    writeln!(out, "gen,funEval,pop_size,n_leaders,hv")?;
    for r in log {
        writeln!(
            out,
            "{},{},{},{},{}",
            r.generation, r.fun_eval, r.pop_size, r.n_leaders, r.hv
        )?;
    }
    Ok(())
}

pub(crate) fn log_generation<P: Problem + ?Sized>(
    log: &mut Vec<GenerationRecord>,
    evaluator: &Evaluator<'_, P>,
    pop_size: usize,
    n_leaders: usize,
    reference: ObjectiveVector,
) {
    log.push(GenerationRecord {
        generation: log.len(),
        fun_eval: evaluator.budget().used,
        pop_size,
        n_leaders,
        hv: crate::metrics::hypervolume_2d(evaluator.evaluated_front(), reference),
    });
}

/// Two spheres centred at `a` and `b`: the Pareto set is the segment between
/// the centres and the front is `√f1 + √f2 = |a − b|`.
#[derive(Debug, Clone)]
pub struct BiSphere {
    pub a: Vec<f64>,
    pub b: Vec<f64>,
}

impl BiSphere {
    pub fn new(a: Vec<f64>, b: Vec<f64>) -> Self {
        assert_eq!(a.len(), b.len());
        Self { a, b }
    }

    /// Centres (0.25, 0.25) and (0.75, 0.75) in the unit square.
    pub fn unit_square() -> Self {
        Self::new(vec![0.25, 0.25], vec![0.75, 0.75])
    }

    /// Euclidean distance from `x` to the Pareto set.
    pub fn distance_to_pareto_set(&self, x: &[f64]) -> f64 {
        let d: Vec<f64> = self.b.iter().zip(&self.a).map(|(b, a)| b - a).collect();
        let len2: f64 = d.iter().map(|v| v * v).sum();
        let t = x
            .iter()
            .zip(&self.a)
            .zip(&d)
            .map(|((x, a), d)| (x - a) * d)
            .sum::<f64>()
            / len2;
        let t = t.clamp(0.0, 1.0);
        x.iter()
            .zip(&self.a)
            .zip(&d)
            .map(|((x, a), d)| (x - a - t * d).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    /// Euclidean distance in objective space from `f` to the front
    /// `{(u², (L − u)²) : 0 ≤ u ≤ L}` with `L = |a − b|`.
    pub fn distance_to_front(&self, f: &ObjectiveVector) -> f64 {
        let l = self
            .a
            .iter()
            .zip(&self.b)
            .map(|(a, b)| (a - b).powi(2))
            .sum::<f64>()
            .sqrt();
        let gap = |u: f64| (u * u - f.f1()).hypot((l - u).powi(2) - f.f2());
        // Coarse scan, then golden-section search around the best sample.
        const SAMPLES: usize = 2000;
        let h = l / SAMPLES as f64;
        let best = (0..=SAMPLES)
            .min_by(|&i, &j| gap(i as f64 * h).total_cmp(&gap(j as f64 * h)))
            .expect("nonempty range");
        let (mut lo, mut hi) = ((best as f64 - 1.0) * h, (best as f64 + 1.0) * h);
        lo = lo.max(0.0);
        hi = hi.min(l);
        let ratio = (5f64.sqrt() - 1.0) / 2.0;
        for _ in 0..60 {
            let m1 = hi - ratio * (hi - lo);
            let m2 = lo + ratio * (hi - lo);
            if gap(m1) <= gap(m2) {
                hi = m2;
            } else {
                lo = m1;
            }
        }
        gap(0.5 * (lo + hi)).min(gap(best as f64 * h))
    }
}

impl Problem for BiSphere {
    fn dimension(&self) -> usize {
        self.a.len()
    }

    fn evaluate(&self, x: &[f64]) -> ObjectiveVector {
        let sq = |c: &[f64]| x.iter().zip(c).map(|(x, c)| (x - c).powi(2)).sum::<f64>();
        ObjectiveVector::new(sq(&self.a), sq(&self.b))
    }
}
