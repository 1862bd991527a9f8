use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng as _;

use crate::moea::{Evaluator, ObjectiveVector, Problem, Rng, Solution};

use super::{objectives, DdmoaConfig, Individual, SearchMatrix};

#[derive(Debug, Clone, PartialEq)]
pub struct SearchOutcome {
    /// Accumulated accepted moves, if the end point is nondominated with
    /// respect to the population the search started from.
    pub direction: Option<Vec<f64>>,
    /// Step size after the search (halved once per failed pass).
    pub delta: f64,
    /// Every probe, in evaluation order.
    pub trials: Vec<Solution>,
}

/// Opportunistic coordinate search on objective `objective`.
///
/// Coordinates are visited in random order; each is probed at `+δ` then
/// `−δ` (clipped to the box, skipped when clipping leaves it unchanged) and
/// the first improvement is kept. A pass without any improvement halves
/// `δ`; the search ends after the first successful pass, once `δ` reaches
/// `delta_tol`, or when `probe_cap` probes have been spent.
#[allow(clippy::too_many_arguments)]
pub fn coordinate_search<P: Problem + ?Sized>(
    x: &[f64],
    fx: ObjectiveVector,
    delta: f64,
    objective: usize,
    snapshot: &[ObjectiveVector],
    probe_cap: u64,
    delta_tol: f64,
    ev: &mut Evaluator<'_, P>,
    rng: &mut Rng,
) -> SearchOutcome {
    let n = x.len();
    let bounds = ev.problem().bounds();
    let mut current = x.to_vec();
    let mut current_f = fx;
    let mut step = vec![0.0; n];
    let mut delta = delta;
    let mut probes = 0u64;
    let mut improved = false;
    let mut trials = Vec::new();
    let mut order: Vec<usize> = (0..n).collect();

    'search: loop {
        order.shuffle(rng);
        for &j in &order {
            for sign in [1.0, -1.0] {
                if probes >= probe_cap {
                    break 'search;
                }
                let v = bounds.clamp(current[j] + sign * delta);
                if v == current[j] {
                    continue;
                }
                let mut y = current.clone();
                y[j] = v;
                let Some(trial) = ev.evaluate(y) else {
                    break 'search;
                };
                probes += 1;
                let better = trial.f[objective] < current_f[objective];
                if better {
                    step[j] += v - current[j];
                    current[j] = v;
                    current_f = trial.f;
                }
                trials.push(trial);
                if better {
                    improved = true;
                    break;
                }
            }
        }
        if improved {
            break;
        }
        delta /= 2.0;
        if delta <= delta_tol {
            break;
        }
    }

    let direction = (improved && !snapshot.iter().any(|m| m.weakly_dominates(&current_f))).then_some(step);
    SearchOutcome {
        direction,
        delta,
        trials,
    }
}

/// Rebuilds every member's search matrix.
///
/// Leaders are sorted by each objective in turn (random order) and split
/// into `alpha` parts. The first part member with `δ > δ_tol` runs a
/// coordinate search; its direction `s_r` gives every member `i` of the part
/// the column `x_r − x_i + s_r`. Probes that no member weakly dominates join
/// the population. Non-leaders then share the matrix of a random leader.
pub fn update_search_matrices<P: Problem + ?Sized>(
    pop: &mut Vec<Individual>,
    config: &DdmoaConfig,
    zero: &Arc<SearchMatrix>,
    ev: &mut Evaluator<'_, P>,
    rng: &mut Rng,
) {
    let n = ev.problem().dimension();
    let leaders: Vec<usize> = (0..pop.len()).filter(|&i| pop[i].is_leader).collect();
    if leaders.is_empty() {
        return;
    }
    let mut slot = vec![usize::MAX; pop.len()];
    for (k, &i) in leaders.iter().enumerate() {
        slot[i] = k;
    }
    let mut columns: Vec<[Vec<f64>; 2]> = vec![[vec![0.0; n], vec![0.0; n]]; leaders.len()];
    let mut objective_order = [0usize, 1];
    objective_order.shuffle(rng);
    let parts = config.alpha;

    for (col, &obj) in objective_order.iter().enumerate() {
        let mut sorted = leaders.clone();
        sorted.sort_by(|&a, &b| pop[a].f[obj].total_cmp(&pop[b].f[obj]).then(a.cmp(&b)));
        let l = sorted.len();
        for k in 0..parts {
            let part = &sorted[k * l / parts..(k + 1) * l / parts];
            let Some(&first) = part.first() else {
                continue;
            };
            let rep = part.iter().copied().find(|&i| pop[i].delta > config.delta_tol);
            let (r, s_r) = match rep {
                Some(r) => {
                    let snapshot = objectives(pop);
                    let cap = config.probe_cap_for(n, ev.remaining());
                    let outcome = coordinate_search(
                        &pop[r].x,
                        pop[r].f,
                        pop[r].delta,
                        obj,
                        &snapshot,
                        cap,
                        config.delta_tol,
                        ev,
                        rng,
                    );
                    pop[r].delta = outcome.delta;
                    for t in outcome.trials {
                        if !pop.iter().any(|m| m.f.weakly_dominates(&t.f)) {
                            pop.push(Individual::with_defaults(t, config, zero));
                        }
                    }
                    (r, outcome.direction.unwrap_or_else(|| vec![0.0; n]))
                }
                None => (first, vec![0.0; n]),
            };
            for &i in part {
                let column = &mut columns[slot[i]][col];
                for j in 0..n {
                    column[j] = pop[r].x[j] - pop[i].x[j] + s_r[j];
                }
            }
        }
    }

    let shared: Vec<Arc<SearchMatrix>> = columns
        .into_iter()
        .map(|columns| Arc::new(SearchMatrix { columns }))
        .collect();
    for (k, &i) in leaders.iter().enumerate() {
        pop[i].search = Arc::clone(&shared[k]);
    }
    for ind in pop.iter_mut().filter(|i| !i.is_leader) {
        ind.search = Arc::clone(&shared[rng.random_range(0..shared.len())]);
    }
}
