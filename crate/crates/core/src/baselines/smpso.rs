use rand::Rng as _;

use crate::moea::{
    log_generation, polynomial_mutation, Bounds, Evaluator, FrontArchive, ObjectiveVector, PolynomialMutationParams,
    Problem, Rng, RunResult, Solution,
};

use super::{crowding_distance, random_population};

#[derive(Debug, Clone, PartialEq)]
pub struct SmpsoConfig {
    pub swarm_size: usize,
    pub archive_size: usize,
    pub c1: (f64, f64),
    pub c2: (f64, f64),
    pub inertia: f64,
    pub mutation: Option<PolynomialMutationParams>,
    /// Every `mutation_every`-th particle is mutated each iteration.
    pub mutation_every: usize,
    pub max_evals: u64,
    pub log_reference: ObjectiveVector,
}

impl Default for SmpsoConfig {
    fn default() -> Self {
        Self {
            swarm_size: 100,
            archive_size: 100,
            c1: (1.5, 2.5),
            c2: (1.5, 2.5),
            inertia: 0.1,
            mutation: None,
            mutation_every: 6,
            max_evals: 100_000,
            log_reference: crate::metrics::DEFAULT_REFERENCE,
        }
    }
}

/// Bounded nondominated archive pruned by crowding distance.
#[derive(Debug, Clone)]
pub struct CrowdingArchive {
    members: Vec<Solution>,
    capacity: usize,
}

impl CrowdingArchive {
    pub fn new(capacity: usize) -> Self {
        Self {
            members: Vec::with_capacity(capacity + 1),
            capacity,
        }
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    /// Returns whether `s` entered the archive.
    pub fn add(&mut self, s: &Solution) -> bool {
        if self.members.iter().any(|m| m.f.dominates(&s.f) || m.f == s.f) {
            return false;
        }
        self.members.retain(|m| !s.f.dominates(&m.f));
        self.members.push(s.clone());
        if self.members.len() > self.capacity {
            let d = self.crowding();
            let worst = (0..d.len())
                .min_by(|&a, &b| d[a].total_cmp(&d[b]).then(a.cmp(&b)))
                .expect("archive is not empty");
            self.members.remove(worst);
        }
        true
    }

    pub fn crowding(&self) -> Vec<f64> {
        let objs: Vec<ObjectiveVector> = self.members.iter().map(|m| m.f).collect();
        crowding_distance(&objs)
    }

    pub fn into_front(self) -> FrontArchive {
        let mut front = FrontArchive::new();
        for m in self.members {
            front.insert(m);
        }
        front
    }
}

/// Constriction coefficient for `φ = c1 + c2`.
pub fn constriction(c1: f64, c2: f64) -> f64 {
    let phi = c1 + c2;
    if phi > 4.0 {
        2.0 / (2.0 - phi - (phi * phi - 4.0 * phi).sqrt()).abs()
    } else {
        1.0
    }
}

/// Constricted velocity, clamped per component to half the variable range.
#[allow(clippy::too_many_arguments)]
pub fn velocity_update(
    velocity: &mut [f64],
    x: &[f64],
    personal_best: &[f64],
    leader: &[f64],
    inertia: f64,
    (c1, c2): (f64, f64),
    (r1, r2): (f64, f64),
    bounds: &Bounds,
) {
    let chi = constriction(c1, c2);
    let limit = bounds.width() / 2.0;
    for j in 0..x.len() {
        let v = chi * (inertia * velocity[j] + c1 * r1 * (personal_best[j] - x[j]) + c2 * r2 * (leader[j] - x[j]));
        velocity[j] = v.clamp(-limit, limit);
    }
}

pub fn smpso_run<P: Problem + ?Sized>(problem: &P, config: &SmpsoConfig, rng: &mut Rng) -> RunResult {
    let n = problem.dimension();
    let bounds = problem.bounds();
    let mutation = config
        .mutation
        .unwrap_or_else(|| PolynomialMutationParams::for_dimension(n));
    let mut ev = Evaluator::new(problem, config.max_evals);
    let mut swarm: Vec<Solution> = random_population(config.swarm_size, n, &bounds, rng)
        .into_iter()
        .map(|x| ev.evaluate_unchecked(x))
        .collect();
    let mut velocity = vec![vec![0.0; n]; config.swarm_size];
    let mut best = swarm.clone();
    let mut archive = CrowdingArchive::new(config.archive_size);
    for s in &swarm {
        archive.add(s);
    }
    let mut log = Vec::new();
    log_generation(
        &mut log,
        &ev,
        swarm.len(),
        archive.members().len(),
        config.log_reference,
    );

    'run: while !ev.exhausted() {
        let crowd = archive.crowding();
        let leaders = archive.members();
        for i in 0..swarm.len() {
            let a = rng.random_range(0..leaders.len());
            let b = rng.random_range(0..leaders.len());
            let leader = if crowd[b] > crowd[a] || (crowd[b] == crowd[a] && b < a) {
                b
            } else {
                a
            };
            let c1 = rng.random_range(config.c1.0..=config.c1.1);
            let c2 = rng.random_range(config.c2.0..=config.c2.1);
            let r = (rng.random::<f64>(), rng.random::<f64>());
            velocity_update(
                &mut velocity[i],
                &swarm[i].x,
                &best[i].x,
                &leaders[leader].x,
                config.inertia,
                (c1, c2),
                r,
                &bounds,
            );
        }
        let mut positions = Vec::with_capacity(swarm.len());
        for (i, (s, v)) in swarm.iter().zip(velocity.iter_mut()).enumerate() {
            let mut x = s.x.clone();
            for j in 0..n {
                x[j] += v[j];
                if x[j] < bounds.lower {
                    x[j] = bounds.lower;
                    v[j] = -v[j];
                } else if x[j] > bounds.upper {
                    x[j] = bounds.upper;
                    v[j] = -v[j];
                }
            }
            if i % config.mutation_every == 0 {
                polynomial_mutation(&mut x, &mutation, &bounds, rng);
            }
            positions.push(x);
        }
        for (i, x) in positions.into_iter().enumerate() {
            let Some(s) = ev.evaluate(x) else {
                break 'run;
            };
            archive.add(&s);
            // A nondominated newcomer replaces the personal best half the time.
            if s.f.dominates(&best[i].f) || (!best[i].f.dominates(&s.f) && rng.random::<bool>()) {
                best[i] = s.clone();
            }
            swarm[i] = s;
        }
        log_generation(
            &mut log,
            &ev,
            swarm.len(),
            archive.members().len(),
            config.log_reference,
        );
    }
    if log.last().map(|r| r.fun_eval) != Some(ev.budget().used) {
        log_generation(
            &mut log,
            &ev,
            swarm.len(),
            archive.members().len(),
            config.log_reference,
        );
    }

    RunResult {
        front: archive.into_front(),
        log,
        evaluations: ev.budget().used,
    }
}
