use super::{ObjectiveVector, Solution};

/// A set of mutually nondominated solutions.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct FrontArchive {
    members: Vec<Solution>,
}

impl FrontArchive {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn members(&self) -> &[Solution] {
        &self.members
    }

    pub fn into_members(self) -> Vec<Solution> {
        self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn objectives(&self) -> Vec<ObjectiveVector> {
        self.members.iter().map(|s| s.f).collect()
    }

    /// Adds `s` unless a member dominates it, evicting members it dominates.
    /// Returns whether `s` was kept. Objective-space ties are kept.
    pub fn insert(&mut self, s: Solution) -> bool {
        if self.members.iter().any(|m| m.f.dominates(&s.f)) {
            return false;
        }
        self.members.retain(|m| !s.f.dominates(&m.f));
        self.members.push(s);
        true
    }

    /// Members ordered by ascending `f1` (then `f2`, then evaluation id).
    pub fn sorted(&self) -> Vec<&Solution> {
        let mut v: Vec<&Solution> = self.members.iter().collect();
        v.sort_by(|a, b| {
            a.f.f1()
                .total_cmp(&b.f.f1())
                .then(a.f.f2().total_cmp(&b.f.f2()))
                .then(a.eval_id.cmp(&b.eval_id))
        });
        v
    }

    /// Width of the front along `f2`.
    pub fn f2_range(&self) -> f64 {
        let (lo, hi) = self
            .members
            .iter()
            .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
                (lo.min(s.f.f2()), hi.max(s.f.f2()))
            });
        if self.members.is_empty() {
            0.0
        } else {
            hi - lo
        }
    }
}

/// Keeps exactly the points no other point dominates, in input order.
pub fn nondominated_filter(points: Vec<Solution>) -> FrontArchive {
    let mut order: Vec<usize> = (0..points.len()).collect();
    // Sweep in (f1, f2) order: a point is dominated iff some earlier point
    // has f2 below it, or equals it while having a smaller f1.
    order.sort_by(|&i, &j| {
        let (a, b) = (&points[i].f, &points[j].f);
        a.f1().total_cmp(&b.f1()).then(a.f2().total_cmp(&b.f2()))
    });
    let mut keep = vec![false; points.len()];
    let mut best_f2 = f64::INFINITY;
    let mut best_f1_at_best = f64::INFINITY;
    for &i in &order {
        let f = points[i].f;
        let dominated = f.f2() > best_f2 || (f.f2() == best_f2 && f.f1() > best_f1_at_best);
        if !dominated {
            keep[i] = true;
            if f.f2() < best_f2 {
                best_f2 = f.f2();
                best_f1_at_best = f.f1();
            }
        }
    }
    FrontArchive {
        members: points
            .into_iter()
            .zip(keep)
            .filter_map(|(s, k)| k.then_some(s))
            .collect(),
    }
}
