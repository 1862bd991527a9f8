//! Reference evolutionary optimizers in their canonical forms.

mod gde3;
mod ibea;
mod moead;
mod nsga2;
mod smpso;

pub use gde3::{gde3_run, gde3_select, Gde3Config, Gde3Outcome};
pub use ibea::{epsilon_indicator, ibea_fitness, ibea_run, ibea_truncate, IbeaConfig};
pub use moead::{moead_run, replace_in_pool, tchebycheff, MoeadConfig};
pub use nsga2::{nsga2_run, Nsga2Config};
pub use smpso::{constriction, smpso_run, velocity_update, CrowdingArchive, SmpsoConfig};

use rand::Rng;

use crate::moea::{Bounds, ObjectiveVector};

/// Nondominated fronts as index lists, best front first.
pub fn nondominated_fronts(objectives: &[ObjectiveVector]) -> Vec<Vec<usize>> {
    let n = objectives.len();
    let mut dominated_by: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut counts = vec![0usize; n];
    for i in 0..n {
        for j in i + 1..n {
            if objectives[i].dominates(&objectives[j]) {
                dominated_by[i].push(j);
                counts[j] += 1;
            } else if objectives[j].dominates(&objectives[i]) {
                dominated_by[j].push(i);
                counts[i] += 1;
            }
        }
    }
    let mut fronts = Vec::new();
    let mut current: Vec<usize> = (0..n).filter(|&i| counts[i] == 0).collect();
    while !current.is_empty() {
        let mut next = Vec::new();
        for &p in &current {
            for &q in &dominated_by[p] {
                counts[q] -= 1;
                if counts[q] == 0 {
                    next.push(q);
                }
            }
        }
        next.sort_unstable();
        fronts.push(current);
        current = next;
    }
    fronts
}

/// Nondomination rank of every member (0 = nondominated).
pub fn fast_nondominated_sort(objectives: &[ObjectiveVector]) -> Vec<usize> {
    let mut rank = vec![0; objectives.len()];
    for (r, front) in nondominated_fronts(objectives).iter().enumerate() {
        for &i in front {
            rank[i] = r;
        }
    }
    rank
}

/// Crowding distance of each member of one front.
pub fn crowding_distance(front: &[ObjectiveVector]) -> Vec<f64> {
    let n = front.len();
    let mut distance = vec![0.0; n];
    if n <= 2 {
        return vec![f64::INFINITY; n];
    }
    let mut order: Vec<usize> = (0..n).collect();
    for m in 0..2 {
        order.sort_by(|&a, &b| front[a][m].total_cmp(&front[b][m]).then(a.cmp(&b)));
        let lo = front[order[0]][m];
        let hi = front[order[n - 1]][m];
        distance[order[0]] = f64::INFINITY;
        distance[order[n - 1]] = f64::INFINITY;
        let span = hi - lo;
        if span <= 0.0 {
            continue;
        }
        for k in 1..n - 1 {
            distance[order[k]] += (front[order[k + 1]][m] - front[order[k - 1]][m]) / span;
        }
    }
    distance
}

/// Rank and crowding distance for every member.
pub(crate) fn rank_and_crowding(objectives: &[ObjectiveVector]) -> (Vec<usize>, Vec<f64>) {
    let mut rank = vec![0; objectives.len()];
    let mut crowd = vec![0.0; objectives.len()];
    for (r, front) in nondominated_fronts(objectives).iter().enumerate() {
        let fo: Vec<ObjectiveVector> = front.iter().map(|&i| objectives[i]).collect();
        for (&i, d) in front.iter().zip(crowding_distance(&fo)) {
            rank[i] = r;
            crowd[i] = d;
        }
    }
    (rank, crowd)
}

/// Indices of the `keep` best members by rank, then crowding distance.
pub(crate) fn truncate_by_rank_and_crowding(objectives: &[ObjectiveVector], keep: usize) -> Vec<usize> {
    let mut chosen = Vec::with_capacity(keep);
    for front in nondominated_fronts(objectives) {
        if chosen.len() + front.len() <= keep {
            chosen.extend_from_slice(&front);
            continue;
        }
        let fo: Vec<ObjectiveVector> = front.iter().map(|&i| objectives[i]).collect();
        let d = crowding_distance(&fo);
        let mut order: Vec<usize> = (0..front.len()).collect();
        order.sort_by(|&a, &b| d[b].total_cmp(&d[a]).then(front[a].cmp(&front[b])));
        chosen.extend(order.iter().take(keep - chosen.len()).map(|&k| front[k]));
        break;
    }
    chosen.sort_unstable();
    chosen
}

/// Crowded-comparison binary tournament; ties go to the lower index.
pub(crate) fn crowded_tournament<R: Rng + ?Sized>(rank: &[usize], crowd: &[f64], rng: &mut R) -> usize {
    let a = rng.random_range(0..rank.len());
    let b = rng.random_range(0..rank.len());
    let better = |a: usize, b: usize| rank[a] < rank[b] || (rank[a] == rank[b] && crowd[a] > crowd[b]);
    if better(a, b) {
        a
    } else if better(b, a) {
        b
    } else {
        a.min(b)
    }
}

pub(crate) fn random_population<R: Rng + ?Sized>(size: usize, n: usize, bounds: &Bounds, rng: &mut R) -> Vec<Vec<f64>> {
    (0..size)
        .map(|_| {
            (0..n)
                .map(|_| bounds.lower + rng.random::<f64>() * bounds.width())
                .collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn ov(a: f64, b: f64) -> ObjectiveVector {
        ObjectiveVector::new(a, b)
    }

    /// Repeatedly strips the nondominated set.
    fn peel(points: &[ObjectiveVector]) -> Vec<usize> {
        let mut rank = vec![usize::MAX; points.len()];
        let mut r = 0;
        while rank.contains(&usize::MAX) {
            let left: Vec<usize> = (0..points.len()).filter(|&i| rank[i] == usize::MAX).collect();
            let layer: Vec<usize> = left
                .iter()
                .copied()
                .filter(|&i| !left.iter().any(|&j| points[j].dominates(&points[i])))
                .collect();
            for i in layer {
                rank[i] = r;
            }
            r += 1;
        }
        rank
    }

    #[test]
    fn ranks_small() {
        assert_eq!(
            fast_nondominated_sort(&[ov(1.0, 2.0), ov(2.0, 1.0), ov(3.0, 3.0)]),
            vec![0, 0, 1]
        );
        assert_eq!(
            fast_nondominated_sort(&[ov(1.0, 1.0), ov(2.0, 2.0), ov(3.0, 3.0)]),
            vec![0, 1, 2]
        );
    }

    #[test]
    fn ranks_match_peeling() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let pts: Vec<ObjectiveVector> = (0..300)
            .map(|_| ov(rng.random_range(0..20) as f64, rng.random_range(0..20) as f64))
            .collect();
        assert_eq!(fast_nondominated_sort(&pts), peel(&pts));
    }

    #[test]
    fn crowding_cases() {
        assert_eq!(crowding_distance(&[ov(0.0, 1.0), ov(1.0, 0.0)]), vec![f64::INFINITY; 2]);
        let d = crowding_distance(&[ov(1.0, 3.0), ov(2.0, 2.0), ov(3.0, 1.0)]);
        assert_eq!(d[1], 2.0);
        assert!(d[0].is_infinite() && d[2].is_infinite());
        let line: Vec<ObjectiveVector> = (0..5).map(|i| ov(i as f64, 4.0 - i as f64)).collect();
        let d = crowding_distance(&line);
        assert!(d[1..4].iter().all(|&v| (v - d[1]).abs() < 1e-15));
    }

    #[test]
    fn truncation_keeps_best_fronts_and_extremes() {
        let pts = vec![
            ov(0.0, 4.0),
            ov(1.0, 3.0),
            ov(2.0, 2.0),
            ov(3.0, 1.0),
            ov(4.0, 0.0),
            ov(5.0, 5.0),
        ];
        let kept = truncate_by_rank_and_crowding(&pts, 3);
        assert_eq!(kept.len(), 3);
        assert!(kept.contains(&0) && kept.contains(&4));
        assert!(!kept.contains(&5));
    }
}
