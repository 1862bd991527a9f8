//! Hypervolume and run statistics.

use std::io::Write;

use crate::error::{Error, Result};
use crate::moea::ObjectiveVector;

/// Reference point used for the dengue problem.
pub const DEFAULT_REFERENCE: ObjectiveVector = ObjectiveVector::new(3.0, 80.0);

/// Exact area dominated by `front` inside the box bounded by `reference`.
///
/// Points not strictly better than the reference in both objectives add
/// nothing.
pub fn hypervolume_2d(front: &[ObjectiveVector], reference: ObjectiveVector) -> f64 {
    let mut pts: Vec<[f64; 2]> = front
        .iter()
        .filter(|p| p.f1() < reference.f1() && p.f2() < reference.f2())
        .map(|p| p.0)
        .collect();
    pts.sort_by(|a, b| a[0].total_cmp(&b[0]).then(a[1].total_cmp(&b[1])));
    let mut area = 0.0;
    let mut ceiling = reference.f2();
    let mut iter = pts.into_iter().peekable();
    while let Some(p) = iter.next() {
        if p[1] >= ceiling {
            continue;
        }
        // Strip extends until the next point that lowers the ceiling.
        let mut right = reference.f1();
        while let Some(q) = iter.peek() {
            if q[1] < p[1] {
                right = q[0];
                break;
            }
            iter.next();
        }
        area += (right - p[0]) * (reference.f2() - p[1]);
        ceiling = p[1];
    }
    area
}

/// Hypervolume of the nondominated union of several fronts.
pub fn total_hypervolume<'a>(
    fronts: impl IntoIterator<Item = &'a [ObjectiveVector]>,
    reference: ObjectiveVector,
) -> f64 {
    let union: Vec<ObjectiveVector> = fronts.into_iter().flatten().copied().collect();
    hypervolume_2d(&union, reference)
}

#[derive(Debug, Clone, PartialEq)]
pub struct RunStatistics {
    pub values: Vec<f64>,
    pub median: f64,
    pub q1: f64,
    pub q3: f64,
    pub min: f64,
    pub max: f64,
}

/// Linear-interpolation quantile of sorted data (`p` in `[0, 1]`).
fn quantile(sorted: &[f64], p: f64) -> f64 {
    let pos = p * (sorted.len() - 1) as f64;
    let lo = pos.floor() as usize;
    let hi = pos.ceil() as usize;
    sorted[lo] + (pos - lo as f64) * (sorted[hi] - sorted[lo])
}

pub fn aggregate_runs(values: &[f64]) -> Result<RunStatistics> {
    if values.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted = values.to_vec();
    sorted.sort_by(f64::total_cmp);
    Ok(RunStatistics {
        values: values.to_vec(),
        median: quantile(&sorted, 0.5),
        q1: quantile(&sorted, 0.25),
        q3: quantile(&sorted, 0.75),
        min: sorted[0],
        max: sorted[sorted.len() - 1],
    })
}

/// One row of the statistics export.
#[derive(Debug, Clone, PartialEq)]
pub struct AlgorithmSummary {
    pub algorithm: String,
    pub stats: RunStatistics,
    pub total_hv: f64,
}

pub fn write_statistics_csv<W: Write>(mut out: W, rows: &[AlgorithmSummary]) -> std::io::Result<()> {
    writeln!(out, "algorithm,runs,median_hv,q1,q3,min,max,total_hv")?;
    for r in rows {
        let s = &r.stats;
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.algorithm,
            s.values.len(),
            s.median,
            s.q1,
            s.q3,
            s.min,
            s.max,
            r.total_hv
        )?;
    }
    Ok(())
}
