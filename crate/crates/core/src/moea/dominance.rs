use crate::error::{Error, Result};

/// `(f1, f2)`, both minimized.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct ObjectiveVector(pub [f64; 2]);

impl ObjectiveVector {
    pub const fn new(f1: f64, f2: f64) -> Self {
        Self([f1, f2])
    }

    pub fn f1(&self) -> f64 {
        self.0[0]
    }

    pub fn f2(&self) -> f64 {
        self.0[1]
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    /// Pareto dominance: no worse everywhere, strictly better somewhere.
    pub fn dominates(&self, other: &Self) -> bool {
        let [a1, a2] = self.0;
        let [b1, b2] = other.0;
        a1 <= b1 && a2 <= b2 && (a1 < b1 || a2 < b2)
    }

    pub fn weakly_dominates(&self, other: &Self) -> bool {
        self.0[0] <= other.0[0] && self.0[1] <= other.0[1]
    }
}

impl From<[f64; 2]> for ObjectiveVector {
    fn from(v: [f64; 2]) -> Self {
        Self(v)
    }
}

impl std::ops::Index<usize> for ObjectiveVector {
    type Output = f64;

    fn index(&self, i: usize) -> &f64 {
        &self.0[i]
    }
}

pub fn dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    a.dominates(b)
}

pub fn weakly_dominates(a: &ObjectiveVector, b: &ObjectiveVector) -> bool {
    a.weakly_dominates(b)
}

/// Dominance on arbitrary-length objective slices.
pub fn dominates_slices(a: &[f64], b: &[f64]) -> Result<bool> {
    if a.len() != b.len() {
        return Err(Error::DimensionMismatch(a.len(), b.len()));
    }
    let mut strict = false;
    for (x, y) in a.iter().zip(b) {
        if x > y {
            return Ok(false);
        }
        strict |= x < y;
    }
    Ok(strict)
}
