//! Representatives of matrix zeros on the standard simplex.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;
use crate::types::sets::IndexSet;

/// Relative threshold below which an entry counts as zero when computing
/// the support: `1e-9` times the largest absolute entry. The families this
/// crate generates are O(1)-scaled cosine matrices with O(1) sine zeros,
/// so the threshold cleanly separates support from noise.
pub const SUPPORT_REL_TOL: f64 = 1e-9;

/// A nonnegative vector normalized to the standard simplex, together with
/// its support. Entries below the support threshold are snapped to zero,
/// so `support()` is exactly the set of nonzero coordinates.
#[derive(Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawZero<T>")]
pub struct Zero<T: Real> {
    vector: Vec<T>,
    support: IndexSet,
}

#[derive(Deserialize)]
struct RawZero<T> {
    vector: Vec<T>,
    #[serde(default)]
    #[allow(dead_code)]
    support: Option<IndexSet>,
}

impl<T: Real> TryFrom<RawZero<T>> for Zero<T> {
    type Error = Error;

    fn try_from(raw: RawZero<T>) -> Result<Self> {
        Zero::from_vector(raw.vector)
    }
}

impl<T: Real> Zero<T> {
    /// Normalizes a nonnegative vector onto the simplex and derives its
    /// support. Entries more negative than the support threshold are
    /// rejected; smaller negative noise is snapped to zero.
    pub fn from_vector(mut vector: Vec<T>) -> Result<Self> {
        if vector.len() > crate::types::sets::MAX_INDEX {
            return Err(Error::constraint("vector dimension too large"));
        }
        let max_abs = vector.iter().fold(T::zero(), |acc, v| acc.max(v.abs()));
        if max_abs == T::zero() {
            return Err(Error::constraint("zero representative must be nonzero"));
        }
        let cut = max_abs * T::c(SUPPORT_REL_TOL);
        let mut support = Vec::new();
        for (k, v) in vector.iter_mut().enumerate() {
            if *v < -cut {
                return Err(Error::constraint(format!(
                    "zero representative must be nonnegative, entry {} is {:e}",
                    k + 1,
                    v.as_f64()
                )));
            }
            if *v <= cut {
                *v = T::zero();
            } else {
                support.push(k + 1);
            }
        }
        let sum: T = vector.iter().fold(T::zero(), |acc, &v| acc + v);
        for v in vector.iter_mut() {
            *v /= sum;
        }
        Ok(Zero {
            vector,
            support: IndexSet::from_indices(support)?,
        })
    }

    pub fn dim(&self) -> usize {
        self.vector.len()
    }

    pub fn vector(&self) -> &[T] {
        &self.vector
    }

    pub fn support(&self) -> IndexSet {
        self.support
    }

    /// The subvector on the support, in ascending index order.
    pub fn restricted(&self) -> Vec<T> {
        self.support.iter().map(|i| self.vector[i - 1]).collect()
    }

    /// Largest absolute entrywise difference to another representative.
    pub fn max_abs_diff(&self, other: &Zero<T>) -> T {
        self.vector
            .iter()
            .zip(other.vector.iter())
            .fold(T::zero(), |acc, (&a, &b)| acc.max((a - b).abs()))
    }
}

impl<T: Real> fmt::Debug for Zero<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Zero(support={}, vector=[", self.support)?;
        for (k, v) in self.vector.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}", v.as_f64())?;
        }
        write!(f, "])")
    }
}
