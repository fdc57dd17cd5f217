//! The six-angle parameter vector of the case-13 matrix families.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Angles `φ1..φ6` in radians, validated against the family constraints:
/// every `φi > 0`, `Σ φj < 2π`, `φi + φi+1 < π` for `i = 1..5`, and
/// `φ1 + φ6 < π`.
#[derive(Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[T; 6]", into = "[T; 6]")]
pub struct AngleVector<T: Real> {
    phi: [T; 6],
}

impl<T: Real> AngleVector<T> {
    pub fn new(phi: [T; 6]) -> Result<Self> {
        for (k, &p) in phi.iter().enumerate() {
            if p <= T::zero() {
                return Err(Error::constraint(format!("phi{} > 0", k + 1)));
            }
        }
        let total: T = phi.iter().fold(T::zero(), |acc, &p| acc + p);
        if total >= T::two_pi() {
            return Err(Error::constraint("phi1 + ... + phi6 < 2*pi"));
        }
        for i in 0..5 {
            if phi[i] + phi[i + 1] >= T::pi() {
                return Err(Error::constraint(format!(
                    "phi{} + phi{} < pi",
                    i + 1,
                    i + 2
                )));
            }
        }
        if phi[0] + phi[5] >= T::pi() {
            return Err(Error::constraint("phi1 + phi6 < pi"));
        }
        Ok(AngleVector { phi })
    }

    /// Builds the vector from multiples of π, the notation used by the CLI:
    /// `from_pi_multiples([0.20, ...])` means `φ1 = 0.20π, ...`.
    pub fn from_pi_multiples(multiples: [T; 6]) -> Result<Self> {
        Self::new(multiples.map(|m| m * T::pi()))
    }

    /// The angle `φi`, 1-based.
    pub fn phi(&self, i: usize) -> T {
        self.phi[i - 1]
    }

    pub fn as_array(&self) -> [T; 6] {
        self.phi
    }

    /// Sum of the angles at the given 1-based indices.
    pub fn sum_of(&self, indices: &[usize]) -> T {
        indices.iter().fold(T::zero(), |acc, &i| acc + self.phi(i))
    }

    /// Sum of the angles at all indices not listed.
    pub fn sum_except(&self, indices: &[usize]) -> T {
        (1..=6)
            .filter(|i| !indices.contains(i))
            .fold(T::zero(), |acc, i| acc + self.phi(i))
    }

    pub fn total(&self) -> T {
        self.phi.iter().fold(T::zero(), |acc, &p| acc + p)
    }
}

impl<T: Real> TryFrom<[T; 6]> for AngleVector<T> {
    type Error = Error;

    fn try_from(phi: [T; 6]) -> Result<Self> {
        AngleVector::new(phi)
    }
}

impl<T: Real> From<AngleVector<T>> for [T; 6] {
    fn from(v: AngleVector<T>) -> [T; 6] {
        v.phi
    }
}

impl<T: Real> fmt::Debug for AngleVector<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, p) in self.phi.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{:.6}", p.as_f64())?;
        }
        write!(f, ")")
    }
}
