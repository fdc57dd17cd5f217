//! Analysis toolkit for the 6×6 copositive cone.
//!
//! The crate generates the two case-13 families of exceptional extreme
//! matrices with unit diagonal, computes minimal zeros and extended
//! minimal zero support sets of arbitrary copositive matrices, certifies
//! copositivity by simplicial partition, carries the catalog of the 22
//! main components of exceptional extreme matrices together with the
//! closure-candidate combinatorics that isolate the five essential ones,
//! and implements the specialized level-1 sum-of-squares membership
//! construction for the 13.1 family, including the explicit unit-diagonal
//! matrix that is copositive but fails level-1 membership.
//!
//! Numeric code is generic over the scalar type through [`scalar::Real`]
//! (`f32` or `f64`); the aliases at the crate root fix the
//! double-precision instantiation used by the CLI and the test suites.

pub mod components;
pub mod copositivity;
pub mod error;
pub mod generator;
pub mod parrilo;
pub mod scalar;
pub mod types;
pub mod zeros;

pub use error::{Error, Result};
pub use scalar::Real;
pub use types::{
    apply_permutation, AngleVector, ExtendedSupport, IndexSet, Permutation, SymmetricMatrix, Zero,
};

/// Double-precision instantiations of the generic types.
pub type SymmetricMatrixF64 = SymmetricMatrix<f64>;
pub type AngleVectorF64 = AngleVector<f64>;
pub type ZeroF64 = Zero<f64>;
pub type ZeroTolerancesF64 = zeros::ZeroTolerances<f64>;
pub type K1CertificateF64 = parrilo::K1Certificate<f64>;
pub type CopositivityVerdictF64 = copositivity::CopositivityVerdict<f64>;
