//! Domain vocabulary shared by every other module: symmetric matrices,
//! index sets, permutations, extended supports, simplex zeros and the
//! six-angle parameter vector.
//!
//! All types are immutable after construction and safe for concurrent
//! reads.

pub mod angles;
pub mod matrix;
pub mod sets;
pub mod zero;

pub use angles::AngleVector;
pub use matrix::SymmetricMatrix;
pub use sets::{apply_permutation, ExtendedSupport, IndexSet, Permutation};
pub use zero::Zero;
