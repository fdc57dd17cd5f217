//! Scalar abstraction for the numeric routines.
//!
//! Everything numeric in this crate is generic over [`Real`], which is any
//! nalgebra real field that is `Copy` and convertible from/to primitives.
//! In practice that means `f32` or `f64`; the tolerances quoted throughout
//! the crate documentation assume `f64`.

use num_traits::{FromPrimitive, ToPrimitive};

/// Floating point scalar usable by all routines (`f32` or `f64`).
pub trait Real: nalgebra::RealField + Copy + FromPrimitive + ToPrimitive {
    /// Lossy conversion of an `f64` constant into the scalar type.
    fn c(value: f64) -> Self {
        Self::from_f64(value).expect("constant not representable in scalar type")
    }

    /// Widening conversion to `f64`, used for diagnostics and error payloads.
    fn as_f64(self) -> f64 {
        self.to_f64().expect("scalar not representable as f64")
    }
}

impl<T> Real for T where T: nalgebra::RealField + Copy + FromPrimitive + ToPrimitive {}
