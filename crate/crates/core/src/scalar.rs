//! Scalar abstraction shared by every numerical routine in the crate.

use nalgebra::RealField;
use num_traits::{FromPrimitive, ToPrimitive};
use std::fmt::{Debug, Display};

/// Real scalar the library is generic over.
///
/// Implemented for `f32` and `f64`. Exact or rational scalars are not
/// supported: symplectic spectra, matrix square roots and entropies are
/// transcendental.
pub trait Real: RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display {}

impl<T> Real for T where T: RealField + Copy + FromPrimitive + ToPrimitive + Debug + Display {}

/// Converts an `f64` literal into `T`.
#[inline]
pub fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("f64 literal representable in scalar type")
}

/// Lossy view of a scalar as `f64`, used for diagnostics and reports.
#[inline]
pub fn to_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
