//! Scalar abstraction for the analytic model.
//!
//! Every closed-form quantity in this crate is an elementary-function
//! expression, so the math is written once over a [`Real`] scalar and
//! instantiated at `f32` or `f64`. The Monte Carlo oracles and the CLI
//! work in `f64` through the aliases at the crate root.

use num_traits::{Float, FromPrimitive};

/// Floating-point scalar: `f32` or `f64`.
pub trait Real: Float + FromPrimitive + std::fmt::Debug + Send + Sync + 'static {}

impl<T> Real for T where T: Float + FromPrimitive + std::fmt::Debug + Send + Sync + 'static {}

/// Shorthand for embedding an `f64` literal into the working scalar type.
#[inline]
pub(crate) fn lit<T: Real>(x: f64) -> T {
    T::from_f64(x).expect("literal representable in scalar type")
}

/// `x` as `f64` for diagnostics and error payloads.
#[inline]
pub(crate) fn as_f64<T: Real>(x: T) -> f64 {
    x.to_f64().unwrap_or(f64::NAN)
}
