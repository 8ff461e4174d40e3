//! Error function, Gaussian tail probability and its inverse.
//!
//! `erf` uses the scaled power series on `|x| < 2` and a continued
//! fraction for the complement on `|x| >= 2`; both run entirely in the
//! working scalar type, so the same code path serves `f32` and `f64`.
//! The inverse tail probability is bisection on the forward function
//! followed by Newton polish, which keeps behavior identical across
//! scalar types and platforms instead of depending on a particular
//! special-function library.

use crate::error::{ModelError, Result};
use crate::real::{as_f64, lit, Real};

/// Series/continued-fraction crossover point.
const SPLIT: f64 = 2.0;
/// Depth of the backward continued-fraction evaluation.
const CF_DEPTH: usize = 220;
/// Bisection iterations for the inverse; 40/2^110 is far below f64 ulp.
const BISECT_ITERS: usize = 110;
/// Newton polish iterations after bisection.
const NEWTON_ITERS: usize = 4;

/// Error function `erf(x)`.
pub fn erf<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    let ax = x.abs();
    let val = if ax < lit::<T>(SPLIT) {
        erf_series(ax)
    } else {
        T::one() - erfc_cf(ax)
    };
    if x.is_sign_negative() {
        -val
    } else {
        val
    }
}

/// Complementary error function `erfc(x) = 1 - erf(x)`.
pub fn erfc<T: Real>(x: T) -> T {
    if x.is_nan() {
        return x;
    }
    if x.is_sign_negative() {
        return lit::<T>(2.0) - erfc(-x);
    }
    if x < lit::<T>(SPLIT) {
        T::one() - erf_series(x)
    } else {
        erfc_cf(x)
    }
}

/// `erf` on `[0, SPLIT)` via the scaled series
/// `erf(x) = (2x/sqrt(pi)) e^{-x^2} sum_n (2x^2)^n / (2n+1)!!`.
///
/// All terms are positive, so there is no cancellation.
fn erf_series<T: Real>(x: T) -> T {
    if x == T::zero() {
        return T::zero();
    }
    let two_x2 = lit::<T>(2.0) * x * x;
    let mut term = T::one();
    let mut sum = T::one();
    let mut odd = T::one();
    for _ in 0..200 {
        odd = odd + lit::<T>(2.0);
        term = term * two_x2 / odd;
        sum = sum + term;
        if term < sum * T::epsilon() {
            break;
        }
    }
    let two_over_sqrt_pi = lit::<T>(1.128_379_167_095_512_6);
    two_over_sqrt_pi * x * (-x * x).exp() * sum
}

/// `erfc` on `[SPLIT, inf)` via the Laplace continued fraction
/// `sqrt(pi) e^{x^2} erfc(x) = 1/(x + 1/(2x + 2/(x + 3/(2x + ...))))`,
/// evaluated backward at fixed depth.
fn erfc_cf<T: Real>(x: T) -> T {
    let gauss = (-x * x).exp();
    if gauss == T::zero() {
        // True value is below the smallest normal magnitude.
        return T::zero();
    }
    let two_x = x + x;
    let mut tail = if CF_DEPTH % 2 == 0 { x } else { two_x };
    let mut n = CF_DEPTH;
    while n > 0 {
        let base = if (n - 1) % 2 == 0 { x } else { two_x };
        tail = base + T::from_usize(n).unwrap() / tail;
        n -= 1;
    }
    let inv_sqrt_pi = lit::<T>(0.564_189_583_547_756_3);
    inv_sqrt_pi * gauss / tail
}

/// Gaussian tail probability `Q(x) = P(N(0,1) > x) = erfc(x/sqrt(2))/2`.
pub fn q_function<T: Real>(x: T) -> T {
    lit::<T>(0.5) * erfc(x / lit::<T>(std::f64::consts::SQRT_2))
}

/// Inverse of [`q_function`] on `(0, 1)`.
///
/// Bisection on `[-40, 40]` (Q is strictly decreasing) down to interval
/// exhaustion, then Newton steps against the Gaussian density where it
/// has not underflowed. Deterministic: fixed iteration counts.
pub fn q_inverse<T: Real>(p: T) -> Result<T> {
    if !(p > T::zero() && p < T::one()) {
        return Err(ModelError::QuantileDomain { value: as_f64(p) });
    }
    let mut lo = lit::<T>(-40.0);
    let mut hi = lit::<T>(40.0);
    for _ in 0..BISECT_ITERS {
        let mid = (lo + hi) * lit::<T>(0.5);
        if q_function(mid) > p {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo <= T::epsilon() * hi.abs().max(lo.abs()).max(T::one()) {
            break;
        }
    }
    let mut x = (lo + hi) * lit::<T>(0.5);
    let norm = lit::<T>(0.398_942_280_401_432_7); // 1/sqrt(2 pi)
    for _ in 0..NEWTON_ITERS {
        let density = norm * (-x * x * lit::<T>(0.5)).exp();
        if density < lit::<T>(1e-280) {
            break;
        }
        x = x + (q_function(x) - p) / density;
    }
    Ok(x)
}
