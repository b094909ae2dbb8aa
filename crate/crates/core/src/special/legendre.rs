//! Legendre polynomials and their derivatives on `t >= 1`.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `P_n(t)` together with `P'_n(t)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LegendrePair<T> {
    pub p: T,
    pub dp: T,
}

/// Evaluates `P_n` by the three-term recurrence
/// `(k+1) P_{k+1} = (2k+1) t P_k - k P_{k-1}`.
///
/// The derivative uses `P'_n = n (t P_n - P_{n-1}) / (t^2 - 1)` away from
/// one. Within `1e-6` of `t = 1` the numerator cancels to `O(t-1)` and
/// that form loses up to ten digits, so the derivative recurrence
/// `P'_{k+1} = P'_{k-1} + (2k+1) P_k` (all terms positive, exact at
/// `t = 1` where it yields `n(n+1)/2`) is run instead.
pub fn legendre_pair<T: Real>(n: u32, t: T) -> Result<LegendrePair<T>> {
    if !(t >= T::one()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    if n == 0 {
        return Ok(LegendrePair {
            p: T::one(),
            dp: T::zero(),
        });
    }

    let near_one = (t - T::one()).abs() <= T::of(1e-6);
    let mut p_prev = T::one(); // P_0
    let mut p = t; // P_1
    let mut dp_prev = T::zero(); // P'_0
    let mut dp = T::one(); // P'_1
    for k in 1..n {
        let kf = T::of_usize(k as usize);
        let next = ((T::two() * kf + T::one()) * t * p - kf * p_prev) / (kf + T::one());
        if near_one {
            let dnext = dp_prev + (T::two() * kf + T::one()) * p;
            dp_prev = dp;
            dp = dnext;
        }
        p_prev = p;
        p = next;
    }

    let dp = if near_one {
        dp
    } else {
        T::of_usize(n as usize) * (t * p - p_prev) / (t * t - T::one())
    };
    Ok(LegendrePair { p, dp })
}
