//! Modified Bessel function of the first kind, order zero.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// `I0(t) = sum (t/2)^{2k} / (k!)^2`, summed with a certified geometric
/// tail. Series only: arguments past 700 would overflow the `e^t` scale
/// and are rejected.
pub fn bessel_i0<T: Real>(t: T) -> Result<T> {
    if !(t >= T::zero()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 700.0,
        });
    }
    if t > T::of(700.0) {
        return Err(Error::Overflow(
            "bessel_i0 argument beyond the binary64 e^t range",
        ));
    }
    let z = t * t / T::of(4.0);
    let mut term = T::one();
    let mut sum = T::one();
    for k in 1..100_000usize {
        let kf = T::of_usize(k);
        term = term * z / (kf * kf);
        sum += term;
        // ratio z/(k+1)^2 is decreasing; once below one the tail is geometric
        let ratio = z / (T::of_usize(k + 1) * T::of_usize(k + 1));
        if ratio < T::one() {
            let tail = term * ratio / (T::one() - ratio);
            if tail <= T::of(1e-17) * sum {
                return Ok(sum);
            }
        }
    }
    Err(Error::Truncation { terms: 100_000 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn at_zero() {
        assert_eq!(bessel_i0(0.0f64).unwrap(), 1.0);
    }

    #[test]
    fn at_one() {
        let got = bessel_i0(1.0f64).unwrap();
        assert!((got - 1.2660658778).abs() < 1e-9);
        // independent factorial-series oracle
        let mut oracle = 0.0f64;
        let mut fact = 1.0f64;
        for k in 0..40 {
            if k > 0 {
                fact *= k as f64;
            }
            oracle += (0.5f64.powi(k) / fact).powi(2);
        }
        assert!((got - oracle).abs() < 1e-14 * oracle);
    }

    #[test]
    fn moderate_argument_reference() {
        // I0(10) from the defining series computed with extra headroom
        let mut oracle = 0.0f64;
        let mut log_fact = 0.0f64;
        for k in 0..120 {
            if k > 0 {
                log_fact += (k as f64).ln();
            }
            oracle += (2.0 * (k as f64) * 5.0f64.ln() - 2.0 * log_fact).exp();
        }
        let got = bessel_i0(10.0f64).unwrap();
        assert!((got - oracle).abs() < 1e-13 * oracle, "{got} vs {oracle}");
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(bessel_i0(-1.0f64).is_err());
        assert!(bessel_i0(701.0f64).is_err());
        assert!(bessel_i0(699.0f64).is_ok());
    }
}
