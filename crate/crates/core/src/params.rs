//! Family parameters and evaluation configuration.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Parameters `(n, c)` of the probability family.
///
/// The curvature parameter `c` selects the distribution: `c = -1` binomial,
/// `c = 0` Poisson, `c = 1` negative binomial, with every real value in
/// between or beyond admitted subject to the constraints below.
///
/// Invariants enforced by [`FamilyParams::new`]:
/// * `c >= 0` requires `n > c`;
/// * `c < 0` requires `n = -c * l` for an integer `l >= 1` (the binomial
///   order after reduction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FamilyParams<T: Real> {
    c: T,
    n: T,
    /// Binomial order; present iff `c < 0`.
    l: Option<u32>,
}

impl<T: Real> FamilyParams<T> {
    /// Largest binomial order accepted for `c < 0`.
    ///
    /// Exact binomial coefficients are computed as integer products up to
    /// this order.
    pub const MAX_BINOMIAL_ORDER: u32 = 10_000;

    /// Validates and builds family parameters.
    pub fn new(c: T, n: T) -> Result<Self> {
        if !c.is_finite() || !n.is_finite() {
            return Err(Error::InvalidParams("c and n must be finite".into()));
        }
        if n <= T::zero() {
            return Err(Error::InvalidParams(format!(
                "n must be positive, got n = {n}"
            )));
        }
        if c >= T::zero() {
            if n <= c {
                return Err(Error::InvalidParams(format!(
                    "for c >= 0 the constraint n > c must hold, got n = {n}, c = {c}"
                )));
            }
            Ok(Self { c, n, l: None })
        } else {
            let ratio = n / -c;
            let rounded = ratio.round();
            if (ratio - rounded).abs() > T::of(1e-9) * ratio.max(T::one()) {
                return Err(Error::InvalidParams(format!(
                    "for c < 0, n must equal -c*l for an integer l >= 1, got n/(-c) = {ratio}"
                )));
            }
            let l = rounded
                .to_u32()
                .filter(|&l| l >= 1 && l <= Self::MAX_BINOMIAL_ORDER)
                .ok_or_else(|| {
                    Error::InvalidParams(format!(
                        "binomial order l = {rounded} outside 1..={}",
                        Self::MAX_BINOMIAL_ORDER
                    ))
                })?;
            Ok(Self { c, n, l: Some(l) })
        }
    }

    /// Binomial family of order `l` (`c = -1`, `n = l`).
    pub fn binomial(l: u32) -> Result<Self> {
        Self::new(-T::one(), T::of_usize(l as usize))
    }

    /// Poisson family (`c = 0`).
    pub fn poisson(n: T) -> Result<Self> {
        Self::new(T::zero(), n)
    }

    #[inline]
    pub fn c(&self) -> T {
        self.c
    }

    #[inline]
    pub fn n(&self) -> T {
        self.n
    }

    /// Binomial order, present iff `c < 0`.
    #[inline]
    pub fn l(&self) -> Option<u32> {
        self.l
    }

    /// Upper end of the domain: `-1/c` for `c < 0`, `+inf` otherwise.
    #[inline]
    pub fn domain_hi(&self) -> T {
        if self.c < T::zero() {
            -self.c.recip()
        } else {
            T::infinity()
        }
    }

    /// Checks `x` lies in the domain `I_c`.
    pub fn check_domain(&self, x: T) -> Result<()> {
        let hi = self.domain_hi();
        if x.is_finite() && x >= T::zero() && x <= hi {
            Ok(())
        } else {
            Err(Error::Domain {
                x: x.to_f64().unwrap_or(f64::NAN),
                lo: 0.0,
                hi: hi.to_f64().unwrap_or(f64::INFINITY),
            })
        }
    }

    /// True when `x` is the upper domain endpoint of a `c < 0` family.
    #[inline]
    pub(crate) fn at_upper_endpoint(&self, x: T) -> bool {
        self.c < T::zero() && x == self.domain_hi()
    }
}

/// Truncation and cross-check configuration for series evaluation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalConfig<T: Real> {
    /// Relative tail tolerance for certified truncation.
    pub rel_tol: T,
    /// Hard cap on summed terms.
    pub max_terms: usize,
    /// Step for central finite-difference cross checks.
    pub deriv_step: T,
}

impl<T: Real> Default for EvalConfig<T> {
    fn default() -> Self {
        Self {
            rel_tol: T::of(1e-13),
            max_terms: 10_000_000,
            deriv_step: T::of(1e-5),
        }
    }
}

impl<T: Real> EvalConfig<T> {
    /// Validates configuration invariants (`rel_tol < 1`, `max_terms >= 64`).
    pub fn validated(self) -> Result<Self> {
        if !(self.rel_tol > T::zero() && self.rel_tol < T::one()) {
            return Err(Error::InvalidParams(format!(
                "rel_tol must lie in (0, 1), got {}",
                self.rel_tol
            )));
        }
        if self.max_terms < 64 {
            return Err(Error::InvalidParams(format!(
                "max_terms must be at least 64, got {}",
                self.max_terms
            )));
        }
        if !(self.deriv_step > T::zero()) {
            return Err(Error::InvalidParams(format!(
                "deriv_step must be positive, got {}",
                self.deriv_step
            )));
        }
        Ok(self)
    }
}
