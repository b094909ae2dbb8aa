//! Scalar abstraction for the floating-point core.
//!
//! Everything outside [`crate::identities`] is generic over a [`Real`]
//! scalar so the same formulas run in `f32` or `f64`. All shipped
//! tolerances assume IEEE-754 binary64, so `f64` is the default used by
//! the crate-root aliases and the CLI.

use std::fmt::{Debug, Display};

use num_traits::{Float, FloatConst, FromPrimitive, NumAssignOps};

/// Floating-point scalar the numeric core is generic over.
pub trait Real:
    Float + FloatConst + FromPrimitive + NumAssignOps + Debug + Display + 'static
{
    /// Lossless-enough conversion from an `f64` literal.
    #[inline]
    fn of(x: f64) -> Self {
        Self::from_f64(x).expect("literal conversion")
    }

    /// Conversion from a term index / integer count.
    #[inline]
    fn of_usize(n: usize) -> Self {
        Self::from_usize(n).expect("index conversion")
    }

    #[inline]
    fn two() -> Self {
        Self::of(2.0)
    }

    #[inline]
    fn half() -> Self {
        Self::of(0.5)
    }
}

impl<T> Real for T where
    T: Float + FloatConst + FromPrimitive + NumAssignOps + Debug + Display + 'static
{
}

/// Lanczos coefficients (g = 10.900511, 11 terms), good for ~16 digits in
/// binary64.
const LANCZOS_DK: [f64; 11] = [
    2.48574089138753565546e-5,
    1.05142378581721974210,
    -3.45687097222016235469,
    4.51227709466894823700,
    -2.98285225323576655721,
    1.05639711577126713077,
    -1.95428773191645869583e-1,
    1.70970543404441224307e-2,
    -5.71926117404305781283e-4,
    4.63399473359905636708e-6,
    -2.71994908488607703910e-9,
];

const LANCZOS_R: f64 = 10.900511;

/// ln(2·sqrt(e/pi))
const LN_2_SQRT_E_OVER_PI: f64 = 0.6207822376352452223455184457816472122518527279025978;

/// Natural log of the gamma function for positive arguments.
///
/// Lanczos approximation; relative accuracy ~1e-15 in binary64. The
/// callers in this crate only need `x > 0`.
pub fn ln_gamma<T: Real>(x: T) -> T {
    debug_assert!(x > T::zero());
    let mut s = T::of(LANCZOS_DK[0]);
    for (i, &d) in LANCZOS_DK.iter().enumerate().skip(1) {
        s = s + T::of(d) / (x + T::of_usize(i) - T::one());
    }
    let r = T::of(LANCZOS_R);
    s.ln() + T::of(LN_2_SQRT_E_OVER_PI) + (x - T::half()) * ((x - T::half() + r) / T::E()).ln()
}
