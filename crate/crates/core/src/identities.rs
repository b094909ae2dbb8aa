//! Exact verification of the two combinatorial identities satisfied by
//! the squared binomial weights.
//!
//! Everything here is arbitrary-precision integer/rational arithmetic;
//! the alternating sum in [`identity_two`] cancels catastrophically in
//! floating point, so no float shortcut exists on this path.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

/// Reduced arbitrary-precision rational (positive denominator).
pub type ExactRational = BigRational;

/// Largest `n` accepted by the identity checks.
pub const MAX_IDENTITY_N: u32 = 500;

/// Pascal row `C(n, 0..=n)` as exact integers, memoized per `n`.
/// Population is idempotent; concurrent writers simply race to insert the
/// same row.
fn binomial_row(n: u32) -> Arc<Vec<BigInt>> {
    static CACHE: RwLock<Option<HashMap<u32, Arc<Vec<BigInt>>>>> = RwLock::new(None);

    if let Some(row) = CACHE
        .read()
        .expect("binomial cache poisoned")
        .as_ref()
        .and_then(|map| map.get(&n).cloned())
    {
        return row;
    }
    let mut row = Vec::with_capacity(n as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..n {
        c = c * (n - k) / (k + 1);
        row.push(c.clone());
    }
    let row = Arc::new(row);
    CACHE
        .write()
        .expect("binomial cache poisoned")
        .get_or_insert_with(HashMap::new)
        .insert(n, row.clone());
    row
}

/// Exact `C(n, k)`.
pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    binomial_row(n)[k as usize].clone()
}

/// Outcome of one identity evaluation: both sides exactly, plus the
/// equality verdict.
#[derive(Debug, Clone, PartialEq)]
pub struct IdentityCheck {
    pub lhs: ExactRational,
    pub rhs: ExactRational,
    pub equal: bool,
}

fn check_range(n: u32, k: u32, what: &str) -> Result<()> {
    if n > MAX_IDENTITY_N {
        return Err(Error::InvalidParams(format!(
            "identity order n = {n} exceeds {MAX_IDENTITY_N}"
        )));
    }
    if k > n {
        return Err(Error::InvalidParams(format!(
            "{what} = {k} must lie in 0..={n}"
        )));
    }
    Ok(())
}

/// `sum_{j=k}^{n} C(j,k) C(2j,j) C(2n-2j,n-j) = 4^(n-k) C(n,k) C(2k,k)`.
pub fn identity_one(n: u32, k: u32) -> Result<IdentityCheck> {
    check_range(n, k, "k")?;
    let mut lhs = BigInt::zero();
    for j in k..=n {
        lhs += binomial(j, k) * binomial(2 * j, j) * binomial(2 * (n - j), n - j);
    }
    let rhs = BigInt::from(4u32).pow(n - k) * binomial(n, k) * binomial(2 * k, k);
    let lhs = ExactRational::from_integer(lhs);
    let rhs = ExactRational::from_integer(rhs);
    let equal = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, equal })
}

/// `sum_{i=0}^{n-j} (-1/4)^i C(n-j,i) C(2i+2j,i+j)
///  = 4^(j-n) C(2j,j) C(2n-2j,n-j) / C(n,j)`.
pub fn identity_two(n: u32, j: u32) -> Result<IdentityCheck> {
    check_range(n, j, "j")?;
    let mut lhs = ExactRational::zero();
    let minus_quarter = ExactRational::new(BigInt::from(-1), BigInt::from(4));
    let mut sign_pow = ExactRational::one();
    for i in 0..=(n - j) {
        let term = binomial(n - j, i) * binomial(2 * (i + j), i + j);
        lhs += &sign_pow * ExactRational::from_integer(term);
        sign_pow *= &minus_quarter;
    }
    let rhs = ExactRational::new(
        binomial(2 * j, j) * binomial(2 * (n - j), n - j),
        BigInt::from(4u32).pow(n - j) * binomial(n, j),
    );
    let equal = lhs == rhs;
    Ok(IdentityCheck { lhs, rhs, equal })
}
