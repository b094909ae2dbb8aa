//! Gauss-Chebyshev quadrature oracle for the binomial index of
//! coincidence.
//!
//! `S_{n,-1}(t)` has the integral representation
//! `(1/pi) * integral_0^1 (x + (1-x)(1-2t)^2)^n / sqrt(x(1-x)) dx`;
//! after `x = (1+u)/2` the weight becomes the Chebyshev one and an
//! `(n+1)`-node rule integrates the degree-`n` integrand exactly.

use std::collections::HashMap;
use std::sync::{Arc, RwLock};

use crate::error::{Error, Result};
use crate::scalar::Real;

/// Chebyshev nodes `cos((2i-1) pi / (2m))`, memoized per node count.
/// Population is idempotent, so racing writers are harmless.
fn chebyshev_nodes(m: u32) -> Arc<Vec<f64>> {
    static CACHE: RwLock<Option<HashMap<u32, Arc<Vec<f64>>>>> = RwLock::new(None);

    if let Some(nodes) = CACHE
        .read()
        .expect("node cache poisoned")
        .as_ref()
        .and_then(|map| map.get(&m).cloned())
    {
        return nodes;
    }
    let nodes: Arc<Vec<f64>> = Arc::new(
        (1..=m)
            .map(|i| ((2 * i - 1) as f64 * std::f64::consts::PI / (2 * m) as f64).cos())
            .collect(),
    );
    CACHE
        .write()
        .expect("node cache poisoned")
        .get_or_insert_with(HashMap::new)
        .insert(m, nodes.clone());
    nodes
}

/// Binomial index of coincidence via the quadrature oracle; agrees with
/// the series route to rounding.
pub fn ioc_binomial_quadrature<T: Real>(n: u32, t: T) -> Result<T> {
    if n == 0 || n > 10_000 {
        return Err(Error::InvalidParams(format!(
            "quadrature order must lie in 1..=10000, got {n}"
        )));
    }
    if !(t >= T::zero() && t <= T::one()) {
        return Err(Error::Domain {
            x: num_traits::ToPrimitive::to_f64(&t).unwrap_or(f64::NAN),
            lo: 0.0,
            hi: 1.0,
        });
    }
    let m = n + 1;
    let nodes = chebyshev_nodes(m);
    let a = T::one() - T::two() * t;
    let a2 = a * a;
    let mut sum = T::zero();
    for &u in nodes.iter() {
        let x = (T::one() + T::of(u)) * T::half();
        sum += (x + (T::one() - x) * a2).powi(n as i32);
    }
    Ok(sum / T::of_usize(m as usize))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bernoulli_case() {
        let got = ioc_binomial_quadrature::<f64>(1, 0.25).unwrap();
        assert!((got - 0.625).abs() < 1e-15);
    }

    #[test]
    fn unit_at_t_zero() {
        for n in [1u32, 7, 200] {
            let got = ioc_binomial_quadrature::<f64>(n, 0.0).unwrap();
            assert!((got - 1.0).abs() < 1e-15, "n={n}");
        }
    }

    #[test]
    fn central_value_exact_combinatorics() {
        // S_{n,-1}(1/2) = C(2n, n) / 4^n
        let exact = |n: i32| -> f64 {
            let mut c = 1.0f64;
            for j in 1..=n {
                c *= (n + j) as f64 / j as f64;
            }
            c / 4.0f64.powi(n)
        };
        for n in [1u32, 3, 6, 12] {
            let got = ioc_binomial_quadrature::<f64>(n, 0.5).unwrap();
            let want = exact(n as i32);
            assert!((got - want).abs() < 1e-14 * want, "n={n}: {got} vs {want}");
        }
    }

    #[test]
    fn rejects_invalid_input() {
        assert!(ioc_binomial_quadrature::<f64>(0, 0.5).is_err());
        assert!(ioc_binomial_quadrature::<f64>(10_001, 0.5).is_err());
        assert!(ioc_binomial_quadrature::<f64>(3, 1.5).is_err());
        assert!(ioc_binomial_quadrature::<f64>(3, -0.1).is_err());
    }
}
