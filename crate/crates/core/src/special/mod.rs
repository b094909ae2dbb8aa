//! Special functions backing the oracle routes: Legendre polynomials, the
//! modified Bessel function `I0`, and the Gauss-Chebyshev quadrature for
//! the binomial index of coincidence.

mod bessel;
mod legendre;
mod quadrature;

pub use bessel::bessel_i0;
pub use legendre::{legendre_pair, LegendrePair};
pub use quadrature::ioc_binomial_quadrature;
