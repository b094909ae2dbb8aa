//! Numerics for the one-parameter probability family spanning the
//! binomial (`c = -1`), Poisson (`c = 0`) and negative binomial (`c = 1`)
//! distributions: its index of coincidence `S = sum p_k^2` with first and
//! second derivatives, order-2 Renyi/Tsallis and Shannon entropies, every
//! closed-form bound relating them, the Legendre/Bessel special functions
//! those bounds lean on, and two exact combinatorial identities.
//!
//! The floating-point core is generic over a [`Real`] scalar; all shipped
//! tolerances target binary64, and the crate-root aliases fix `f64` as the
//! scalar the CLI and test suites use. The identities module alone works
//! in exact big-rational arithmetic.
//!
//! Every operation is a pure function of its arguments: no global state
//! beyond idempotent memo tables, ascending summation order, bit-stable
//! results under caller parallelism.

pub mod bounds;
pub mod error;
pub mod fd;
pub mod identities;
pub mod ioc;
pub mod params;
pub mod pmf;
pub mod scalar;
pub mod special;

pub use bounds::{BoundId, BoundInputs, BoundReport};
pub use error::{Error, Result};
pub use ioc::{EntropyValues, IocTriple};
pub use params::{EvalConfig, FamilyParams};
pub use scalar::Real;

/// Default scalar: all documented tolerances assume binary64.
pub type Scalar = f64;

/// Family parameters over the default scalar.
pub type FamilyParams64 = FamilyParams<Scalar>;
/// Evaluation configuration over the default scalar.
pub type EvalConfig64 = EvalConfig<Scalar>;
/// `(S, S', S'')` over the default scalar.
pub type IocTriple64 = IocTriple<Scalar>;
/// Entropy triple over the default scalar.
pub type EntropyValues64 = EntropyValues<Scalar>;
/// Bound inputs over the default scalar.
pub type BoundInputs64 = BoundInputs<Scalar>;
/// Per-point bound report over the default scalar.
pub type BoundReport64 = BoundReport<Scalar>;
