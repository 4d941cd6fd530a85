//! Arbitrary-precision workbench for a pair of truncated series expansions
//! of the Riemann zeta function in the critical strip.
//!
//! The crate evaluates, cross-checks and reports on:
//!
//! - a residue-sum / contour-integral decomposition of an integral
//!   representation of zeta, with a numerically verifiable Cauchy residual;
//! - two order-N truncated expansions `zeta_n_prime` and `zeta_n_dprime`
//!   that approximate zeta(s) from opposite sides of the functional
//!   equation, together with their dilogarithmic error factors;
//! - the closed-form difference quotient relating the two truncation
//!   errors, its critical-line identities and leading-term constants;
//! - zero searches for the truncated expansions around zeros of zeta.
//!
//! Everything runs under a [`NumericContext`] that fixes the decimal
//! working precision and a deterministic summation policy, so identical
//! inputs produce bit-identical results. See the `examples/` directory for
//! one runnable program per capability, and the `zeta-lab` binary for the
//! reproduction and sweep commands.

pub mod cli;
pub mod context;
pub mod contour;
pub mod error;
pub mod expansions;
pub mod numeric;
pub(crate) mod quad;
pub mod quotient;
pub mod report;
pub mod strip;
pub mod zeros;
pub mod zeta;

pub use context::{NumericContext, SummationOrder};
pub use error::{Error, Result};
pub use strip::StripPoint;

pub use rug::{Complex, Float};
