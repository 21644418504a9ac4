//! Averaged characteristic polynomials of Gaussian and chiral Gaussian
//! random matrix ensembles with a source.
//!
//! The crate is organised bottom-up:
//!
//! - [`specfun`]: Hermite/Laguerre polynomials in overflow-safe arithmetic,
//!   scalar `0F1`, Airy functions and the incomplete multiple Airy and
//!   Hermite functions, Gauss quadrature rules.
//! - [`jack`]: Jack polynomials and the truncated multivariate
//!   hypergeometric series `0F0`, `0F1`.
//! - [`ensembles`]: eigenvalue samplers (shifted GOE/GUE, Wishart with a
//!   source, and the general-beta recursive construction).
//! - [`charpoly`]: closed forms for the averaged characteristic polynomials
//!   and the Monte Carlo estimator checking them.
//! - [`duality`]: two-sided numerical checks of the duality identities.
//! - [`scaling`]: soft-edge limits and convergence tables.
//! - [`cli`]: the command-line front end behind the `rmt-source` binary.
//!
//! See the `examples/` directory for one runnable program per capability.

// `!(x > 0.0)` is used deliberately so that NaN fails validation.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod charpoly;
pub mod cli;
pub mod duality;
pub mod ensembles;
pub mod error;
pub mod jack;
pub mod scaling;
pub mod specfun;

pub use error::{Error, Result};
