//! Scalar special functions: orthogonal polynomials in scaled arithmetic,
//! the scalar `0F1`, Airy functions, and their incomplete multiple variants.

mod airy;
mod hyp;
mod incomplete_hermite;
mod orthopoly;
pub mod quadrature;
mod scaled;

pub use airy::{
    airy, incomplete_airy, incomplete_airy_contour, AiryOperatorForm, Poly, AI_PRIME_ZERO, AI_ZERO,
};
pub use hyp::{hyp0f1, hyp0f1_real, hyp0f1_series};
pub use incomplete_hermite::{
    incomplete_hermite, incomplete_hermite_capped, incomplete_hermite_contour, poly_from_roots,
    CONTOUR_MAX_N, DEFAULT_DEGREE_LIMIT,
};
pub use orthopoly::{hermite, hermite_table, laguerre, laguerre_exp_weighted, laguerre_table};
pub use quadrature::{quadrature_rule, QuadratureKind, QuadratureRule};
pub use scaled::ScaledValue;
