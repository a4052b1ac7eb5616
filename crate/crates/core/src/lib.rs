//! Upper bounds on the Grothendieck constant from concept functions.
//!
//! The pipeline: a unimodular concept `b` yields a correlation function
//! `h_b(rho) = E[b(X) b(Y)]` with non-negative Hermite–Fourier coefficients;
//! inverting the series (ordinary partial Bell polynomials), taking the
//! absolute-coefficient majorant `f_b` and solving `f_b(r) = 1` gives the
//! bound `K_G <= 1/r`. Supporting machinery: closed-form special functions,
//! correlation-matrix Schur calculus, and Monte-Carlo Gaussian oracles that
//! cross-check every closed-form identity at desk scale.

pub mod bell;
pub mod concepts;
pub mod constants;
pub mod corr;
pub mod error;
pub mod oracle;
pub mod pipeline;
pub mod quad;
pub mod series;
pub mod special;

pub use error::{Error, Result};
