//! Edgeworth-series approximations to the sampling distribution of smooth
//! functions of sample means.
//!
//! The pipeline runs bottom-up:
//!
//! - [`series`]: truncated multivariate polynomials and half-power series in `1/n`.
//! - [`moments`]: joint central moments, cumulants and moments of sample means.
//! - [`delta`]: expansion of a statistic in the mean deviations and reduction to
//!   mean, variance, skewness and excess kurtosis.
//! - [`edgeworth`]: the four-term Edgeworth density and its change of variables.
//! - [`exact`]: Hotelling's exact density of `r` and a Monte Carlo sampler.
//! - [`metrics`]: CDFs by quadrature, interval-probability error and KS distance.
//! - [`scalar`]: `f64` and double-double coefficient scalars.
//! - [`cli`]: the `edgeworth-lab` command surface.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod delta;
pub mod edgeworth;
pub mod error;
pub mod exact;
pub mod metrics;
pub mod moments;
pub mod scalar;
pub mod series;

pub use error::{Error, Result};
