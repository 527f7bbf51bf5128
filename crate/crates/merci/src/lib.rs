//! Scoring of predictive uncertainty for regression, plus a desk-scale
//! benchmark harness.
//!
//! The crate has two halves:
//!
//! - [`metric`] and [`baselines`]: pure scoring functions over
//!   (prediction, uncertainty, observation) triplets. The headline score
//!   rescales all uncertainties by one common factor until they cover a
//!   chosen percentile of the observed errors, then normalizes so that an
//!   oracle (uncertainty equal to the actual error) scores 0 and a constant
//!   uninformative predictor scores 1.
//! - [`nn`], [`ensemble`], and [`toy`]: a small feed-forward network and six
//!   uncertainty estimators (Monte Carlo dropout, multiple inits, bagging,
//!   multiple epochs, multiple architectures, a learned error net), wired
//!   into a one-dimensional cubic-regression benchmark that ranks the
//!   estimators by the normalized score.
//!
//! File ingestion, report emission, and the `merci` command-line tool live
//! in [`triplet`], [`report`], [`svg`], and [`cli`]. See the crate examples
//! for one runnable program per capability.

pub mod baselines;
pub mod cli;
pub mod ensemble;
pub mod error;
pub mod metric;
pub mod nn;
pub mod report;
pub mod svg;
pub mod toy;
pub mod triplet;

pub use error::{Error, Result};
pub use metric::{
    percentile_nearest_rank, BinSummary, BinnedEval, EvalSet, MetricConfig, MetricReport, Sample,
};
