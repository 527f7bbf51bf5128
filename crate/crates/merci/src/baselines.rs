//! Comparison metrics from prior practice: sparsification curves, their
//! area summary, and the negative log predictive density.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::metric::EvalSet;

/// Remaining error as the most-uncertain samples are removed.
///
/// `mae_remaining[j]` is the MAE after removing the `floor(fractions_removed[j] * N)`
/// samples with the largest predicted uncertainty; the oracle variant
/// removes by largest true error instead.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SparsificationCurve {
    pub fractions_removed: Vec<f64>,
    pub mae_remaining: Vec<f64>,
    pub oracle_mae_remaining: Vec<f64>,
}

/// Computes the sparsification curve at `steps` evenly spaced fractions
/// `0, 1/steps, ..., (steps-1)/steps`.
///
/// Ties in uncertainty (or error, for the oracle) are broken by input
/// order: among equal keys the earlier sample is removed first.
pub fn sparsification(set: &EvalSet, steps: usize) -> Result<SparsificationCurve> {
    if steps < 2 {
        return Err(Error::invalid("sparsification requires steps >= 2"));
    }
    let n = set.len();
    if n < steps {
        return Err(Error::invalid(format!(
            "set of {n} samples is smaller than {steps} steps"
        )));
    }

    let errors = set.abs_errors();
    let by_sigma = sorted_desc(set.samples().iter().map(|s| s.sigma));
    let by_error = sorted_desc(errors.iter().copied());

    let mut fractions_removed = Vec::with_capacity(steps);
    let mut mae_remaining = Vec::with_capacity(steps);
    let mut oracle_mae_remaining = Vec::with_capacity(steps);
    for j in 0..steps {
        let f = j as f64 / steps as f64;
        let removed = (f * n as f64).floor() as usize;
        fractions_removed.push(f);
        mae_remaining.push(mean_excluding(&errors, &by_sigma[..removed]));
        oracle_mae_remaining.push(mean_excluding(&errors, &by_error[..removed]));
    }

    Ok(SparsificationCurve {
        fractions_removed,
        mae_remaining,
        oracle_mae_remaining,
    })
}

/// Indices sorted by key descending, stable in input order.
fn sorted_desc(keys: impl Iterator<Item = f64>) -> Vec<usize> {
    let keys: Vec<f64> = keys.collect();
    let mut idx: Vec<usize> = (0..keys.len()).collect();
    idx.sort_by(|&a, &b| f64::total_cmp(&keys[b], &keys[a]));
    idx
}

fn mean_excluding(errors: &[f64], removed: &[usize]) -> f64 {
    let mut excluded = vec![false; errors.len()];
    for &i in removed {
        excluded[i] = true;
    }
    let kept: Vec<f64> = errors
        .iter()
        .enumerate()
        .filter(|(i, _)| !excluded[*i])
        .map(|(_, &e)| e)
        .collect();
    kept.iter().sum::<f64>() / kept.len() as f64
}

/// Trapezoidal area between the curve and its oracle. Zero iff they
/// coincide; positive otherwise.
pub fn ause(curve: &SparsificationCurve) -> f64 {
    let f = &curve.fractions_removed;
    let gap: Vec<f64> = curve
        .mae_remaining
        .iter()
        .zip(&curve.oracle_mae_remaining)
        .map(|(m, o)| m - o)
        .collect();
    let mut area = 0.0;
    for j in 1..f.len() {
        area += (f[j] - f[j - 1]) * (gap[j] + gap[j - 1]) / 2.0;
    }
    area
}

/// Average negative log predictive density under a Gaussian predictive
/// distribution with mean `y_hat` and standard deviation `sigma`.
///
/// Fails if any sigma is zero; unlike the rescaled scores, this metric is
/// not scale invariant and directly penalizes over- and under-confidence.
pub fn nlpd(set: &EvalSet) -> Result<f64> {
    const HALF_LN_TWO_PI: f64 = 0.918_938_533_204_672_7;
    let mut sum = 0.0;
    for s in set.samples() {
        if s.sigma == 0.0 {
            return Err(Error::invalid("NLPD undefined for zero variance"));
        }
        let eps = s.abs_error();
        sum += s.sigma.ln() + HALF_LN_TWO_PI + eps * eps / (2.0 * s.sigma * s.sigma);
    }
    Ok(sum / set.len() as f64)
}
