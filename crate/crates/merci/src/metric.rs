//! Rescaled-confidence-interval scores for predictive uncertainty.
//!
//! Given triplets (prediction, predicted uncertainty, observation), the score
//! rescales all uncertainties by the smallest common factor that makes them
//! cover a chosen percentile of the observed errors, then averages them. The
//! normalized variant maps an ideal uncertainty predictor (sigma equal to the
//! actual error) to 0 and an uninformative constant predictor to 1, so
//! estimators with arbitrarily different uncertainty scales can be ranked on
//! one axis.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One evaluation triplet.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Sample {
    /// Predicted value, in target units.
    pub y_hat: f64,
    /// Predicted uncertainty (standard-deviation-like, same units). Must be >= 0.
    pub sigma: f64,
    /// Ground-truth observation.
    pub y_true: f64,
}

impl Sample {
    pub fn new(y_hat: f64, sigma: f64, y_true: f64) -> Result<Self> {
        let sample = Sample {
            y_hat,
            sigma,
            y_true,
        };
        sample.validate()?;
        Ok(sample)
    }

    /// Absolute error of the prediction.
    pub fn abs_error(&self) -> f64 {
        (self.y_hat - self.y_true).abs()
    }

    fn validate(&self) -> Result<()> {
        if !(self.y_hat.is_finite() && self.sigma.is_finite() && self.y_true.is_finite()) {
            return Err(Error::invalid("sample fields must be finite"));
        }
        if self.sigma < 0.0 {
            return Err(Error::invalid("invalid uncertainty: sigma must be >= 0"));
        }
        Ok(())
    }
}

/// An ordered, non-empty collection of evaluation samples.
///
/// Order is preserved from ingestion; every score is permutation invariant,
/// so the order only matters for tie-breaking in downstream consumers that
/// document it (see the sparsification baseline).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EvalSet {
    samples: Vec<Sample>,
}

impl EvalSet {
    /// Validates every sample and rejects empty input.
    pub fn new(samples: Vec<Sample>) -> Result<Self> {
        if samples.is_empty() {
            return Err(Error::EmptySet);
        }
        for (i, s) in samples.iter().enumerate() {
            s.validate()
                .map_err(|e| Error::invalid(format!("sample {i}: {e}")))?;
        }
        Ok(EvalSet { samples })
    }

    /// Builds a set from parallel slices of equal length.
    pub fn from_parts(y_hat: &[f64], sigma: &[f64], y_true: &[f64]) -> Result<Self> {
        if y_hat.len() != sigma.len() || y_hat.len() != y_true.len() {
            return Err(Error::invalid(
                "y_hat, sigma, y_true must have equal length",
            ));
        }
        let samples = y_hat
            .iter()
            .zip(sigma)
            .zip(y_true)
            .map(|((&y_hat, &sigma), &y_true)| Sample {
                y_hat,
                sigma,
                y_true,
            })
            .collect();
        EvalSet::new(samples)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        false // non-empty by construction
    }

    pub fn samples(&self) -> &[Sample] {
        &self.samples
    }

    /// Per-sample absolute errors |y_hat - y_true|, in input order.
    pub fn abs_errors(&self) -> Vec<f64> {
        self.samples.iter().map(Sample::abs_error).collect()
    }

    /// Mean absolute error over all samples.
    pub fn mae(&self) -> f64 {
        compensated_mean(self.samples.iter().map(Sample::abs_error))
    }

    /// Per-sample ratios error / sigma, in input order.
    ///
    /// A zero sigma yields 0 when the error is also zero (a perfect
    /// prediction is covered by any rescaling) and +inf otherwise.
    pub fn lambda_ratios(&self) -> Vec<f64> {
        self.samples
            .iter()
            .map(|s| {
                let eps = s.abs_error();
                if s.sigma == 0.0 {
                    if eps == 0.0 {
                        0.0
                    } else {
                        f64::INFINITY
                    }
                } else {
                    eps / s.sigma
                }
            })
            .collect()
    }

    /// Mean of the predicted uncertainties over all samples.
    pub fn mean_sigma(&self) -> f64 {
        compensated_mean(self.samples.iter().map(|s| s.sigma))
    }

    /// Rescaling factor and rescaled mean uncertainty at the configured
    /// percentile.
    ///
    /// Returns `(lambda_alpha, score)` where `lambda_alpha` is the
    /// alpha-percentile of the error/sigma ratios and `score` is
    /// `lambda_alpha * mean(sigma)` with the mean taken over all samples.
    /// `lambda_alpha` is +inf when more than (100 - alpha)% of the samples
    /// have zero sigma with a nonzero error; the score is then +inf too and
    /// [`EvalSet::n_merci`] flags the report degenerate.
    pub fn merci(&self, cfg: &MetricConfig) -> (f64, f64) {
        let lambda_alpha = percentile_nearest_rank(&self.lambda_ratios(), cfg.alpha)
            .expect("set is non-empty and alpha is validated");
        let score = if lambda_alpha.is_infinite() {
            f64::INFINITY
        } else {
            lambda_alpha * self.mean_sigma()
        };
        (lambda_alpha, score)
    }

    /// Full normalized score.
    ///
    /// `n_merci = (merci - M) / (max_alpha_error - M)` where `max_alpha_error`
    /// is the alpha-percentile of the absolute errors and `M` is the full MAE
    /// (`trim_mae = false`) or the mean of the errors not exceeding
    /// `max_alpha_error` (`trim_mae = true`). The report is flagged
    /// degenerate, with `n_merci` absent, when the rescaling factor is
    /// infinite or the denominator vanishes (constant errors).
    pub fn n_merci(&self, cfg: &MetricConfig) -> MetricReport {
        let errors = self.abs_errors();
        let (lambda_alpha, merci) = self.merci(cfg);
        let max_alpha_error = percentile_nearest_rank(&errors, cfg.alpha)
            .expect("set is non-empty and alpha is validated");

        let (mae_used, n_used) = if cfg.trim_mae {
            let n = errors.iter().filter(|&&e| e <= max_alpha_error).count();
            let mean = compensated_mean(errors.iter().copied().filter(|&e| e <= max_alpha_error));
            (mean, n)
        } else {
            (self.mae(), self.len())
        };

        let denom = max_alpha_error - mae_used;
        // Constant-error sets can miss exact equality by a rounding ulp in
        // the mean; treat anything below a relative epsilon as degenerate.
        let guard = 1e-12 * max_alpha_error.abs().max(mae_used.abs());
        let degenerate = lambda_alpha.is_infinite() || denom.abs() <= guard;

        let n_merci = if degenerate {
            None
        } else {
            Some((merci - mae_used) / denom)
        };

        MetricReport {
            mae: mae_used,
            lambda_alpha,
            merci,
            n_merci,
            max_alpha_error,
            n_used,
            degenerate,
        }
    }

    /// Scores the set per ground-truth interval of width `bin_width`.
    ///
    /// Samples are partitioned by `y_true` into half-open bins
    /// `[k*w, (k+1)*w)` anchored at zero. Bins with fewer than two samples
    /// are kept in the output but flagged skipped (no report). The summary
    /// carries the plain averages of the per-bin scores over the bins that
    /// produced them.
    pub fn binned(&self, cfg: &MetricConfig, bin_width: f64) -> Result<BinnedEval> {
        if !(bin_width.is_finite() && bin_width > 0.0) {
            return Err(Error::invalid("bin_width must be finite and > 0"));
        }

        let mut buckets: std::collections::BTreeMap<i64, Vec<Sample>> =
            std::collections::BTreeMap::new();
        for s in &self.samples {
            let k = (s.y_true / bin_width).floor() as i64;
            buckets.entry(k).or_default().push(*s);
        }

        let mut bins = Vec::with_capacity(buckets.len());
        for (k, samples) in buckets {
            let low = k as f64 * bin_width;
            let high = (k + 1) as f64 * bin_width;
            let n = samples.len();
            let report = if n >= 2 {
                Some(EvalSet { samples }.n_merci(cfg))
            } else {
                None
            };
            bins.push(BinSummary {
                low,
                high,
                n,
                report,
            });
        }

        let mean_mae = mean_of(bins.iter().filter_map(|b| b.report.as_ref().map(|r| r.mae)));
        let mean_n_merci = mean_of(
            bins.iter()
                .filter_map(|b| b.report.as_ref().and_then(|r| r.n_merci)),
        );

        Ok(BinnedEval {
            bin_width,
            bins,
            mean_mae,
            mean_n_merci,
        })
    }
}

fn mean_of(values: impl Iterator<Item = f64>) -> Option<f64> {
    let mut sum = 0.0;
    let mut count = 0usize;
    for v in values {
        sum += v;
        count += 1;
    }
    (count > 0).then(|| sum / count as f64)
}

/// Mean via Neumaier-compensated summation. The normalized score divides by
/// a difference of means; naive summation over a thousand samples loses
/// enough ulps to push the identity cases past 1e-12.
fn compensated_mean(values: impl Iterator<Item = f64>) -> f64 {
    let mut sum = 0.0f64;
    let mut compensation = 0.0f64;
    let mut count = 0usize;
    for v in values {
        let t = sum + v;
        compensation += if sum.abs() >= v.abs() {
            (sum - t) + v
        } else {
            (v - t) + sum
        };
        sum = t;
        count += 1;
    }
    (sum + compensation) / count as f64
}

/// Percentile and trimming policy for the scores.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricConfig {
    /// Inlier percentile, in (0, 100].
    pub alpha: f64,
    /// When true, the MAE term (numerator offset and denominator offset)
    /// averages only the errors at or below the alpha-percentile error.
    pub trim_mae: bool,
}

impl MetricConfig {
    /// Validates `alpha` and picks the trimming default: trimmed below 100,
    /// untrimmed at exactly 100 (where trimming is a no-op anyway).
    pub fn new(alpha: f64) -> Result<Self> {
        if !(alpha.is_finite() && alpha > 0.0 && alpha <= 100.0) {
            return Err(Error::invalid(format!(
                "alpha must be in (0, 100], got {alpha}"
            )));
        }
        Ok(MetricConfig {
            alpha,
            trim_mae: alpha < 100.0,
        })
    }

    pub fn with_trim_mae(mut self, trim_mae: bool) -> Self {
        self.trim_mae = trim_mae;
        self
    }
}

/// Every score produced by one evaluation.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MetricReport {
    /// The MAE term used in the normalization: full MAE, or the trimmed mean
    /// when the config trims.
    pub mae: f64,
    /// Rescaling factor; +inf when the percentile ratio is unbounded.
    pub lambda_alpha: f64,
    /// Rescaled mean uncertainty.
    pub merci: f64,
    /// Normalized score: 0 for the oracle, 1 for a constant predictor.
    /// Absent when the report is degenerate.
    pub n_merci: Option<f64>,
    /// Alpha-percentile of the absolute errors (constant-predictor score).
    pub max_alpha_error: f64,
    /// Number of errors averaged into `mae`.
    pub n_used: usize,
    /// True when no finite normalized score exists: infinite rescaling
    /// factor, or constant errors collapsing the denominator.
    pub degenerate: bool,
}

/// Returns the k-th smallest element with k = ceil(alpha/100 * N).
///
/// This is the nearest-rank method: the result is always one of the input
/// values, and alpha = 100 returns the maximum. Values may contain +inf,
/// which sorts last. Fails on empty input or alpha outside (0, 100].
pub fn percentile_nearest_rank(values: &[f64], alpha: f64) -> Result<f64> {
    if values.is_empty() {
        return Err(Error::EmptySet);
    }
    if !(alpha.is_finite() && alpha > 0.0 && alpha <= 100.0) {
        return Err(Error::invalid(format!(
            "alpha must be in (0, 100], got {alpha}"
        )));
    }
    let n = values.len();
    let k = ((alpha * n as f64) / 100.0).ceil() as usize;
    let k = k.clamp(1, n);
    let mut sorted = values.to_vec();
    let (_, kth, _) = sorted.select_nth_unstable_by(k - 1, f64::total_cmp);
    Ok(*kth)
}

/// One ground-truth interval of a binned evaluation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinSummary {
    pub low: f64,
    pub high: f64,
    pub n: usize,
    /// Absent when the bin was skipped (fewer than two samples).
    pub report: Option<MetricReport>,
}

impl BinSummary {
    pub fn skipped(&self) -> bool {
        self.report.is_none()
    }
}

/// Result of [`EvalSet::binned`]: per-bin reports plus score averages.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BinnedEval {
    pub bin_width: f64,
    pub bins: Vec<BinSummary>,
    /// Average of the per-bin MAE terms over scored bins.
    pub mean_mae: Option<f64>,
    /// Average of the per-bin normalized scores over non-degenerate bins.
    pub mean_n_merci: Option<f64>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::prelude::*;
    use rand_chacha::ChaCha8Rng;

    fn set(y_hat: &[f64], sigma: &[f64], y_true: &[f64]) -> EvalSet {
        EvalSet::from_parts(y_hat, sigma, y_true).unwrap()
    }

    /// Set with given errors and sigmas; predictions sit above zero truths.
    fn set_from_errors(errors: &[f64], sigmas: &[f64]) -> EvalSet {
        let y_true = vec![0.0; errors.len()];
        EvalSet::from_parts(errors, sigmas, &y_true).unwrap()
    }

    fn random_set(rng: &mut ChaCha8Rng, n: usize) -> EvalSet {
        let samples = (0..n)
            .map(|_| Sample {
                y_hat: rng.gen_range(-10.0..10.0),
                sigma: rng.gen_range(0.01..5.0),
                y_true: rng.gen_range(-10.0..10.0),
            })
            .collect();
        EvalSet::new(samples).unwrap()
    }

    #[test]
    fn abs_errors_identity_case() {
        let s = set(&[2.0], &[1.0], &[2.0]);
        assert_eq!(s.abs_errors(), vec![0.0]);
    }

    #[test]
    fn abs_errors_direct_definition() {
        let s = set(&[1.0, 5.0], &[1.0, 1.0], &[3.0, 2.0]);
        assert_eq!(s.abs_errors(), vec![2.0, 3.0]);
    }

    #[test]
    fn abs_errors_match_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let s = random_set(&mut rng, 100);
        let got = s.abs_errors();
        for (i, sample) in s.samples().iter().enumerate() {
            let expected = (sample.y_hat - sample.y_true).abs();
            assert_eq!(got[i], expected, "element {i}");
        }
    }

    #[test]
    fn mae_of_two_errors() {
        let s = set_from_errors(&[2.0, 3.0], &[1.0, 1.0]);
        assert_eq!(s.mae(), 2.5);
    }

    #[test]
    fn mae_zero_for_perfect_predictions() {
        let s = set(&[1.0, -2.0, 0.5], &[1.0, 1.0, 1.0], &[1.0, -2.0, 0.5]);
        assert_eq!(s.mae(), 0.0);
    }

    #[test]
    fn mae_matches_brute_force_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let s = random_set(&mut rng, 50);
        let expected = s
            .samples()
            .iter()
            .map(|x| (x.y_hat - x.y_true).abs())
            .sum::<f64>()
            / 50.0;
        // Compensated summation may differ from the naive sum by an ulp.
        assert!((s.mae() - expected).abs() <= 1e-13 * expected);
    }

    #[test]
    fn empty_set_rejected() {
        assert!(matches!(EvalSet::new(vec![]), Err(Error::EmptySet)));
    }

    #[test]
    fn negative_sigma_rejected() {
        let err = Sample::new(1.0, -0.5, 1.0).unwrap_err();
        assert!(err.to_string().contains("invalid uncertainty"));
    }

    #[test]
    fn non_finite_sample_rejected() {
        assert!(Sample::new(f64::NAN, 1.0, 0.0).is_err());
        assert!(Sample::new(0.0, f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn percentile_alpha_100_is_max() {
        let values: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        assert_eq!(percentile_nearest_rank(&values, 100.0).unwrap(), 10.0);
    }

    #[test]
    fn percentile_alpha_50_of_ten() {
        let values: Vec<f64> = (1..=10).map(|i| i as f64).collect();
        assert_eq!(percentile_nearest_rank(&values, 50.0).unwrap(), 5.0);
    }

    #[test]
    fn percentile_unsorted_small() {
        // ceil(0.67 * 3) = ceil(2.01) = 3, i.e. the largest of the three.
        assert_eq!(
            percentile_nearest_rank(&[3.0, 1.0, 2.0], 67.0).unwrap(),
            3.0
        );
    }

    #[test]
    fn percentile_infinity_sorts_last() {
        let values = [1.0, f64::INFINITY, 2.0];
        assert_eq!(percentile_nearest_rank(&values, 50.0).unwrap(), 2.0);
        assert_eq!(
            percentile_nearest_rank(&values, 100.0).unwrap(),
            f64::INFINITY
        );
    }

    #[test]
    fn percentile_empty_errors() {
        assert!(percentile_nearest_rank(&[], 50.0).is_err());
    }

    /// Exhaustive check against a full-sort order-statistic oracle.
    #[test]
    fn percentile_matches_sort_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 1..=8usize {
            for trial in 0..40 {
                let mut values: Vec<f64> = (0..n)
                    .map(|_| {
                        // Mix in ties and an occasional infinity.
                        if trial % 5 == 0 && rng.gen_bool(0.2) {
                            f64::INFINITY
                        } else if rng.gen_bool(0.3) {
                            rng.gen_range(0..4) as f64
                        } else {
                            rng.gen_range(-100.0..100.0)
                        }
                    })
                    .collect();
                for alpha in 1..=100u32 {
                    let got = percentile_nearest_rank(&values, alpha as f64).unwrap();
                    let mut sorted = values.clone();
                    sorted.sort_by(f64::total_cmp);
                    let k = (alpha as usize * n).div_ceil(100);
                    let expected = sorted[k - 1];
                    assert_eq!(got, expected, "n={n} alpha={alpha} values={values:?}");
                }
                values.shuffle(&mut rng);
            }
        }
    }

    #[test]
    fn lambda_ratios_plain_division() {
        let s = set_from_errors(&[1.0, 2.0], &[1.0, 4.0]);
        assert_eq!(s.lambda_ratios(), vec![1.0, 0.5]);
    }

    #[test]
    fn lambda_ratio_zero_over_zero_is_zero() {
        let s = set(&[1.0], &[0.0], &[1.0]);
        assert_eq!(s.lambda_ratios(), vec![0.0]);
    }

    #[test]
    fn lambda_ratio_positive_over_zero_is_infinite() {
        let s = set(&[3.0], &[0.0], &[1.0]);
        assert_eq!(s.lambda_ratios(), vec![f64::INFINITY]);
    }

    #[test]
    fn merci_oracle_reduces_to_mae() {
        let errors = [0.5, 1.5, 2.0, 4.0];
        let s = set_from_errors(&errors, &errors);
        for alpha in [50.0, 85.0, 100.0] {
            let cfg = MetricConfig::new(alpha).unwrap();
            let (lambda, score) = s.merci(&cfg);
            assert_eq!(lambda, 1.0, "alpha={alpha}");
            assert_eq!(score, s.mae(), "alpha={alpha}");
        }
    }

    #[test]
    fn merci_hand_case() {
        let s = set_from_errors(&[1.0, 2.0, 3.0, 4.0], &[2.0, 1.0, 4.0, 8.0]);
        let cfg = MetricConfig::new(100.0).unwrap();
        let (lambda, score) = s.merci(&cfg);
        assert_eq!(lambda, 2.0);
        assert_eq!(score, 7.5);
    }

    #[test]
    fn merci_constant_sigma_is_max_error() {
        let s = set_from_errors(&[1.0, 3.0, 2.0], &[4.0, 4.0, 4.0]);
        let cfg = MetricConfig::new(100.0).unwrap();
        let (_, score) = s.merci(&cfg);
        assert!((score - 3.0).abs() < 1e-12);
    }

    #[test]
    fn n_merci_oracle_is_zero() {
        let errors = [0.5, 1.5, 2.0, 4.0, 0.25];
        let s = set_from_errors(&errors, &errors);
        for alpha in [50.0, 85.0, 95.0, 100.0] {
            let cfg = MetricConfig::new(alpha).unwrap().with_trim_mae(false);
            let report = s.n_merci(&cfg);
            assert!(!report.degenerate);
            assert_eq!(report.n_merci.unwrap(), 0.0, "alpha={alpha}");
        }
    }

    #[test]
    fn n_merci_constant_sigma_is_one() {
        let s = set_from_errors(&[1.0, 3.0, 2.0, 0.5], &[7.0; 4]);
        for alpha in [50.0, 85.0, 95.0, 100.0] {
            for trim in [false, true] {
                let cfg = MetricConfig::new(alpha).unwrap().with_trim_mae(trim);
                let report = s.n_merci(&cfg);
                assert!(!report.degenerate);
                let n_merci = report.n_merci.unwrap();
                assert!(
                    (n_merci - 1.0).abs() < 1e-12,
                    "alpha={alpha} trim={trim} n_merci={n_merci}"
                );
            }
        }
    }

    #[test]
    fn n_merci_hand_case() {
        let s = set_from_errors(&[1.0, 2.0, 3.0, 4.0], &[2.0, 1.0, 4.0, 8.0]);
        let cfg = MetricConfig::new(100.0).unwrap().with_trim_mae(false);
        let report = s.n_merci(&cfg);
        assert_eq!(report.merci, 7.5);
        assert_eq!(report.max_alpha_error, 4.0);
        assert_eq!(report.mae, 2.5);
        let n_merci = report.n_merci.unwrap();
        assert!((n_merci - 10.0 / 3.0).abs() < 1e-12, "got {n_merci}");
    }

    #[test]
    fn n_merci_constant_errors_degenerate() {
        let s = set_from_errors(&[2.0, 2.0, 2.0], &[1.0, 3.0, 5.0]);
        let cfg = MetricConfig::new(100.0).unwrap();
        let report = s.n_merci(&cfg);
        assert!(report.degenerate);
        assert!(report.n_merci.is_none());
    }

    #[test]
    fn n_merci_infinite_lambda_degenerate() {
        // Every sample has sigma = 0 with a nonzero error.
        let s = set(&[1.0, 2.0], &[0.0, 0.0], &[0.0, 0.0]);
        let cfg = MetricConfig::new(100.0).unwrap();
        let report = s.n_merci(&cfg);
        assert!(report.degenerate);
        assert!(report.lambda_alpha.is_infinite());
    }

    #[test]
    fn n_merci_trimmed_mae_counts_inliers() {
        let s = set_from_errors(&[1.0, 2.0, 3.0, 100.0], &[1.0, 1.0, 1.0, 1.0]);
        let cfg = MetricConfig::new(75.0).unwrap();
        assert!(cfg.trim_mae);
        let report = s.n_merci(&cfg);
        // max^75 = 3.0; inliers are [1, 2, 3].
        assert_eq!(report.max_alpha_error, 3.0);
        assert_eq!(report.n_used, 3);
        assert_eq!(report.mae, 2.0);
    }

    #[test]
    fn scale_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..20 {
            let s = random_set(&mut rng, 60);
            for trim in [false, true] {
                let cfg = MetricConfig::new(85.0).unwrap().with_trim_mae(trim);
                let base = s.n_merci(&cfg).n_merci.unwrap();
                for c in [1e-6, 0.5, 3.0, 1e6] {
                    let scaled = EvalSet::new(
                        s.samples()
                            .iter()
                            .map(|x| Sample {
                                sigma: x.sigma * c,
                                ..*x
                            })
                            .collect(),
                    )
                    .unwrap();
                    let got = scaled.n_merci(&cfg).n_merci.unwrap();
                    assert!(
                        (got - base).abs() < 1e-12,
                        "c={c} trim={trim} base={base} got={got}"
                    );
                }
            }
        }
    }

    #[test]
    fn coverage_at_alpha_100() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let s = random_set(&mut rng, 200);
        let cfg = MetricConfig::new(100.0).unwrap();
        let (lambda, _) = s.merci(&cfg);
        for sample in s.samples() {
            assert!(lambda * sample.sigma >= sample.abs_error() - 1e-12);
        }
    }

    #[test]
    fn coverage_fraction_at_general_alpha() {
        let mut rng = ChaCha8Rng::seed_from_u64(6);
        for _ in 0..10 {
            let s = random_set(&mut rng, 97);
            for alpha in [30.0, 50.0, 85.0, 95.0] {
                let cfg = MetricConfig::new(alpha).unwrap();
                let (lambda, _) = s.merci(&cfg);
                // Exact in the ratio domain: at least ceil(alpha*N/100)
                // ratios sit at or below the extracted percentile.
                let k = (alpha as usize * s.len()).div_ceil(100);
                let at_or_below = s.lambda_ratios().iter().filter(|&&r| r <= lambda).count();
                assert!(at_or_below >= k, "alpha={alpha} {at_or_below} < {k}");
                // In the product domain, re-multiplying eps/sigma by sigma
                // can lose an ulp, hence the relative slack.
                let covered = s
                    .samples()
                    .iter()
                    .filter(|x| lambda * x.sigma >= x.abs_error() * (1.0 - 1e-12))
                    .count();
                assert!(
                    covered as f64 / s.len() as f64 >= alpha / 100.0,
                    "alpha={alpha} covered={covered}/{}",
                    s.len()
                );
            }
        }
    }

    #[test]
    fn merci_dominates_mae_at_alpha_100() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..10 {
            let s = random_set(&mut rng, 64);
            let cfg = MetricConfig::new(100.0).unwrap();
            let (_, score) = s.merci(&cfg);
            assert!(score >= s.mae() - 1e-12);
        }
    }

    #[test]
    fn merci_product_equals_literal_sum() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let s = random_set(&mut rng, 128);
        let cfg = MetricConfig::new(85.0).unwrap();
        let (lambda, score) = s.merci(&cfg);
        let literal = s.samples().iter().map(|x| lambda * x.sigma).sum::<f64>() / s.len() as f64;
        assert!((score - literal).abs() <= 1e-12 * literal.abs().max(1.0));
    }

    #[test]
    fn permutation_invariance() {
        let mut rng = ChaCha8Rng::seed_from_u64(10);
        let s = random_set(&mut rng, 40);
        let cfg = MetricConfig::new(85.0).unwrap();
        let base = s.n_merci(&cfg);
        let mut shuffled = s.samples().to_vec();
        shuffled.shuffle(&mut rng);
        let report = EvalSet::new(shuffled).unwrap().n_merci(&cfg);
        assert_eq!(base.lambda_alpha, report.lambda_alpha);
        assert_eq!(base.max_alpha_error, report.max_alpha_error);
        assert_eq!(base.degenerate, report.degenerate);
        assert!((base.mae - report.mae).abs() < 1e-12);
        assert!((base.merci - report.merci).abs() < 1e-12);
        assert!((base.n_merci.unwrap() - report.n_merci.unwrap()).abs() < 1e-12);
    }

    #[test]
    fn report_formula_holds() {
        let mut rng = ChaCha8Rng::seed_from_u64(12);
        for trim in [false, true] {
            let s = random_set(&mut rng, 75);
            let cfg = MetricConfig::new(90.0).unwrap().with_trim_mae(trim);
            let r = s.n_merci(&cfg);
            assert!(!r.degenerate);
            let expected = (r.merci - r.mae) / (r.max_alpha_error - r.mae);
            assert_eq!(r.n_merci.unwrap(), expected);
        }
    }

    #[test]
    fn binned_single_bin_reduces_to_whole_set() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let samples: Vec<Sample> = (0..30)
            .map(|_| Sample {
                y_hat: rng.gen_range(0.0..0.1),
                sigma: rng.gen_range(0.01..1.0),
                y_true: rng.gen_range(0.0..0.1),
            })
            .collect();
        let s = EvalSet::new(samples).unwrap();
        let cfg = MetricConfig::new(95.0).unwrap();
        let binned = s.binned(&cfg, 0.1).unwrap();
        assert_eq!(binned.bins.len(), 1);
        assert_eq!(binned.bins[0].report, Some(s.n_merci(&cfg)));
    }

    #[test]
    fn binned_singleton_bins_skipped() {
        let s = set(&[0.1, 0.2], &[1.0, 1.0], &[0.05, 0.15]);
        let cfg = MetricConfig::new(95.0).unwrap();
        let binned = s.binned(&cfg, 0.1).unwrap();
        assert_eq!(binned.bins.len(), 2);
        assert!(binned.bins.iter().all(BinSummary::skipped));
        assert_eq!(binned.mean_n_merci, None);
    }

    #[test]
    fn binned_matches_filter_then_score() {
        let mut rng = ChaCha8Rng::seed_from_u64(14);
        let samples: Vec<Sample> = (0..1000)
            .map(|_| Sample {
                y_hat: rng.gen_range(-3.0..3.0),
                sigma: rng.gen_range(0.01..2.0),
                y_true: rng.gen_range(-3.0..3.0),
            })
            .collect();
        let s = EvalSet::new(samples.clone()).unwrap();
        let cfg = MetricConfig::new(95.0).unwrap();
        let w = 0.5;
        let binned = s.binned(&cfg, w).unwrap();
        for bin in &binned.bins {
            let subset: Vec<Sample> = samples
                .iter()
                .filter(|x| x.y_true >= bin.low && x.y_true < bin.high)
                .copied()
                .collect();
            assert_eq!(subset.len(), bin.n);
            if let Some(report) = &bin.report {
                let expected = EvalSet::new(subset).unwrap().n_merci(&cfg);
                assert_eq!(*report, expected, "bin [{}, {})", bin.low, bin.high);
            } else {
                assert!(subset.len() < 2);
            }
        }
    }

    #[test]
    fn binned_handles_negative_truths() {
        let s = set(
            &[-1.2, -1.1, 0.4, 0.45],
            &[0.5, 0.5, 0.5, 0.5],
            &[-1.25, -1.05, 0.42, 0.48],
        );
        let cfg = MetricConfig::new(100.0).unwrap();
        let binned = s.binned(&cfg, 0.5).unwrap();
        assert_eq!(binned.bins.len(), 2);
        assert_eq!(binned.bins[0].low, -1.5);
        assert_eq!(binned.bins[0].high, -1.0);
        assert_eq!(binned.bins[1].low, 0.0);
    }

    #[test]
    fn config_rejects_bad_alpha() {
        assert!(MetricConfig::new(0.0).is_err());
        assert!(MetricConfig::new(-5.0).is_err());
        assert!(MetricConfig::new(100.1).is_err());
        assert!(MetricConfig::new(f64::NAN).is_err());
    }

    mod properties {
        use super::*;
        use proptest::prelude::*;

        proptest! {
            #![proptest_config(ProptestConfig::with_cases(64))]

            #[test]
            fn oracle_is_zero_for_any_positive_errors(
                errors in proptest::collection::vec(0.001f64..50.0, 2..40),
                alpha in 1u32..=100,
            ) {
                let s = set_from_errors(&errors, &errors);
                let cfg = MetricConfig::new(alpha as f64).unwrap().with_trim_mae(false);
                let report = s.n_merci(&cfg);
                if !report.degenerate {
                    prop_assert_eq!(report.n_merci.unwrap(), 0.0);
                }
            }

            #[test]
            fn constant_sigma_is_one(
                errors in proptest::collection::vec(0.0f64..50.0, 3..40),
                c in 0.001f64..1000.0,
                alpha in 1u32..=100,
            ) {
                let sigmas = vec![c; errors.len()];
                let s = set_from_errors(&errors, &sigmas);
                let cfg = MetricConfig::new(alpha as f64).unwrap();
                let report = s.n_merci(&cfg);
                if !report.degenerate {
                    let n_merci = report.n_merci.unwrap();
                    prop_assert!((n_merci - 1.0).abs() < 1e-9, "n_merci={}", n_merci);
                }
            }

            #[test]
            fn percentile_is_an_input_value(
                values in proptest::collection::vec(-1e6f64..1e6, 1..64),
                alpha in 1u32..=100,
            ) {
                let p = percentile_nearest_rank(&values, alpha as f64).unwrap();
                prop_assert!(values.contains(&p));
            }
        }
    }
}
