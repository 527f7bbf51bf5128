//! One-dimensional cubic-regression benchmark for ranking uncertainty
//! estimators.
//!
//! Training sets are drawn as noisy samples of x^3 on a short interval, with
//! a biased "outlier" band to stress robustness. Each estimator is trained
//! and evaluated over several independent runs; its predictions and
//! uncertainties are averaged across runs per test point and scored at a
//! sweep of percentiles. Scoring uses the plain-MAE variant of the score
//! (no trimming), so the injected oracle and constant baselines land exactly
//! on 0 and 1.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ensemble::{self, MethodKind, Predictor, TrainedNet, UncertainPrediction};
use crate::error::{Error, Result};
use crate::metric::{EvalSet, MetricConfig, Sample};
use crate::nn::{Dataset, MlpSpec, Normalizer, TrainConfig};

/// Full benchmark specification. [`ToyConfig::default`] reproduces the
/// standard setup: 20 noisy cubic samples on [-4, 4] with 3 biased points in
/// [-2.3, -1.3], 20 runs per method, and a noise-free 200-point test grid on
/// [-6, 6].
#[derive(Debug, Clone, PartialEq)]
pub struct ToyConfig {
    pub n_train: usize,
    pub x_low: f64,
    pub x_high: f64,
    /// Standard deviation of the additive Gaussian target noise.
    pub noise_std: f64,
    pub outlier_low: f64,
    pub outlier_high: f64,
    /// Bias added to targets inside the outlier band.
    pub outlier_bias: f64,
    /// `Some(k)`: place exactly `k` training points inside the outlier band
    /// (the rest outside). `None`: plain uniform sampling, outliers by chance.
    pub pinned_outliers: Option<usize>,
    pub n_runs: usize,
    pub test_points: usize,
    pub test_low: f64,
    pub test_high: f64,
    pub master_seed: u64,
    /// Hidden layer sizes of the regression network.
    pub hidden: Vec<usize>,
    pub dropout_p: f64,
    pub train: TrainConfig,
    /// Stochastic passes for Monte Carlo dropout.
    pub mcd_samples: usize,
    /// Member count for multi inits and bagging.
    pub members: usize,
    /// Snapshot window for multi epochs.
    pub snapshot_window: usize,
    pub mn_architectures: Vec<Vec<usize>>,
    pub le_hidden: Vec<usize>,
    /// Percentiles scored into each run result.
    pub alphas: Vec<f64>,
}

impl Default for ToyConfig {
    fn default() -> Self {
        ToyConfig {
            n_train: 20,
            x_low: -4.0,
            x_high: 4.0,
            noise_std: 3.0,
            outlier_low: -2.3,
            outlier_high: -1.3,
            outlier_bias: 20.0,
            pinned_outliers: Some(3),
            n_runs: 20,
            test_points: 200,
            test_low: -6.0,
            test_high: 6.0,
            master_seed: 0,
            hidden: vec![100],
            dropout_p: 0.2,
            train: TrainConfig {
                epochs: 1000,
                learning_rate: 0.07,
            },
            mcd_samples: 50,
            members: 20,
            snapshot_window: 20,
            mn_architectures: vec![vec![50], vec![100], vec![200], vec![100, 100]],
            le_hidden: vec![100],
            alphas: (1..=20).map(|i| 5.0 * i as f64).collect(),
        }
    }
}

impl ToyConfig {
    fn validate(&self) -> Result<()> {
        if self.n_train == 0 {
            return Err(Error::invalid("n_train must be >= 1"));
        }
        if !(self.noise_std > 0.0) {
            return Err(Error::invalid("noise_std must be > 0"));
        }
        if !(self.x_low < self.x_high) {
            return Err(Error::invalid("x_low must be below x_high"));
        }
        if self.outlier_low < self.x_low
            || self.outlier_high > self.x_high
            || self.outlier_low >= self.outlier_high
        {
            return Err(Error::invalid(
                "outlier interval must sit inside the training range",
            ));
        }
        if self.test_points < 2 || !(self.test_low < self.test_high) {
            return Err(Error::invalid(
                "test grid needs >= 2 points and a valid range",
            ));
        }
        if let Some(k) = self.pinned_outliers {
            if k > self.n_train {
                return Err(Error::invalid("cannot pin more outliers than points"));
            }
        }
        if self.n_runs == 0 {
            return Err(Error::invalid("n_runs must be >= 1"));
        }
        Ok(())
    }

    fn mlp_spec(&self, seed: u64) -> MlpSpec {
        MlpSpec::new(1, self.hidden.clone(), self.dropout_p, seed)
    }
}

/// A benchmark entry: either a real estimator or one of the synthetic
/// baselines that validate the scoring pipeline end to end.
#[derive(Debug, Clone, PartialEq)]
pub enum ToyMethod {
    Estimator(MethodKind),
    /// Synthetic predictor whose sigma equals its own absolute error;
    /// scores exactly 0 at every percentile.
    InjectedOracle,
    /// Synthetic predictor with sigma fixed at 1; scores exactly 1.
    InjectedConstant,
}

impl ToyMethod {
    pub fn name(&self) -> &'static str {
        match self {
            ToyMethod::Estimator(kind) => kind.name(),
            ToyMethod::InjectedOracle => "oracle",
            ToyMethod::InjectedConstant => "constant",
        }
    }

    /// Resolves a CLI name using the parameter defaults in `cfg`.
    pub fn parse(name: &str, cfg: &ToyConfig) -> Result<ToyMethod> {
        let method = match name {
            "mcd" => ToyMethod::Estimator(MethodKind::MonteCarloDropout { t: cfg.mcd_samples }),
            "mi" => ToyMethod::Estimator(MethodKind::MultiInits { m: cfg.members }),
            "bagging" => ToyMethod::Estimator(MethodKind::Bagging { m: cfg.members }),
            "me" => ToyMethod::Estimator(MethodKind::MultiEpochs {
                k: cfg.snapshot_window,
            }),
            "mn" => ToyMethod::Estimator(MethodKind::MultiNetworks {
                architectures: cfg.mn_architectures.clone(),
            }),
            "le" => ToyMethod::Estimator(MethodKind::LearnedError {
                error_hidden: cfg.le_hidden.clone(),
            }),
            "oracle" => ToyMethod::InjectedOracle,
            "constant" => ToyMethod::InjectedConstant,
            _ => {
                return Err(Error::UnknownMethod {
                    name: name.to_string(),
                })
            }
        };
        Ok(method)
    }
}

/// Normalized score at one percentile.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlphaScore {
    pub alpha: f64,
    pub n_merci: Option<f64>,
    pub degenerate: bool,
}

/// Outcome of one method over all runs.
#[derive(Debug, Clone)]
pub struct RunResult {
    pub method: ToyMethod,
    /// One triplet per test point: across-run mean prediction, across-run
    /// mean uncertainty, noise-free ground truth.
    pub samples: Vec<Sample>,
    /// Scores at the configured percentiles, recomputable from `samples`.
    pub n_merci_by_alpha: Vec<AlphaScore>,
    /// Normalization statistics of each run (empty for injected baselines).
    pub normalizations: Vec<Normalizer>,
}

impl RunResult {
    /// The evaluation set backing the scores.
    pub fn eval_set(&self) -> EvalSet {
        EvalSet::new(self.samples.clone()).expect("test grid is non-empty")
    }

    /// Mean absolute error of the averaged predictions.
    pub fn mae(&self) -> f64 {
        self.eval_set().mae()
    }
}

const SPLITMIX_GAMMA: u64 = 0x9E37_79B9_7F4A_7C15;

fn splitmix64(mut z: u64) -> u64 {
    z = z.wrapping_add(SPLITMIX_GAMMA);
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// Derives an independent seed for a named stream; injective in `stream`
/// for a fixed base.
pub fn derive_seed(base: u64, stream: u64) -> u64 {
    splitmix64(base ^ splitmix64(stream))
}

/// Seed of one (method, run) cell under a master seed.
pub fn run_seed(master_seed: u64, method: &MethodKind, run: usize) -> u64 {
    derive_seed(master_seed, (method.stream_id() << 32) | run as u64)
}

/// The noise-free test grid: evenly spaced inputs with targets x^3.
pub fn test_grid(cfg: &ToyConfig) -> Vec<(f64, f64)> {
    let n = cfg.test_points;
    (0..n)
        .map(|j| {
            let t = j as f64 / (n - 1) as f64;
            let x = cfg.test_low + (cfg.test_high - cfg.test_low) * t;
            (x, x * x * x)
        })
        .collect()
}

/// Draws one training set: inputs uniform on the training range, targets
/// x^3 plus Gaussian noise, plus the outlier bias inside the band. Returns
/// the training set and the (run-independent) test grid.
pub fn generate_toy(cfg: &ToyConfig, run_seed: u64) -> Result<(Dataset, Vec<(f64, f64)>)> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(run_seed);
    let in_band = |x: f64| x >= cfg.outlier_low && x <= cfg.outlier_high;

    let mut xs = Vec::with_capacity(cfg.n_train);
    match cfg.pinned_outliers {
        Some(k) => {
            for _ in 0..k {
                xs.push(rng.gen_range(cfg.outlier_low..cfg.outlier_high));
            }
            while xs.len() < cfg.n_train {
                let x = rng.gen_range(cfg.x_low..cfg.x_high);
                if !in_band(x) {
                    xs.push(x);
                }
            }
        }
        None => {
            for _ in 0..cfg.n_train {
                xs.push(rng.gen_range(cfg.x_low..cfg.x_high));
            }
        }
    }

    let normal = rand_distr::Normal::new(0.0, cfg.noise_std)
        .map_err(|e| Error::invalid(format!("bad noise_std: {e}")))?;
    let ys: Vec<f64> = xs
        .iter()
        .map(|&x| {
            let mut y = x * x * x + rng.sample(normal);
            if in_band(x) {
                y += cfg.outlier_bias;
            }
            y
        })
        .collect();

    Ok((Dataset::from_1d(&xs, &ys)?, test_grid(cfg)))
}

/// Trains one estimator on one fresh dataset and evaluates the test grid.
/// All randomness descends from `run_seed`.
pub fn single_run(
    cfg: &ToyConfig,
    method: &MethodKind,
    run_seed: u64,
) -> Result<(Vec<UncertainPrediction>, Normalizer)> {
    let (train_data, test) = generate_toy(cfg, run_seed)?;
    let predictor = build_predictor(cfg, method, &train_data, run_seed)?;
    let preds = test
        .iter()
        .map(|(x, _)| predictor.predict(&[*x]))
        .collect::<Result<Vec<_>>>()?;
    Ok((preds, predictor_normalizer(&predictor).clone()))
}

fn build_predictor(
    cfg: &ToyConfig,
    method: &MethodKind,
    data: &Dataset,
    run_seed: u64,
) -> Result<Predictor> {
    let member_seeds = |m: usize| -> Vec<u64> {
        (0..m)
            .map(|i| derive_seed(run_seed, 100 + i as u64))
            .collect()
    };
    match method {
        MethodKind::MonteCarloDropout { t } => {
            if cfg.dropout_p == 0.0 {
                return Err(Error::invalid("MCD requires dropout: set dropout_p > 0"));
            }
            let spec = cfg.mlp_spec(derive_seed(run_seed, 1));
            let net = TrainedNet::fit(&spec, data, &cfg.train)?;
            Ok(Predictor::McDropout {
                net,
                t: *t,
                seed: derive_seed(run_seed, 2),
            })
        }
        MethodKind::MultiInits { m } => {
            let spec = cfg.mlp_spec(0);
            ensemble::multi_inits(&spec, data, &cfg.train, &member_seeds(*m))
        }
        MethodKind::Bagging { m } => {
            let spec = cfg.mlp_spec(0);
            ensemble::bagging(&spec, data, &cfg.train, &member_seeds(*m))
        }
        MethodKind::MultiEpochs { k } => {
            let spec = cfg.mlp_spec(derive_seed(run_seed, 1));
            ensemble::multi_epochs(&spec, data, &cfg.train, *k)
        }
        MethodKind::MultiNetworks { architectures } => {
            let specs: Vec<MlpSpec> = architectures
                .iter()
                .enumerate()
                .map(|(i, hidden)| {
                    MlpSpec::new(
                        1,
                        hidden.clone(),
                        cfg.dropout_p,
                        derive_seed(run_seed, 100 + i as u64),
                    )
                })
                .collect();
            ensemble::multi_networks(&specs, data, &cfg.train)
        }
        MethodKind::LearnedError { error_hidden } => {
            let base_spec = cfg.mlp_spec(derive_seed(run_seed, 1));
            let base = TrainedNet::fit(&base_spec, data, &cfg.train)?;
            let error_spec = MlpSpec::new(
                1,
                error_hidden.clone(),
                cfg.dropout_p,
                derive_seed(run_seed, 2),
            );
            ensemble::learned_error(base, &error_spec, data, &cfg.train)
        }
    }
}

fn predictor_normalizer(predictor: &Predictor) -> &Normalizer {
    match predictor {
        Predictor::Members(members) => &members[0].norm,
        Predictor::McDropout { net, .. } => &net.norm,
        Predictor::LearnedError { base, .. } => &base.norm,
    }
}

/// Runs every method for `cfg.n_runs` repetitions, averages predictions and
/// uncertainties across runs per test point, and scores the averages at the
/// configured percentiles. Deterministic given `cfg.master_seed`; runs
/// execute in parallel and are merged by run index.
pub fn run_methods(cfg: &ToyConfig, methods: &[ToyMethod]) -> Result<Vec<RunResult>> {
    cfg.validate()?;
    if methods.is_empty() {
        return Err(Error::invalid("at least one method is required"));
    }
    methods.iter().map(|m| run_method(cfg, m)).collect()
}

fn run_method(cfg: &ToyConfig, method: &ToyMethod) -> Result<RunResult> {
    let kind = match method {
        ToyMethod::InjectedOracle | ToyMethod::InjectedConstant => {
            return Ok(injected_result(cfg, method))
        }
        ToyMethod::Estimator(kind) => kind,
    };

    let runs: Vec<(Vec<UncertainPrediction>, Normalizer)> = (0..cfg.n_runs)
        .into_par_iter()
        .map(|r| {
            single_run(cfg, kind, run_seed(cfg.master_seed, kind, r)).map_err(|e| Error::Run {
                method: kind.name().to_string(),
                run: r,
                source: Box::new(e),
            })
        })
        .collect::<Result<_>>()?;

    let test = test_grid(cfg);
    let scale = 1.0 / cfg.n_runs as f64;
    let samples: Vec<Sample> = test
        .iter()
        .enumerate()
        .map(|(i, &(_, y_true))| {
            let mut y_hat = 0.0;
            let mut sigma = 0.0;
            for (preds, _) in &runs {
                y_hat += preds[i].y_hat;
                sigma += preds[i].sigma;
            }
            Sample {
                y_hat: y_hat * scale,
                sigma: sigma * scale,
                y_true,
            }
        })
        .collect();

    let normalizations = runs.into_iter().map(|(_, norm)| norm).collect();
    let n_merci_by_alpha = score_alphas(&samples, &cfg.alphas)?;
    Ok(RunResult {
        method: method.clone(),
        samples,
        n_merci_by_alpha,
        normalizations,
    })
}

/// Builds the synthetic baseline samples directly on the test grid. The
/// oracle stores a sigma bit-identical to its own absolute error; the
/// constant stores sigma = 1.
fn injected_result(cfg: &ToyConfig, method: &ToyMethod) -> RunResult {
    let samples: Vec<Sample> = test_grid(cfg)
        .iter()
        .map(|&(x, y_true)| {
            let delta = 0.5 + 0.1 * x * x;
            let y_hat = y_true + delta;
            let sigma = match method {
                ToyMethod::InjectedOracle => (y_hat - y_true).abs(),
                _ => 1.0,
            };
            Sample {
                y_hat,
                sigma,
                y_true,
            }
        })
        .collect();
    let n_merci_by_alpha = score_alphas(&samples, &cfg.alphas).expect("injected samples are valid");
    RunResult {
        method: method.clone(),
        samples,
        n_merci_by_alpha,
        normalizations: Vec::new(),
    }
}

fn score_alphas(samples: &[Sample], alphas: &[f64]) -> Result<Vec<AlphaScore>> {
    let set = EvalSet::new(samples.to_vec())?;
    alphas
        .iter()
        .map(|&alpha| {
            let cfg = MetricConfig::new(alpha)?.with_trim_mae(false);
            let report = set.n_merci(&cfg);
            Ok(AlphaScore {
                alpha,
                n_merci: report.n_merci,
                degenerate: report.degenerate,
            })
        })
        .collect()
}

/// Score table: one row per method, one column per percentile. Cells are
/// recomputed from the stored samples; degenerate cells stay flagged rather
/// than being dropped.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepTable {
    pub alphas: Vec<f64>,
    pub rows: Vec<SweepRow>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepRow {
    pub method: String,
    pub scores: Vec<AlphaScore>,
}

/// Scores every result at every percentile in `alphas`.
pub fn alpha_sweep(results: &[RunResult], alphas: &[f64]) -> Result<SweepTable> {
    let rows = results
        .iter()
        .map(|r| {
            Ok(SweepRow {
                method: r.method.name().to_string(),
                scores: score_alphas(&r.samples, alphas)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SweepTable {
        alphas: alphas.to_vec(),
        rows,
    })
}
