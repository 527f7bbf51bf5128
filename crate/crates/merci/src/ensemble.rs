//! Uncertainty estimators for regression networks.
//!
//! Every estimator produces, per input, a prediction paired with an
//! uncertainty: the members of an ensemble are averaged and their population
//! standard deviation becomes the uncertainty, except for the learned-error
//! estimator whose uncertainty is a second network trained to regress the
//! base network's absolute errors.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::nn::{Dataset, Mlp, MlpSpec, Normalizer, TrainConfig};

/// The estimator families and their parameters.
#[derive(Debug, Clone, PartialEq)]
pub enum MethodKind {
    /// Test-time dropout sampling with `t` stochastic passes.
    MonteCarloDropout { t: usize },
    /// Same architecture trained from `m` different seeds.
    MultiInits { m: usize },
    /// `m` members, each trained on a bootstrap resample.
    Bagging { m: usize },
    /// Parameter snapshots from the final `k` training epochs.
    MultiEpochs { k: usize },
    /// One member per hidden-layer architecture.
    MultiNetworks { architectures: Vec<Vec<usize>> },
    /// A second network regressing the base network's absolute error.
    LearnedError { error_hidden: Vec<usize> },
}

impl MethodKind {
    /// Short name used in CLI flags, CSV columns, and chart legends.
    pub fn name(&self) -> &'static str {
        match self {
            MethodKind::MonteCarloDropout { .. } => "mcd",
            MethodKind::MultiInits { .. } => "mi",
            MethodKind::Bagging { .. } => "bagging",
            MethodKind::MultiEpochs { .. } => "me",
            MethodKind::MultiNetworks { .. } => "mn",
            MethodKind::LearnedError { .. } => "le",
        }
    }

    /// Stable per-method constant folded into derived seeds.
    pub fn stream_id(&self) -> u64 {
        match self {
            MethodKind::MonteCarloDropout { .. } => 1,
            MethodKind::MultiInits { .. } => 2,
            MethodKind::Bagging { .. } => 3,
            MethodKind::MultiEpochs { .. } => 4,
            MethodKind::MultiNetworks { .. } => 5,
            MethodKind::LearnedError { .. } => 6,
        }
    }
}

/// A prediction paired with its estimated uncertainty.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UncertainPrediction {
    pub y_hat: f64,
    pub sigma: f64,
}

/// A trained network together with the normalization it was trained under;
/// predictions are in original units.
#[derive(Debug, Clone)]
pub struct TrainedNet {
    pub mlp: Mlp,
    pub norm: Normalizer,
}

impl TrainedNet {
    /// Fits a normalizer on `data`, trains a fresh network on the
    /// standardized set, and wraps both.
    pub fn fit(spec: &MlpSpec, data: &Dataset, cfg: &TrainConfig) -> Result<TrainedNet> {
        let norm = Normalizer::fit(data);
        let normalized = norm.normalize(data);
        let mlp = Mlp::init(spec)?.train(&normalized, cfg)?;
        Ok(TrainedNet { mlp, norm })
    }

    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        let out = self.mlp.predict(&self.norm.normalize_x(x))?;
        Ok(self.norm.denormalize_y(out))
    }

    pub fn predict_stochastic(&self, x: &[f64], rng: &mut ChaCha8Rng) -> Result<f64> {
        let out = self
            .mlp
            .predict_stochastic(&self.norm.normalize_x(x), rng)?;
        Ok(self.norm.denormalize_y(out))
    }
}

/// Mean and population (divide-by-N) standard deviation.
///
/// The population convention is fixed for reproducibility of the raw sigma
/// outputs; the normalized score is scale invariant, so the choice cannot
/// move any score.
pub fn population_moments(values: &[f64]) -> (f64, f64) {
    let n = values.len() as f64;
    let mean = values.iter().sum::<f64>() / n;
    let var = values.iter().map(|v| (v - mean) * (v - mean)).sum::<f64>() / n;
    (mean, var.sqrt())
}

/// Monte Carlo dropout at one input: `t` stochastic passes of a network
/// trained with dropout, reduced to mean and population standard deviation.
/// Deterministic given `seed`; every input evaluated with the same seed sees
/// the same `t` sampled mask sequences.
pub fn mc_dropout(model: &Mlp, x: &[f64], t: usize, seed: u64) -> Result<UncertainPrediction> {
    if model.dropout_p() == 0.0 {
        return Err(Error::invalid(
            "MCD requires dropout: dropout_p must be > 0",
        ));
    }
    if t < 2 {
        return Err(Error::invalid("MCD requires t >= 2 passes"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let outs: Vec<f64> = (0..t)
        .map(|_| model.predict_stochastic(x, &mut rng))
        .collect::<Result<_>>()?;
    let (y_hat, sigma) = population_moments(&outs);
    Ok(UncertainPrediction { y_hat, sigma })
}

/// A built uncertainty estimator, ready to answer point queries.
#[derive(Debug, Clone)]
pub enum Predictor {
    /// Aggregates trained members by mean / population std.
    Members(Vec<TrainedNet>),
    /// Stochastic passes of one dropout-trained network.
    McDropout {
        net: TrainedNet,
        t: usize,
        seed: u64,
    },
    /// Base network plus an error-regressing network.
    LearnedError {
        base: TrainedNet,
        error_net: TrainedNet,
    },
}

impl Predictor {
    pub fn predict(&self, x: &[f64]) -> Result<UncertainPrediction> {
        match self {
            Predictor::Members(members) => {
                let outs: Vec<f64> = members
                    .iter()
                    .map(|m| m.predict(x))
                    .collect::<Result<_>>()?;
                let (y_hat, sigma) = population_moments(&outs);
                Ok(UncertainPrediction { y_hat, sigma })
            }
            Predictor::McDropout { net, t, seed } => {
                let mut rng = ChaCha8Rng::seed_from_u64(*seed);
                let outs: Vec<f64> = (0..*t)
                    .map(|_| net.predict_stochastic(x, &mut rng))
                    .collect::<Result<_>>()?;
                let (y_hat, sigma) = population_moments(&outs);
                Ok(UncertainPrediction { y_hat, sigma })
            }
            Predictor::LearnedError { base, error_net } => {
                let y_hat = base.predict(x)?;
                let sigma = error_net.predict(x)?.max(0.0);
                Ok(UncertainPrediction { y_hat, sigma })
            }
        }
    }

    /// Number of members backing the estimator (passes for dropout).
    pub fn member_count(&self) -> usize {
        match self {
            Predictor::Members(members) => members.len(),
            Predictor::McDropout { t, .. } => *t,
            Predictor::LearnedError { .. } => 2,
        }
    }
}

fn train_member(
    method: &str,
    index: usize,
    spec: &MlpSpec,
    norm: &Normalizer,
    normalized: &Dataset,
    cfg: &TrainConfig,
) -> Result<TrainedNet> {
    let mlp = Mlp::init(spec)
        .and_then(|net| net.train(normalized, cfg))
        .map_err(|e| Error::Member {
            method: method.to_string(),
            index,
            source: Box::new(e),
        })?;
    Ok(TrainedNet {
        mlp,
        norm: norm.clone(),
    })
}

/// Trains the same architecture once per seed. Requires at least two
/// distinct seeds.
pub fn multi_inits(
    spec: &MlpSpec,
    data: &Dataset,
    cfg: &TrainConfig,
    seeds: &[u64],
) -> Result<Predictor> {
    if seeds.len() < 2 {
        return Err(Error::invalid("multi inits requires at least 2 seeds"));
    }
    let mut unique = seeds.to_vec();
    unique.sort_unstable();
    unique.dedup();
    if unique.len() != seeds.len() {
        return Err(Error::invalid("multi inits requires distinct seeds"));
    }
    let norm = Normalizer::fit(data);
    let normalized = norm.normalize(data);
    let members = seeds
        .iter()
        .enumerate()
        .map(|(i, &seed)| {
            let member_spec = MlpSpec {
                seed,
                ..spec.clone()
            };
            train_member("multi inits", i, &member_spec, &norm, &normalized, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Predictor::Members(members))
}

/// Trains one member per seed, each on a bootstrap resample of the training
/// set (same size, drawn with replacement from the seed).
pub fn bagging(
    spec: &MlpSpec,
    data: &Dataset,
    cfg: &TrainConfig,
    seeds: &[u64],
) -> Result<Predictor> {
    if seeds.len() < 2 {
        return Err(Error::invalid("bagging requires at least 2 seeds"));
    }
    let norm = Normalizer::fit(data);
    let normalized = norm.normalize(data);
    let members = seeds
        .iter()
        .enumerate()
        .map(|(i, &seed)| {
            let resampled = bootstrap_resample(&normalized, seed);
            let member_spec = MlpSpec {
                seed,
                ..spec.clone()
            };
            train_member("bagging", i, &member_spec, &norm, &resampled, cfg)
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(Predictor::Members(members))
}

/// Uniform with-replacement resample of the same size, seeded.
pub fn bootstrap_resample(data: &Dataset, seed: u64) -> Dataset {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = data.len();
    let mut inputs = Vec::with_capacity(n);
    let mut targets = Vec::with_capacity(n);
    for _ in 0..n {
        let i = rand::Rng::gen_range(&mut rng, 0..n);
        inputs.push(data.inputs()[i].clone());
        targets.push(data.targets()[i]);
    }
    Dataset::new(inputs, targets).expect("resample preserves shape")
}

/// Trains one network and keeps the parameter snapshots of the final `k`
/// epochs as the ensemble. The plateau is approximated by that fixed final
/// window; no learning-rate schedule is applied.
pub fn multi_epochs(
    spec: &MlpSpec,
    data: &Dataset,
    cfg: &TrainConfig,
    k: usize,
) -> Result<Predictor> {
    if k < 2 {
        return Err(Error::invalid("multi epochs requires k >= 2 snapshots"));
    }
    if cfg.epochs <= k {
        return Err(Error::invalid(format!(
            "multi epochs requires epochs > k, got epochs={} k={k}",
            cfg.epochs
        )));
    }
    let norm = Normalizer::fit(data);
    let normalized = norm.normalize(data);
    let first_kept = cfg.epochs - k;
    let mut snapshots = Vec::with_capacity(k);
    Mlp::init(spec)?
        .train_with_snapshots(&normalized, cfg, |epoch, net| {
            if epoch >= first_kept {
                snapshots.push(net.clone());
            }
        })
        .map_err(|e| Error::Member {
            method: "multi epochs".to_string(),
            index: 0,
            source: Box::new(e),
        })?;
    let members = snapshots
        .into_iter()
        .map(|mlp| TrainedNet {
            mlp,
            norm: norm.clone(),
        })
        .collect();
    Ok(Predictor::Members(members))
}

/// Trains one member per architecture spec.
pub fn multi_networks(specs: &[MlpSpec], data: &Dataset, cfg: &TrainConfig) -> Result<Predictor> {
    if specs.len() < 2 {
        return Err(Error::invalid("multi networks requires at least 2 specs"));
    }
    let norm = Normalizer::fit(data);
    let normalized = norm.normalize(data);
    let members = specs
        .iter()
        .enumerate()
        .map(|(i, spec)| train_member("multi networks", i, spec, &norm, &normalized, cfg))
        .collect::<Result<Vec<_>>>()?;
    Ok(Predictor::Members(members))
}

/// Trains a second network to regress the base network's absolute training
/// errors. The prediction is the base output; the uncertainty is the error
/// net's output clamped at zero.
///
/// The error net sees training-set errors only, so it tends to be
/// optimistic at the training inputs.
pub fn learned_error(
    base: TrainedNet,
    error_spec: &MlpSpec,
    data: &Dataset,
    cfg: &TrainConfig,
) -> Result<Predictor> {
    let error_targets = data
        .iter()
        .map(|(x, &y)| base.predict(x).map(|out| (out - y).abs()))
        .collect::<Result<Vec<f64>>>()?;
    let error_data = Dataset::new(data.inputs().to_vec(), error_targets)?;
    let error_net = TrainedNet::fit(error_spec, &error_data, cfg).map_err(|e| Error::Member {
        method: "learned error".to_string(),
        index: 1,
        source: Box::new(e),
    })?;
    Ok(Predictor::LearnedError { base, error_net })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    fn toy_data(n: usize, seed: u64) -> Dataset {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let xs: Vec<f64> = (0..n).map(|_| rng.gen_range(-2.0..2.0)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| x * x + 0.1 * x).collect();
        Dataset::from_1d(&xs, &ys).unwrap()
    }

    fn quick_cfg() -> TrainConfig {
        TrainConfig {
            epochs: 120,
            learning_rate: 0.05,
        }
    }

    #[test]
    fn mc_dropout_requires_dropout() {
        let net = Mlp::init(&MlpSpec::new(1, vec![8], 0.0, 1)).unwrap();
        assert!(mc_dropout(&net, &[0.5], 10, 0).is_err());
    }

    #[test]
    fn mc_dropout_requires_two_passes() {
        let net = Mlp::init(&MlpSpec::new(1, vec![8], 0.2, 1)).unwrap();
        assert!(mc_dropout(&net, &[0.5], 1, 0).is_err());
    }

    #[test]
    fn mc_dropout_sigma_zero_without_active_units() {
        // All weights zero: dropout has nothing to perturb.
        let mut net = Mlp::init(&MlpSpec::new(1, vec![8], 0.2, 1)).unwrap();
        for layer in net.layers_mut() {
            layer.weights_mut().iter_mut().for_each(|w| *w = 0.0);
            layer.biases_mut().iter_mut().for_each(|b| *b = 0.0);
        }
        let pred = mc_dropout(&net, &[0.5], 10, 0).unwrap();
        assert_eq!(pred.sigma, 0.0);
        assert_eq!(pred.y_hat, 0.0);
    }

    #[test]
    fn identical_passes_give_zero_sigma() {
        // Forcing a seed collision makes both passes identical.
        let net = Mlp::init(&MlpSpec::new(1, vec![8], 0.2, 3)).unwrap();
        let mut a = ChaCha8Rng::seed_from_u64(42);
        let mut b = ChaCha8Rng::seed_from_u64(42);
        let outs = [
            net.predict_stochastic(&[0.7], &mut a).unwrap(),
            net.predict_stochastic(&[0.7], &mut b).unwrap(),
        ];
        let (_, sigma) = population_moments(&outs);
        assert_eq!(sigma, 0.0);
    }

    #[test]
    fn mc_dropout_moments_match_logged_passes() {
        let data = toy_data(12, 5);
        let net = TrainedNet::fit(&MlpSpec::new(1, vec![16], 0.2, 5), &data, &quick_cfg()).unwrap();
        let pred = Predictor::McDropout {
            net: net.clone(),
            t: 50,
            seed: 77,
        }
        .predict(&[0.3])
        .unwrap();
        // Replay the same stream and recompute the moments independently.
        let mut rng = ChaCha8Rng::seed_from_u64(77);
        let outs: Vec<f64> = (0..50)
            .map(|_| net.predict_stochastic(&[0.3], &mut rng).unwrap())
            .collect();
        let mean = outs.iter().sum::<f64>() / 50.0;
        let var = outs.iter().map(|o| (o - mean) * (o - mean)).sum::<f64>() / 50.0;
        assert!((pred.y_hat - mean).abs() < 1e-12);
        assert!((pred.sigma - var.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn multi_inits_rejects_duplicate_seeds() {
        let data = toy_data(8, 1);
        let spec = MlpSpec::new(1, vec![4], 0.0, 0);
        let err = multi_inits(&spec, &data, &quick_cfg(), &[1, 1]).unwrap_err();
        assert!(err.to_string().contains("distinct"));
    }

    #[test]
    fn multi_inits_two_member_std() {
        let data = toy_data(10, 2);
        let spec = MlpSpec::new(1, vec![6], 0.0, 0);
        let predictor = multi_inits(&spec, &data, &quick_cfg(), &[10, 20]).unwrap();
        let members = match &predictor {
            Predictor::Members(m) => m,
            _ => unreachable!(),
        };
        let x = [0.4];
        let f1 = members[0].predict(&x).unwrap();
        let f2 = members[1].predict(&x).unwrap();
        let pred = predictor.predict(&x).unwrap();
        assert!((pred.y_hat - (f1 + f2) / 2.0).abs() < 1e-12);
        assert!((pred.sigma - (f1 - f2).abs() / 2.0).abs() < 1e-12);
    }

    #[test]
    fn ensemble_moments_match_logged_members() {
        let data = toy_data(10, 3);
        let spec = MlpSpec::new(1, vec![6], 0.0, 0);
        let predictor = multi_inits(&spec, &data, &quick_cfg(), &[1, 2, 3, 4, 5]).unwrap();
        let members = match &predictor {
            Predictor::Members(m) => m.clone(),
            _ => unreachable!(),
        };
        for x in [-1.5, 0.0, 0.9] {
            let outs: Vec<f64> = members.iter().map(|m| m.predict(&[x]).unwrap()).collect();
            let (mean, std) = population_moments(&outs);
            let pred = predictor.predict(&[x]).unwrap();
            assert!((pred.y_hat - mean).abs() < 1e-12);
            assert!((pred.sigma - std).abs() < 1e-12);
        }
    }

    #[test]
    fn bagging_resample_is_deterministic() {
        let data = toy_data(15, 4);
        let a = bootstrap_resample(&data, 9);
        let b = bootstrap_resample(&data, 9);
        assert_eq!(a, b);
        let c = bootstrap_resample(&data, 10);
        assert_ne!(a, c);
        assert_eq!(a.len(), data.len());
    }

    #[test]
    fn bagging_member_count_and_determinism() {
        let data = toy_data(12, 6);
        let spec = MlpSpec::new(1, vec![6], 0.0, 0);
        let p1 = bagging(&spec, &data, &quick_cfg(), &[1, 2, 3]).unwrap();
        assert_eq!(p1.member_count(), 3);
        let p2 = bagging(&spec, &data, &quick_cfg(), &[1, 2, 3]).unwrap();
        let (a, b) = (p1.predict(&[0.1]).unwrap(), p2.predict(&[0.1]).unwrap());
        assert_eq!(a.y_hat, b.y_hat);
        assert_eq!(a.sigma, b.sigma);
    }

    #[test]
    fn multi_epochs_rejects_short_training() {
        let data = toy_data(8, 7);
        let spec = MlpSpec::new(1, vec![4], 0.0, 0);
        let cfg = TrainConfig {
            epochs: 5,
            learning_rate: 0.05,
        };
        assert!(multi_epochs(&spec, &data, &cfg, 5).is_err());
        assert!(multi_epochs(&spec, &data, &cfg, 1).is_err());
    }

    #[test]
    fn multi_epochs_converged_net_has_zero_sigma() {
        // Zero output weights on all-zero targets: loss and gradients are
        // exactly zero, so every snapshot is identical.
        let data = Dataset::from_1d(&[0.5, 1.0, 1.5], &[0.0, 0.0, 0.0]).unwrap();
        let spec = MlpSpec::new(1, vec![4], 0.0, 2);
        let norm = Normalizer::fit(&data);
        let normalized = norm.normalize(&data);
        let mut net = Mlp::init(&spec).unwrap();
        net.layers_mut()[1]
            .weights_mut()
            .iter_mut()
            .for_each(|w| *w = 0.0);
        net.layers_mut()[1].biases_mut()[0] = 0.0;
        let cfg = TrainConfig {
            epochs: 30,
            learning_rate: 0.05,
        };
        let mut snapshots = Vec::new();
        net.train_with_snapshots(&normalized, &cfg, |epoch, n| {
            if epoch >= 10 {
                snapshots.push(n.clone());
            }
        })
        .unwrap();
        let members: Vec<TrainedNet> = snapshots
            .into_iter()
            .map(|mlp| TrainedNet {
                mlp,
                norm: norm.clone(),
            })
            .collect();
        let pred = Predictor::Members(members).predict(&[0.8]).unwrap();
        assert_eq!(pred.sigma, 0.0);
    }

    #[test]
    fn multi_epochs_snapshot_window() {
        let data = toy_data(10, 8);
        let spec = MlpSpec::new(1, vec![6], 0.0, 0);
        let cfg = TrainConfig {
            epochs: 40,
            learning_rate: 0.05,
        };
        let predictor = multi_epochs(&spec, &data, &cfg, 4).unwrap();
        assert_eq!(predictor.member_count(), 4);
    }

    #[test]
    fn multi_networks_identical_specs_give_zero_sigma() {
        let data = toy_data(10, 9);
        let spec = MlpSpec::new(1, vec![6], 0.0, 3);
        let predictor = multi_networks(&[spec.clone(), spec], &data, &quick_cfg()).unwrap();
        let pred = predictor.predict(&[0.2]).unwrap();
        assert_eq!(pred.sigma, 0.0);
    }

    #[test]
    fn multi_networks_requires_two_specs() {
        let data = toy_data(10, 10);
        let spec = MlpSpec::new(1, vec![6], 0.0, 3);
        assert!(multi_networks(&[spec], &data, &quick_cfg()).is_err());
    }

    #[test]
    fn learned_error_targets_match_recomputation() {
        let data = toy_data(12, 11);
        let base = TrainedNet::fit(&MlpSpec::new(1, vec![8], 0.0, 4), &data, &quick_cfg()).unwrap();
        // Recompute the targets the error net should have been trained on.
        let expected: Vec<f64> = data
            .iter()
            .map(|(x, &y)| (base.predict(x).unwrap() - y).abs())
            .collect();
        let predictor = learned_error(
            base.clone(),
            &MlpSpec::new(1, vec![8], 0.0, 5),
            &data,
            &quick_cfg(),
        )
        .unwrap();
        let error_net = match &predictor {
            Predictor::LearnedError { error_net, .. } => error_net,
            _ => unreachable!(),
        };
        // The stored normalizer was fitted on exactly those targets.
        let mean = expected.iter().sum::<f64>() / expected.len() as f64;
        assert!((error_net.norm.y_mean - mean).abs() < 1e-12);
        // And the prediction side is the base output.
        let pred = predictor.predict(&[0.6]).unwrap();
        assert_eq!(pred.y_hat, base.predict(&[0.6]).unwrap());
        assert!(pred.sigma >= 0.0);
    }

    #[test]
    fn learned_error_sigma_clamped_nonnegative() {
        let data = toy_data(12, 12);
        let base = TrainedNet::fit(&MlpSpec::new(1, vec![8], 0.0, 6), &data, &quick_cfg()).unwrap();
        // An error net rigged to output a negative value everywhere.
        let mut error_mlp = Mlp::init(&MlpSpec::new(1, vec![4], 0.0, 7)).unwrap();
        for layer in error_mlp.layers_mut() {
            layer.weights_mut().iter_mut().for_each(|w| *w = 0.0);
            layer.biases_mut().iter_mut().for_each(|b| *b = 0.0);
        }
        error_mlp.layers_mut()[1].biases_mut()[0] = -3.0;
        let predictor = Predictor::LearnedError {
            base,
            error_net: TrainedNet {
                mlp: error_mlp,
                norm: Normalizer {
                    x_mean: vec![0.0],
                    x_std: vec![1.0],
                    y_mean: 0.0,
                    y_std: 1.0,
                },
            },
        };
        assert_eq!(predictor.predict(&[0.5]).unwrap().sigma, 0.0);
    }

    #[test]
    fn learned_error_near_zero_on_zero_error_base() {
        // A base that interpolates its training data exactly: identity on
        // positive inputs fitting y = x.
        let xs = [0.5, 1.0, 1.5, 2.0];
        let data = Dataset::from_1d(&xs, &xs).unwrap();
        let mut base_mlp = Mlp::init(&MlpSpec::new(1, vec![1], 0.0, 8)).unwrap();
        base_mlp.layers_mut()[0].weights_mut()[0] = 1.0;
        base_mlp.layers_mut()[0].biases_mut()[0] = 0.0;
        base_mlp.layers_mut()[1].weights_mut()[0] = 1.0;
        base_mlp.layers_mut()[1].biases_mut()[0] = 0.0;
        let identity_norm = Normalizer {
            x_mean: vec![0.0],
            x_std: vec![1.0],
            y_mean: 0.0,
            y_std: 1.0,
        };
        let base = TrainedNet {
            mlp: base_mlp,
            norm: identity_norm,
        };
        let cfg = TrainConfig {
            epochs: 400,
            learning_rate: 0.05,
        };
        let predictor =
            learned_error(base, &MlpSpec::new(1, vec![8], 0.0, 9), &data, &cfg).unwrap();
        for &x in &xs {
            let sigma = predictor.predict(&[x]).unwrap().sigma;
            assert!(sigma < 0.05, "sigma at {x} is {sigma}");
        }
    }
}
