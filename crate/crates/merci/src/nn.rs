//! Minimal feed-forward network for the toy benchmark: dense layers, ReLU,
//! inverted dropout, squared-error loss, full-batch gradient descent.
//!
//! Everything is deterministic given the spec seed: weight initialization
//! and the per-epoch dropout masks are drawn from one seeded stream carried
//! inside the network state.

use rand::{Rng, RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Architecture and seed of a network.
#[derive(Debug, Clone, PartialEq)]
pub struct MlpSpec {
    pub input_dim: usize,
    pub hidden_sizes: Vec<usize>,
    /// Dropout probability on each hidden layer, in [0, 1).
    pub dropout_p: f64,
    pub seed: u64,
}

impl MlpSpec {
    pub fn new(input_dim: usize, hidden_sizes: Vec<usize>, dropout_p: f64, seed: u64) -> Self {
        MlpSpec {
            input_dim,
            hidden_sizes,
            dropout_p,
            seed,
        }
    }

    fn validate(&self) -> Result<()> {
        if self.input_dim == 0 {
            return Err(Error::invalid("input_dim must be >= 1"));
        }
        if self.hidden_sizes.is_empty() || self.hidden_sizes.contains(&0) {
            return Err(Error::invalid(
                "hidden_sizes must be non-empty and positive",
            ));
        }
        if !(0.0..1.0).contains(&self.dropout_p) {
            return Err(Error::invalid("dropout_p must be in [0, 1)"));
        }
        Ok(())
    }
}

/// Training hyperparameters. The batch policy is full batch and the loss is
/// the mean squared error; neither is configurable.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrainConfig {
    pub epochs: usize,
    pub learning_rate: f64,
}

impl Default for TrainConfig {
    fn default() -> Self {
        TrainConfig {
            epochs: 1000,
            learning_rate: 1e-3,
        }
    }
}

impl TrainConfig {
    fn validate(&self) -> Result<()> {
        if self.epochs == 0 {
            return Err(Error::invalid("epochs must be >= 1"));
        }
        if !(self.learning_rate.is_finite() && self.learning_rate > 0.0) {
            return Err(Error::invalid("learning_rate must be finite and > 0"));
        }
        Ok(())
    }
}

/// One dense layer, weights in row-major (out_dim x in_dim) order.
#[derive(Debug, Clone, PartialEq)]
pub struct Dense {
    w: Vec<f64>,
    b: Vec<f64>,
    in_dim: usize,
    out_dim: usize,
}

impl Dense {
    pub fn in_dim(&self) -> usize {
        self.in_dim
    }

    pub fn out_dim(&self) -> usize {
        self.out_dim
    }

    pub fn weights(&self) -> &[f64] {
        &self.w
    }

    pub fn biases(&self) -> &[f64] {
        &self.b
    }

    pub fn weights_mut(&mut self) -> &mut [f64] {
        &mut self.w
    }

    pub fn biases_mut(&mut self) -> &mut [f64] {
        &mut self.b
    }
}

/// Parameter gradients, one entry per layer, shaped like the layer.
#[derive(Debug, Clone, PartialEq)]
pub struct Gradients {
    pub weights: Vec<Vec<f64>>,
    pub biases: Vec<Vec<f64>>,
}

/// A scalar-output multilayer perceptron: ReLU hidden layers (each followed
/// by dropout during stochastic passes), linear output.
#[derive(Debug, Clone)]
pub struct Mlp {
    input_dim: usize,
    dropout_p: f64,
    layers: Vec<Dense>,
    rng: ChaCha8Rng,
}

impl Mlp {
    /// Initializes weights uniformly in +-sqrt(6 / (fan_in + fan_out)) and
    /// biases uniformly in +-1/sqrt(fan_in), all drawn from a stream seeded
    /// by `spec.seed`. Two inits with the same spec are bit-identical.
    pub fn init(spec: &MlpSpec) -> Result<Mlp> {
        spec.validate()?;
        let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
        let mut layers = Vec::with_capacity(spec.hidden_sizes.len() + 1);
        let mut in_dim = spec.input_dim;
        for &out_dim in spec.hidden_sizes.iter().chain(std::iter::once(&1)) {
            let w_bound = (6.0 / (in_dim + out_dim) as f64).sqrt();
            let w = (0..in_dim * out_dim)
                .map(|_| rng.gen_range(-w_bound..w_bound))
                .collect();
            let b_bound = 1.0 / (in_dim as f64).sqrt();
            let b = (0..out_dim)
                .map(|_| rng.gen_range(-b_bound..b_bound))
                .collect();
            layers.push(Dense {
                w,
                b,
                in_dim,
                out_dim,
            });
            in_dim = out_dim;
        }
        Ok(Mlp {
            input_dim: spec.input_dim,
            dropout_p: spec.dropout_p,
            layers,
            rng,
        })
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn dropout_p(&self) -> f64 {
        self.dropout_p
    }

    pub fn layers(&self) -> &[Dense] {
        &self.layers
    }

    pub fn layers_mut(&mut self) -> &mut [Dense] {
        &mut self.layers
    }

    /// True when both networks hold identical parameters.
    pub fn params_eq(&self, other: &Mlp) -> bool {
        self.layers == other.layers
    }

    fn check_input(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::invalid(format!(
                "input has dimension {}, network expects {}",
                x.len(),
                self.input_dim
            )));
        }
        Ok(())
    }

    /// Deterministic forward pass (dropout off).
    pub fn predict(&self, x: &[f64]) -> Result<f64> {
        self.check_input(x)?;
        let mut scratch = Scratch::new(self);
        Ok(self.forward(x, None, &mut scratch))
    }

    /// Stochastic forward pass: hidden units drop with probability
    /// `dropout_p` and survivors scale by 1/(1 - p), so the expectation
    /// matches the deterministic pass on linear regions.
    pub fn predict_stochastic(&self, x: &[f64], rng: &mut ChaCha8Rng) -> Result<f64> {
        self.check_input(x)?;
        let mut scratch = Scratch::new(self);
        let mut masks = self.mask_buffer();
        draw_masks(self.dropout_p, rng, &mut masks);
        Ok(self.forward(x, Some(&masks), &mut scratch))
    }

    fn mask_buffer(&self) -> Vec<Vec<f64>> {
        self.layers[..self.layers.len() - 1]
            .iter()
            .map(|l| vec![1.0; l.out_dim])
            .collect()
    }

    /// Exact gradient of the batch mean squared error with respect to every
    /// parameter, on the deterministic (dropout-off) path.
    pub fn grad(&self, data: &Dataset) -> Result<Gradients> {
        if data.len() == 0 {
            return Err(Error::EmptySet);
        }
        if data.dim() != self.input_dim {
            return Err(Error::invalid("dataset dimension mismatch"));
        }
        let mut scratch = Scratch::new(self);
        let mut grads = self.zero_grads();
        let scale = 1.0 / data.len() as f64;
        for (x, &y) in data.iter() {
            let out = self.forward(x, None, &mut scratch);
            let d_out = 2.0 * (out - y) * scale;
            self.backward(x, d_out, None, &mut scratch, &mut grads);
        }
        Ok(grads)
    }

    /// Mean squared error on the deterministic path.
    pub fn mse(&self, data: &Dataset) -> Result<f64> {
        if data.len() == 0 {
            return Err(Error::EmptySet);
        }
        let mut sum = 0.0;
        for (x, &y) in data.iter() {
            let out = self.predict(x)?;
            sum += (out - y) * (out - y);
        }
        Ok(sum / data.len() as f64)
    }

    /// Runs full-batch gradient descent for `cfg.epochs` epochs.
    ///
    /// When `dropout_p > 0` a fresh mask is drawn per sample per epoch and
    /// the gradient flows through it. Fails with [`Error::Diverged`] as soon
    /// as the epoch loss stops being finite.
    pub fn train(self, data: &Dataset, cfg: &TrainConfig) -> Result<Mlp> {
        self.train_with_snapshots(data, cfg, |_, _| {})
    }

    /// Like [`Mlp::train`], invoking `hook(epoch, &net)` after each epoch's
    /// update; the network can be cloned from the hook to keep snapshots.
    pub fn train_with_snapshots<F>(
        mut self,
        data: &Dataset,
        cfg: &TrainConfig,
        mut hook: F,
    ) -> Result<Mlp>
    where
        F: FnMut(usize, &Mlp),
    {
        cfg.validate()?;
        if data.len() == 0 {
            return Err(Error::EmptySet);
        }
        if data.dim() != self.input_dim {
            return Err(Error::invalid("dataset dimension mismatch"));
        }

        let mut scratch = Scratch::new(&self);
        let mut masks = self.mask_buffer();
        let mut grads = self.zero_grads();
        let scale = 1.0 / data.len() as f64;
        let use_dropout = self.dropout_p > 0.0;
        // The rng is moved out so masks can be drawn while layers are borrowed.
        let mut rng = self.rng.clone();

        for epoch in 0..cfg.epochs {
            for g in grads.weights.iter_mut().chain(grads.biases.iter_mut()) {
                g.iter_mut().for_each(|v| *v = 0.0);
            }
            let mut loss = 0.0;
            for (x, &y) in data.iter() {
                let sample_masks = if use_dropout {
                    draw_masks(self.dropout_p, &mut rng, &mut masks);
                    Some(masks.as_slice())
                } else {
                    None
                };
                let out = self.forward(x, sample_masks, &mut scratch);
                loss += (out - y) * (out - y) * scale;
                let d_out = 2.0 * (out - y) * scale;
                self.backward(x, d_out, sample_masks, &mut scratch, &mut grads);
            }
            if !loss.is_finite() {
                return Err(Error::Diverged { epoch });
            }
            for (layer, (gw, gb)) in self
                .layers
                .iter_mut()
                .zip(grads.weights.iter().zip(&grads.biases))
            {
                for (w, g) in layer.w.iter_mut().zip(gw) {
                    *w -= cfg.learning_rate * g;
                }
                for (b, g) in layer.b.iter_mut().zip(gb) {
                    *b -= cfg.learning_rate * g;
                }
            }
            hook(epoch, &self);
        }
        self.rng = rng;
        Ok(self)
    }

    fn zero_grads(&self) -> Gradients {
        Gradients {
            weights: self.layers.iter().map(|l| vec![0.0; l.w.len()]).collect(),
            biases: self.layers.iter().map(|l| vec![0.0; l.b.len()]).collect(),
        }
    }

    /// Forward pass writing per-layer pre-activations and activations into
    /// the scratch buffers. `masks` holds one multiplier per hidden unit
    /// (0 or 1/(1-p)); `None` means no dropout.
    fn forward(&self, x: &[f64], masks: Option<&[Vec<f64>]>, scratch: &mut Scratch) -> f64 {
        let n_hidden = self.layers.len() - 1;
        for (l, layer) in self.layers[..n_hidden].iter().enumerate() {
            let (prev, rest) = scratch.hs.split_at_mut(l);
            let input: &[f64] = if l == 0 { x } else { &prev[l - 1] };
            let z = &mut scratch.zs[l];
            let h = &mut rest[0];
            if layer.in_dim == 1 {
                let x0 = input[0];
                for ((z, w), b) in z.iter_mut().zip(&layer.w).zip(&layer.b) {
                    *z = b + w * x0;
                }
            } else {
                for ((z, w_row), b) in z
                    .iter_mut()
                    .zip(layer.w.chunks_exact(layer.in_dim))
                    .zip(&layer.b)
                {
                    *z = b + dot(w_row, input);
                }
            }
            match masks {
                Some(m) => {
                    for ((h, z), mask) in h.iter_mut().zip(z.iter()).zip(&m[l]) {
                        *h = z.max(0.0) * mask;
                    }
                }
                None => {
                    for (h, z) in h.iter_mut().zip(z.iter()) {
                        *h = z.max(0.0);
                    }
                }
            }
        }
        let input: &[f64] = if n_hidden == 0 {
            x
        } else {
            &scratch.hs[n_hidden - 1]
        };
        let out_layer = &self.layers[n_hidden];
        out_layer.b[0] + dot(&out_layer.w, input)
    }

    /// Accumulates parameter gradients for one sample into `grads`, given
    /// the upstream gradient `d_out` of the loss with respect to the output.
    /// Must be called right after [`Mlp::forward`] on the same input/masks.
    fn backward(
        &self,
        x: &[f64],
        d_out: f64,
        masks: Option<&[Vec<f64>]>,
        scratch: &mut Scratch,
        grads: &mut Gradients,
    ) {
        let n_hidden = self.layers.len() - 1;

        // Output layer.
        let out_layer = &self.layers[n_hidden];
        let last_h: &[f64] = if n_hidden == 0 {
            x
        } else {
            &scratch.hs[n_hidden - 1]
        };
        for (g, h) in grads.weights[n_hidden].iter_mut().zip(last_h) {
            *g += d_out * h;
        }
        grads.biases[n_hidden][0] += d_out;
        for (d, w) in scratch.d_h.iter_mut().zip(&out_layer.w) {
            *d = d_out * w;
        }

        // Hidden layers, last to first.
        for l in (0..n_hidden).rev() {
            let layer = &self.layers[l];
            let layer_input: &[f64] = if l == 0 { x } else { &scratch.hs[l - 1] };
            // dz = dh * mask * relu'(z)
            let d_z = &mut scratch.d_z[..layer.out_dim];
            match masks {
                Some(m) => {
                    for (((d, up), z), mask) in d_z
                        .iter_mut()
                        .zip(&scratch.d_h)
                        .zip(&scratch.zs[l])
                        .zip(&m[l])
                    {
                        *d = if *z > 0.0 { up * mask } else { 0.0 };
                    }
                }
                None => {
                    for ((d, up), z) in d_z.iter_mut().zip(&scratch.d_h).zip(&scratch.zs[l]) {
                        *d = if *z > 0.0 { *up } else { 0.0 };
                    }
                }
            }
            let gw = &mut grads.weights[l];
            if layer.in_dim == 1 {
                let x0 = layer_input[0];
                for ((g, gb), dz) in gw.iter_mut().zip(&mut grads.biases[l]).zip(d_z.iter()) {
                    *g += dz * x0;
                    *gb += dz;
                }
            } else {
                for ((g_row, gb), dz) in gw
                    .chunks_exact_mut(layer.in_dim)
                    .zip(&mut grads.biases[l])
                    .zip(d_z.iter())
                {
                    if *dz != 0.0 {
                        for (g, v) in g_row.iter_mut().zip(layer_input) {
                            *g += dz * v;
                        }
                    }
                    *gb += dz;
                }
            }
            if l > 0 {
                let prev_dim = layer.in_dim;
                let d_h = &mut scratch.d_h[..prev_dim];
                d_h.iter_mut().for_each(|d| *d = 0.0);
                for (w_row, dz) in layer.w.chunks_exact(prev_dim).zip(d_z.iter()) {
                    if *dz != 0.0 {
                        for (d, w) in d_h.iter_mut().zip(w_row) {
                            *d += dz * w;
                        }
                    }
                }
            }
        }
    }
}

#[inline]
fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Reusable per-sample buffers for forward/backward passes.
struct Scratch {
    zs: Vec<Vec<f64>>,
    hs: Vec<Vec<f64>>,
    d_h: Vec<f64>,
    d_z: Vec<f64>,
}

impl Scratch {
    fn new(mlp: &Mlp) -> Scratch {
        let hidden = &mlp.layers[..mlp.layers.len() - 1];
        let max_dim = hidden.iter().map(|l| l.out_dim).max().unwrap_or(1);
        Scratch {
            zs: hidden.iter().map(|l| vec![0.0; l.out_dim]).collect(),
            hs: hidden.iter().map(|l| vec![0.0; l.out_dim]).collect(),
            d_h: vec![0.0; max_dim],
            d_z: vec![0.0; max_dim],
        }
    }
}

fn draw_masks(p: f64, rng: &mut ChaCha8Rng, masks: &mut [Vec<f64>]) {
    // Bernoulli(p) at u32 resolution; mask drawing sits on the training hot
    // path, so one word per unit instead of a full f64 draw.
    let threshold = (p * 4_294_967_296.0) as u32;
    let keep_scale = 1.0 / (1.0 - p);
    for layer_masks in masks.iter_mut() {
        for m in layer_masks.iter_mut() {
            *m = if rng.next_u32() < threshold {
                0.0
            } else {
                keep_scale
            };
        }
    }
}

/// A regression dataset: input rows and scalar targets.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    inputs: Vec<Vec<f64>>,
    targets: Vec<f64>,
}

impl Dataset {
    pub fn new(inputs: Vec<Vec<f64>>, targets: Vec<f64>) -> Result<Dataset> {
        if inputs.len() != targets.len() {
            return Err(Error::invalid("inputs and targets must have equal length"));
        }
        let dim = inputs.first().map_or(0, Vec::len);
        if inputs.iter().any(|row| row.len() != dim) {
            return Err(Error::invalid("all input rows must share one dimension"));
        }
        Ok(Dataset { inputs, targets })
    }

    /// One-dimensional convenience constructor.
    pub fn from_1d(xs: &[f64], ys: &[f64]) -> Result<Dataset> {
        Dataset::new(xs.iter().map(|&x| vec![x]).collect(), ys.to_vec())
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.inputs.first().map_or(0, Vec::len)
    }

    pub fn inputs(&self) -> &[Vec<f64>] {
        &self.inputs
    }

    pub fn targets(&self) -> &[f64] {
        &self.targets
    }

    pub fn iter(&self) -> impl Iterator<Item = (&[f64], &f64)> {
        self.inputs
            .iter()
            .map(Vec::as_slice)
            .zip(self.targets.iter())
    }
}

/// Z-normalization statistics fitted on a training set.
///
/// Inputs and targets are standardized before training and predictions are
/// mapped back to original units; a zero spread falls back to unit scale.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Normalizer {
    pub x_mean: Vec<f64>,
    pub x_std: Vec<f64>,
    pub y_mean: f64,
    pub y_std: f64,
}

impl Normalizer {
    pub fn fit(data: &Dataset) -> Normalizer {
        let n = data.len() as f64;
        let dim = data.dim();
        let mut x_mean = vec![0.0; dim];
        for row in data.inputs() {
            for (m, v) in x_mean.iter_mut().zip(row) {
                *m += v / n;
            }
        }
        let mut x_std = vec![0.0; dim];
        for row in data.inputs() {
            for ((s, v), m) in x_std.iter_mut().zip(row).zip(&x_mean) {
                *s += (v - m) * (v - m) / n;
            }
        }
        for s in &mut x_std {
            *s = s.sqrt();
            if *s == 0.0 {
                *s = 1.0;
            }
        }
        let y_mean = data.targets().iter().sum::<f64>() / n;
        let mut y_std = (data
            .targets()
            .iter()
            .map(|y| (y - y_mean) * (y - y_mean))
            .sum::<f64>()
            / n)
            .sqrt();
        if y_std == 0.0 {
            y_std = 1.0;
        }
        Normalizer {
            x_mean,
            x_std,
            y_mean,
            y_std,
        }
    }

    pub fn normalize_x(&self, x: &[f64]) -> Vec<f64> {
        x.iter()
            .zip(&self.x_mean)
            .zip(&self.x_std)
            .map(|((v, m), s)| (v - m) / s)
            .collect()
    }

    pub fn normalize(&self, data: &Dataset) -> Dataset {
        Dataset {
            inputs: data
                .inputs()
                .iter()
                .map(|row| self.normalize_x(row))
                .collect(),
            targets: data
                .targets()
                .iter()
                .map(|y| (y - self.y_mean) / self.y_std)
                .collect(),
        }
    }

    pub fn denormalize_y(&self, y: f64) -> f64 {
        y * self.y_std + self.y_mean
    }
}
