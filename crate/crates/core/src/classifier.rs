//! Single-hidden-layer perceptrons and their structural identity.
//!
//! A classifier's species is the triple (output activation, hidden nodes,
//! learning rate). The network computes
//!
//! ```text
//! y = f_out( W2 · tanh(W1 · x + b1) + b2 )
//! ```
//!
//! and reports `y` as the probability of class 1. Weight matrices keep the
//! bias in column 0, so `W1` is `hidden × (d + 1)` and `W2` is
//! `outputs × (hidden + 1)`.

use std::fmt;

use rand::seq::SliceRandom;
use rand_distr::{Distribution, Normal};
use serde::{Deserialize, Serialize};

use crate::data::Samples;
use crate::error::{Error, Result};
use crate::matrix::Matrix;
use crate::seed::{derive_seed, rng_from_seed};

pub const MIN_HIDDEN: u8 = 7;
pub const MAX_HIDDEN: u8 = 21;
pub const LEARNING_RATES: [f64; 5] = [0.01, 0.02, 0.03, 0.04, 0.05];
/// Number of distinct classifier structures.
pub const GRID_SIZE: usize = 3 * (MAX_HIDDEN - MIN_HIDDEN + 1) as usize * LEARNING_RATES.len();

/// Output-layer activation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Activation {
    Linear,
    Logistic,
    Softmax,
}

impl Activation {
    pub const ALL: [Activation; 3] = [Activation::Linear, Activation::Logistic, Activation::Softmax];

    pub fn name(self) -> &'static str {
        match self {
            Activation::Linear => "linear",
            Activation::Logistic => "logistic",
            Activation::Softmax => "softmax",
        }
    }

    /// Output units: softmax uses one per class, the others a single unit.
    pub fn outputs(self) -> usize {
        match self {
            Activation::Softmax => 2,
            _ => 1,
        }
    }
}

impl fmt::Display for Activation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Activation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "linear" => Ok(Activation::Linear),
            "logistic" | "sigmoid" => Ok(Activation::Logistic),
            "softmax" => Ok(Activation::Softmax),
            other => Err(Error::InvalidConfig(format!("unknown activation {other:?}"))),
        }
    }
}

/// Structural identity of a classifier.
///
/// The learning rate is held as its position in [`LEARNING_RATES`] so the
/// type is `Eq + Hash + Ord`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(try_from = "RawConfig", into = "RawConfig")]
pub struct ClassifierConfig {
    activation: Activation,
    hidden_nodes: u8,
    rate_index: u8,
}

#[derive(Serialize, Deserialize)]
struct RawConfig {
    activation: Activation,
    hidden_nodes: u8,
    learning_rate: f64,
}

impl TryFrom<RawConfig> for ClassifierConfig {
    type Error = Error;

    fn try_from(raw: RawConfig) -> Result<Self> {
        ClassifierConfig::new(raw.activation, raw.hidden_nodes, raw.learning_rate)
    }
}

impl From<ClassifierConfig> for RawConfig {
    fn from(c: ClassifierConfig) -> Self {
        RawConfig {
            activation: c.activation,
            hidden_nodes: c.hidden_nodes,
            learning_rate: c.learning_rate(),
        }
    }
}

impl ClassifierConfig {
    pub fn new(activation: Activation, hidden_nodes: u8, learning_rate: f64) -> Result<Self> {
        if !(MIN_HIDDEN..=MAX_HIDDEN).contains(&hidden_nodes) {
            return Err(Error::InvalidConfig(format!(
                "hidden_nodes {hidden_nodes} not in [{MIN_HIDDEN}, {MAX_HIDDEN}]"
            )));
        }
        let rate_index = LEARNING_RATES
            .iter()
            .position(|&r| (r - learning_rate).abs() < 1e-9)
            .ok_or_else(|| {
                Error::InvalidConfig(format!(
                    "learning_rate {learning_rate} not one of {LEARNING_RATES:?}"
                ))
            })?;
        Ok(ClassifierConfig {
            activation,
            hidden_nodes,
            rate_index: rate_index as u8,
        })
    }

    pub fn activation(&self) -> Activation {
        self.activation
    }

    pub fn hidden_nodes(&self) -> usize {
        usize::from(self.hidden_nodes)
    }

    pub fn learning_rate(&self) -> f64 {
        LEARNING_RATES[usize::from(self.rate_index)]
    }

    /// Canonical text key, e.g. `logistic:7:0.01`.
    pub fn species_key(&self) -> String {
        format!(
            "{}:{}:{:.2}",
            self.activation,
            self.hidden_nodes,
            self.learning_rate()
        )
    }

    /// Inverse of [`ClassifierConfig::species_key`].
    pub fn from_species_key(key: &str) -> Result<Self> {
        let bad = || Error::InvalidConfig(format!("malformed species key {key:?}"));
        let mut parts = key.split(':');
        let (Some(a), Some(h), Some(r), None) = (parts.next(), parts.next(), parts.next(), parts.next())
        else {
            return Err(bad());
        };
        let activation: Activation = a.parse()?;
        let hidden: u8 = h.parse().map_err(|_| bad())?;
        let rate: f64 = r.parse().map_err(|_| bad())?;
        let cfg = ClassifierConfig::new(activation, hidden, rate)?;
        if cfg.species_key() != key {
            return Err(bad());
        }
        Ok(cfg)
    }

    /// All structures, ordered by activation, hidden nodes, learning rate.
    pub fn grid() -> Vec<ClassifierConfig> {
        let mut out = Vec::with_capacity(GRID_SIZE);
        for activation in Activation::ALL {
            for hidden_nodes in MIN_HIDDEN..=MAX_HIDDEN {
                for rate_index in 0..LEARNING_RATES.len() as u8 {
                    out.push(ClassifierConfig {
                        activation,
                        hidden_nodes,
                        rate_index,
                    });
                }
            }
        }
        out
    }
}

impl fmt::Display for ClassifierConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.species_key())
    }
}

/// Canonical key of a configuration.
pub fn species_key(config: &ClassifierConfig) -> String {
    config.species_key()
}

/// Mini-batch SGD settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrainOptions {
    pub epochs: usize,
    pub batch_size: usize,
}

impl Default for TrainOptions {
    fn default() -> Self {
        TrainOptions {
            epochs: 100,
            batch_size: 32,
        }
    }
}

/// A configured network with its weights and training record.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawClassifier")]
pub struct TrainedClassifier {
    config: ClassifierConfig,
    input_dim: usize,
    seed: u64,
    epochs_trained: usize,
    weights_hidden: Matrix,
    weights_output: Matrix,
    #[serde(default)]
    loss_history: Vec<f64>,
    #[serde(default)]
    train_accuracy: Option<f64>,
}

#[derive(Deserialize)]
struct RawClassifier {
    config: ClassifierConfig,
    input_dim: usize,
    seed: u64,
    epochs_trained: usize,
    weights_hidden: Matrix,
    weights_output: Matrix,
    #[serde(default)]
    loss_history: Vec<f64>,
    #[serde(default)]
    train_accuracy: Option<f64>,
}

impl TryFrom<RawClassifier> for TrainedClassifier {
    type Error = Error;

    fn try_from(raw: RawClassifier) -> Result<Self> {
        let mut clf = TrainedClassifier::from_weights(
            raw.config,
            raw.input_dim,
            raw.weights_hidden,
            raw.weights_output,
            raw.seed,
        )?;
        clf.epochs_trained = raw.epochs_trained;
        clf.loss_history = raw.loss_history;
        clf.train_accuracy = raw.train_accuracy;
        Ok(clf)
    }
}

/// Gradient buffers laid out like the weight matrices.
#[derive(Clone, Debug)]
struct Gradients {
    hidden: Vec<f64>,
    output: Vec<f64>,
}

impl Gradients {
    fn zeros_like(clf: &TrainedClassifier) -> Self {
        Gradients {
            hidden: vec![0.0; clf.weights_hidden.as_slice().len()],
            output: vec![0.0; clf.weights_output.as_slice().len()],
        }
    }

    fn clear(&mut self) {
        self.hidden.fill(0.0);
        self.output.fill(0.0);
    }
}

#[inline]
fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
#[inline]
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

impl TrainedClassifier {
    /// Fresh network with weights drawn from `N(0, 1/fan_in)`.
    pub fn init(config: ClassifierConfig, input_dim: usize, seed: u64) -> Result<Self> {
        if input_dim < 1 {
            return Err(Error::InvalidConfig("input_dim must be at least 1".into()));
        }
        let hidden = config.hidden_nodes();
        let outputs = config.activation().outputs();
        let mut rng = rng_from_seed(derive_seed(seed, "init"));
        let mut draw = |rows: usize, cols: usize, fan_in: usize| {
            let dist = Normal::new(0.0, 1.0 / (fan_in as f64).sqrt()).expect("positive scale");
            let data = (0..rows * cols).map(|_| dist.sample(&mut rng)).collect();
            Matrix::from_vec(rows, cols, data).expect("shape")
        };
        let weights_hidden = draw(hidden, input_dim + 1, input_dim);
        let weights_output = draw(outputs, hidden + 1, hidden);
        Ok(TrainedClassifier {
            config,
            input_dim,
            seed,
            epochs_trained: 0,
            weights_hidden,
            weights_output,
            loss_history: Vec::new(),
            train_accuracy: None,
        })
    }

    /// Network with every weight and bias set to zero.
    pub fn zeroed(config: ClassifierConfig, input_dim: usize) -> Result<Self> {
        if input_dim < 1 {
            return Err(Error::InvalidConfig("input_dim must be at least 1".into()));
        }
        TrainedClassifier::from_weights(
            config,
            input_dim,
            Matrix::zeros(config.hidden_nodes(), input_dim + 1),
            Matrix::zeros(config.activation().outputs(), config.hidden_nodes() + 1),
            0,
        )
    }

    /// Wraps explicit weights after checking shapes and finiteness.
    pub fn from_weights(
        config: ClassifierConfig,
        input_dim: usize,
        weights_hidden: Matrix,
        weights_output: Matrix,
        seed: u64,
    ) -> Result<Self> {
        let hidden = config.hidden_nodes();
        let want_hidden = (hidden, input_dim + 1);
        let want_output = (config.activation().outputs(), hidden + 1);
        if input_dim < 1 || weights_hidden.shape() != want_hidden {
            return Err(Error::InvalidConfig(format!(
                "hidden weights have shape {:?}, expected {want_hidden:?}",
                weights_hidden.shape()
            )));
        }
        if weights_output.shape() != want_output {
            return Err(Error::InvalidConfig(format!(
                "output weights have shape {:?}, expected {want_output:?}",
                weights_output.shape()
            )));
        }
        if !weights_hidden.is_finite() || !weights_output.is_finite() {
            return Err(Error::InvalidConfig("non-finite weight".into()));
        }
        Ok(TrainedClassifier {
            config,
            input_dim,
            seed,
            epochs_trained: 0,
            weights_hidden,
            weights_output,
            loss_history: Vec::new(),
            train_accuracy: None,
        })
    }

    pub fn config(&self) -> &ClassifierConfig {
        &self.config
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn epochs_trained(&self) -> usize {
        self.epochs_trained
    }

    pub fn weights_hidden(&self) -> &Matrix {
        &self.weights_hidden
    }

    pub fn weights_output(&self) -> &Matrix {
        &self.weights_output
    }

    /// Mean training loss at the end of each epoch.
    pub fn loss_history(&self) -> &[f64] {
        &self.loss_history
    }

    pub fn train_accuracy(&self) -> Option<f64> {
        self.train_accuracy
    }

    pub fn set_train_accuracy(&mut self, acc: f64) {
        self.train_accuracy = Some(acc);
    }

    fn check_dim(&self, x: &[f64]) -> Result<()> {
        if x.len() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: x.len(),
            });
        }
        Ok(())
    }

    /// Hidden activations into `hidden`, output logits into `logits`.
    fn logits(&self, x: &[f64], hidden: &mut [f64], logits: &mut [f64; 2]) {
        for (j, h) in hidden.iter_mut().enumerate() {
            let w = self.weights_hidden.row(j);
            let a = w[0] + w[1..].iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>();
            *h = a.tanh();
        }
        for (k, z) in logits
            .iter_mut()
            .take(self.config.activation().outputs())
            .enumerate()
        {
            let w = self.weights_output.row(k);
            *z = w[0] + w[1..].iter().zip(hidden.iter()).map(|(wj, hj)| wj * hj).sum::<f64>();
        }
    }

    fn probability(&self, logits: &[f64; 2]) -> f64 {
        match self.config.activation() {
            Activation::Linear => logits[0].clamp(0.0, 1.0),
            Activation::Logistic => sigmoid(logits[0]),
            // p1 = e^z1 / (e^z0 + e^z1)
            Activation::Softmax => sigmoid(logits[1] - logits[0]),
        }
    }

    /// Class-1 probability of `x`, always within `[0, 1]`.
    pub fn forward(&self, x: &[f64]) -> Result<f64> {
        self.check_dim(x)?;
        let mut hidden = vec![0.0; self.config.hidden_nodes()];
        let mut logits = [0.0; 2];
        self.logits(x, &mut hidden, &mut logits);
        Ok(self.probability(&logits))
    }

    /// Training loss on one sample: cross-entropy for logistic and softmax
    /// heads, half squared error on the unclamped output for linear.
    pub fn loss(&self, x: &[f64], y: u8) -> Result<f64> {
        self.check_dim(x)?;
        let mut hidden = vec![0.0; self.config.hidden_nodes()];
        let mut logits = [0.0; 2];
        self.logits(x, &mut hidden, &mut logits);
        Ok(self.loss_from_logits(&logits, y))
    }

    fn loss_from_logits(&self, logits: &[f64; 2], y: u8) -> f64 {
        let t = f64::from(y);
        match self.config.activation() {
            Activation::Linear => 0.5 * (logits[0] - t).powi(2),
            Activation::Logistic => softplus(logits[0]) - t * logits[0],
            Activation::Softmax => {
                let m = logits[0].max(logits[1]);
                let lse = m + ((logits[0] - m).exp() + (logits[1] - m).exp()).ln();
                lse - logits[usize::from(y)]
            }
        }
    }

    /// Adds the per-sample gradient of the loss into `grads`; returns the loss.
    fn accumulate_gradient(
        &self,
        x: &[f64],
        y: u8,
        hidden: &mut [f64],
        back: &mut [f64],
        grads: &mut Gradients,
    ) -> f64 {
        let mut logits = [0.0; 2];
        self.logits(x, hidden, &mut logits);
        let loss = self.loss_from_logits(&logits, y);
        let t = f64::from(y);
        let mut dz = [0.0; 2];
        match self.config.activation() {
            Activation::Linear => dz[0] = logits[0] - t,
            Activation::Logistic => dz[0] = sigmoid(logits[0]) - t,
            Activation::Softmax => {
                let p1 = sigmoid(logits[1] - logits[0]);
                dz[0] = (1.0 - p1) - (1.0 - t);
                dz[1] = p1 - t;
            }
        }
        let outputs = self.config.activation().outputs();
        let hcols = self.weights_output.cols();
        back.fill(0.0);
        for (k, &d) in dz.iter().enumerate().take(outputs) {
            let g = &mut grads.output[k * hcols..(k + 1) * hcols];
            g[0] += d;
            let w = self.weights_output.row(k);
            for j in 0..hidden.len() {
                g[j + 1] += d * hidden[j];
                back[j] += d * w[j + 1];
            }
        }
        let icols = self.weights_hidden.cols();
        for j in 0..hidden.len() {
            let da = back[j] * (1.0 - hidden[j] * hidden[j]);
            let g = &mut grads.hidden[j * icols..(j + 1) * icols];
            g[0] += da;
            for (gi, xi) in g[1..].iter_mut().zip(x) {
                *gi += da * xi;
            }
        }
        loss
    }

    fn weight_mut(&mut self, hidden_layer: bool, idx: usize) -> &mut f64 {
        if hidden_layer {
            &mut self.weights_hidden.as_mut_slice()[idx]
        } else {
            &mut self.weights_output.as_mut_slice()[idx]
        }
    }

    fn gradient(&self, x: &[f64], y: u8) -> Gradients {
        let mut grads = Gradients::zeros_like(self);
        let mut hidden = vec![0.0; self.config.hidden_nodes()];
        let mut back = vec![0.0; self.config.hidden_nodes()];
        self.accumulate_gradient(x, y, &mut hidden, &mut back, &mut grads);
        grads
    }

    /// Mini-batch gradient descent on the mean batch loss at an explicit
    /// learning rate. Epoch `k` shuffles the rows with a stream keyed by the
    /// classifier seed and `k`, so training in several calls matches one
    /// longer call.
    pub fn sgd(&mut self, data: &Samples, opts: TrainOptions, learning_rate: f64) -> Result<()> {
        if data.is_empty() {
            return Err(Error::EmptyData);
        }
        if opts.epochs < 1 || opts.batch_size < 1 {
            return Err(Error::OutOfRange(format!(
                "epochs ({}) and batch_size ({}) must be at least 1",
                opts.epochs, opts.batch_size
            )));
        }
        if data.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                got: data.dim(),
            });
        }
        let mut order: Vec<usize> = (0..data.len()).collect();
        let mut grads = Gradients::zeros_like(self);
        let mut hidden = vec![0.0; self.config.hidden_nodes()];
        let mut back = vec![0.0; self.config.hidden_nodes()];
        for _ in 0..opts.epochs {
            let mut rng = rng_from_seed(derive_seed(
                self.seed,
                &format!("train/{}", self.epochs_trained),
            ));
            order.sort_unstable();
            order.shuffle(&mut rng);
            let mut epoch_loss = 0.0;
            for batch in order.chunks(opts.batch_size) {
                grads.clear();
                for &i in batch {
                    epoch_loss += self.accumulate_gradient(
                        data.row(i),
                        data.labels()[i],
                        &mut hidden,
                        &mut back,
                        &mut grads,
                    );
                }
                let step = learning_rate / batch.len() as f64;
                for (w, g) in self.weights_hidden.as_mut_slice().iter_mut().zip(&grads.hidden) {
                    *w -= step * g;
                }
                for (w, g) in self.weights_output.as_mut_slice().iter_mut().zip(&grads.output) {
                    *w -= step * g;
                }
            }
            self.loss_history.push(epoch_loss / data.len() as f64);
            self.epochs_trained += 1;
        }
        if !self.weights_hidden.is_finite() || !self.weights_output.is_finite() {
            return Err(Error::InvalidConfig(format!(
                "training diverged for {}",
                self.config
            )));
        }
        Ok(())
    }

    /// Trains at the configured learning rate and returns the updated
    /// classifier.
    pub fn train(mut self, data: &Samples, opts: TrainOptions) -> Result<Self> {
        self.sgd(data, opts, self.config.learning_rate())?;
        Ok(self)
    }

    /// Fraction of `data` classified correctly at the 0.5 threshold.
    pub fn accuracy(&self, data: &Samples) -> Result<f64> {
        if data.is_empty() {
            return Err(Error::EmptyData);
        }
        let mut correct = 0usize;
        for (x, y) in data.iter() {
            let vote = u8::from(self.forward(x)? >= 0.5);
            correct += usize::from(vote == y);
        }
        Ok(correct as f64 / data.len() as f64)
    }

    /// Largest relative disagreement between backprop and central finite
    /// differences (`h = 1e-5`) over every weight:
    /// `|analytic - numeric| / max(1, |analytic|)`.
    pub fn gradient_check(&self, x: &[f64], y: u8) -> Result<f64> {
        self.check_dim(x)?;
        if y > 1 {
            return Err(Error::NonBinaryLabel {
                row: 0,
                value: f64::from(y),
            });
        }
        const H: f64 = 1e-5;
        let analytic = self.gradient(x, y);
        let mut probe = self.clone();
        let mut worst: f64 = 0.0;
        let layers = [(true, &analytic.hidden), (false, &analytic.output)];
        for (hidden_layer, grads) in layers {
            for (i, &a) in grads.iter().enumerate() {
                let orig = *probe.weight_mut(hidden_layer, i);
                *probe.weight_mut(hidden_layer, i) = orig + H;
                let up = probe.loss(x, y)?;
                *probe.weight_mut(hidden_layer, i) = orig - H;
                let down = probe.loss(x, y)?;
                *probe.weight_mut(hidden_layer, i) = orig;
                let numeric = (up - down) / (2.0 * H);
                worst = worst.max((a - numeric).abs() / a.abs().max(1.0));
            }
        }
        Ok(worst)
    }
}

/// Seeded initialization; see [`TrainedClassifier::init`].
pub fn init_classifier(config: ClassifierConfig, input_dim: usize, seed: u64) -> Result<TrainedClassifier> {
    TrainedClassifier::init(config, input_dim, seed)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cfg(a: Activation, h: u8, r: f64) -> ClassifierConfig {
        ClassifierConfig::new(a, h, r).unwrap()
    }

    #[test]
    fn config_validation() {
        assert!(ClassifierConfig::new(Activation::Linear, 6, 0.01).is_err());
        assert!(ClassifierConfig::new(Activation::Linear, 22, 0.01).is_err());
        assert!(ClassifierConfig::new(Activation::Linear, 7, 0.015).is_err());
        assert!(ClassifierConfig::new(Activation::Linear, 21, 0.05).is_ok());
    }

    #[test]
    fn species_key_format() {
        assert_eq!(cfg(Activation::Logistic, 7, 0.01).species_key(), "logistic:7:0.01");
        assert_ne!(
            cfg(Activation::Linear, 21, 0.05).species_key(),
            cfg(Activation::Linear, 21, 0.04).species_key()
        );
        let c = cfg(Activation::Softmax, 13, 0.03);
        assert_eq!(c.species_key(), c.species_key());
        assert_eq!(ClassifierConfig::from_species_key(&c.species_key()).unwrap(), c);
    }

    #[test]
    fn species_key_rejects_garbage() {
        for bad in ["", "logistic:7", "logistic:7:0.01:x", "tanh:7:0.01", "logistic:7:0.010"] {
            assert!(ClassifierConfig::from_species_key(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn grid_is_bijective_with_keys() {
        let grid = ClassifierConfig::grid();
        assert_eq!(grid.len(), 225);
        let keys: std::collections::BTreeSet<String> = grid.iter().map(species_key).collect();
        assert_eq!(keys.len(), 225);
        for c in &grid {
            assert_eq!(ClassifierConfig::from_species_key(&c.species_key()).unwrap(), *c);
        }
    }

    #[test]
    fn init_shapes_and_determinism() {
        let c = cfg(Activation::Logistic, 7, 0.01);
        let a = init_classifier(c, 7, 42).unwrap();
        assert_eq!(a.weights_hidden().shape(), (7, 8));
        assert_eq!(a.weights_output().shape(), (1, 8));
        let b = init_classifier(c, 7, 42).unwrap();
        assert_eq!(a, b);
        let other = init_classifier(c, 7, 43).unwrap();
        assert_ne!(a.weights_hidden(), other.weights_hidden());
        assert!(init_classifier(c, 0, 1).is_err());
        let s = init_classifier(cfg(Activation::Softmax, 9, 0.02), 3, 1).unwrap();
        assert_eq!(s.weights_output().shape(), (2, 10));
    }

    #[test]
    fn zero_weight_outputs() {
        let x = [0.3; 7];
        let p = |a| TrainedClassifier::zeroed(cfg(a, 7, 0.01), 7).unwrap().forward(&x).unwrap();
        assert_eq!(p(Activation::Logistic), 0.5);
        assert_eq!(p(Activation::Linear), 0.0);
        assert_eq!(p(Activation::Softmax), 0.5);
    }

    #[test]
    fn forward_checks_dimension() {
        let clf = TrainedClassifier::zeroed(cfg(Activation::Linear, 7, 0.01), 7).unwrap();
        assert!(matches!(
            clf.forward(&[0.0; 6]),
            Err(Error::DimensionMismatch { expected: 7, got: 6 })
        ));
    }

    #[test]
    fn linear_output_is_clamped() {
        let c = cfg(Activation::Linear, 7, 0.01);
        let mut out = Matrix::zeros(1, 8);
        out.set(0, 0, 3.0);
        let clf = TrainedClassifier::from_weights(c, 2, Matrix::zeros(7, 3), out.clone(), 0).unwrap();
        assert_eq!(clf.forward(&[0.5, 0.5]).unwrap(), 1.0);
        out.set(0, 0, -3.0);
        let clf = TrainedClassifier::from_weights(c, 2, Matrix::zeros(7, 3), out, 0).unwrap();
        assert_eq!(clf.forward(&[0.5, 0.5]).unwrap(), 0.0);
    }

    #[test]
    fn from_weights_rejects_bad_shapes() {
        let c = cfg(Activation::Logistic, 7, 0.01);
        assert!(TrainedClassifier::from_weights(c, 2, Matrix::zeros(7, 2), Matrix::zeros(1, 8), 0).is_err());
        assert!(TrainedClassifier::from_weights(c, 2, Matrix::zeros(7, 3), Matrix::zeros(2, 8), 0).is_err());
        let mut w = Matrix::zeros(7, 3);
        w.set(0, 0, f64::NAN);
        assert!(TrainedClassifier::from_weights(c, 2, w, Matrix::zeros(1, 8), 0).is_err());
    }

    #[test]
    fn zero_net_gradient_check_is_tight() {
        for a in Activation::ALL {
            let clf = TrainedClassifier::zeroed(cfg(a, 7, 0.01), 4).unwrap();
            let err = clf.gradient_check(&[0.1, 0.9, 0.4, 0.6], 1).unwrap();
            assert!(err < 1e-6, "{a}: {err}");
        }
    }

    #[test]
    fn sgd_rejects_bad_input() {
        let clf = init_classifier(cfg(Activation::Logistic, 7, 0.01), 2, 0).unwrap();
        let empty = Samples::new(Matrix::zeros(0, 2), vec![]).unwrap();
        assert!(clf.clone().train(&empty, TrainOptions::default()).is_err());
        let one = Samples::new(Matrix::zeros(1, 2), vec![1]).unwrap();
        let opts = TrainOptions {
            epochs: 0,
            batch_size: 32,
        };
        assert!(clf.train(&one, opts).is_err());
    }

    #[test]
    fn serde_round_trip() {
        let clf = init_classifier(cfg(Activation::Softmax, 11, 0.04), 7, 5).unwrap();
        let json = serde_json::to_string(&clf).unwrap();
        assert!(json.contains("\"learning_rate\":0.04"));
        let back: TrainedClassifier = serde_json::from_str(&json).unwrap();
        assert_eq!(back, clf);
    }

    #[test]
    fn serde_rejects_inconsistent_shapes() {
        let clf = init_classifier(cfg(Activation::Logistic, 7, 0.01), 3, 5).unwrap();
        let mut v = serde_json::to_value(&clf).unwrap();
        v["input_dim"] = 4.into();
        assert!(serde_json::from_value::<TrainedClassifier>(v).is_err());
    }
}
