//! One-hidden-layer sigmoid network trained by per-example backpropagation
//! on cross-entropy loss.

use rand::seq::SliceRandom;
use rand::Rng;
use serde::Serialize;

use super::{LabeledExample, N_FEATURES};
use crate::match_data::Side;
use crate::{seed, Error, Result};

const NUMERIC: usize = N_FEATURES - 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NeuralNetParams {
    pub hidden: usize,
    pub learning_rate: f64,
    pub epochs: usize,
}

impl Default for NeuralNetParams {
    fn default() -> Self {
        NeuralNetParams {
            hidden: 8,
            learning_rate: 0.1,
            epochs: 200,
        }
    }
}

impl NeuralNetParams {
    pub fn validate(&self) -> Result<()> {
        if self.hidden == 0 {
            return Err(Error::Argument("neural net needs at least one hidden unit".into()));
        }
        if !(self.learning_rate > 0.0 && self.learning_rate.is_finite()) {
            return Err(Error::Argument("neural net learning rate must be positive".into()));
        }
        if self.epochs == 0 {
            return Err(Error::Argument("neural net needs at least one epoch".into()));
        }
        Ok(())
    }
}

fn sigmoid(z: f64) -> f64 {
    if z >= 0.0 {
        1.0 / (1.0 + (-z).exp())
    } else {
        let e = z.exp();
        e / (1.0 + e)
    }
}

/// `ln(1 + e^z)` without overflow.
fn softplus(z: f64) -> f64 {
    z.max(0.0) + (-z.abs()).exp().ln_1p()
}

#[derive(Debug, Clone, PartialEq)]
struct Scaler {
    mean: [f64; NUMERIC],
    sd: [f64; NUMERIC],
}

impl Scaler {
    fn fit(examples: &[LabeledExample]) -> Scaler {
        let n = examples.len() as f64;
        let mut mean = [0.0; NUMERIC];
        for ex in examples {
            for (m, x) in mean.iter_mut().zip(ex.features()) {
                *m += x / n;
            }
        }
        let mut var = [0.0; NUMERIC];
        for ex in examples {
            for j in 0..NUMERIC {
                let d = ex.features()[j] - mean[j];
                var[j] += d * d / n;
            }
        }
        let sd = var.map(|v| if v > 0.0 { v.sqrt() } else { 1.0 });
        Scaler { mean, sd }
    }

    fn apply(&self, ex: &LabeledExample) -> [f64; N_FEATURES] {
        let mut x = ex.features();
        for j in 0..NUMERIC {
            x[j] = (x[j] - self.mean[j]) / self.sd[j];
        }
        x
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NeuralNet {
    scaler: Scaler,
    hidden_w: Vec<[f64; N_FEATURES]>,
    hidden_b: Vec<f64>,
    out_w: Vec<f64>,
    out_b: f64,
    epoch_loss: Vec<f64>,
}

struct Forward {
    hidden: Vec<f64>,
    z: f64,
}

impl NeuralNet {
    pub fn fit(examples: &[LabeledExample], params: &NeuralNetParams, seed: u64) -> Result<NeuralNet> {
        params.validate()?;
        if examples.is_empty() {
            return Err(Error::Argument("cannot fit a neural net on no examples".into()));
        }
        let mut rng = seed::rng(seed);
        let mut net = NeuralNet::init(Scaler::fit(examples), params.hidden, &mut rng);

        let inputs: Vec<([f64; N_FEATURES], f64)> = examples
            .iter()
            .map(|ex| (net.scaler.apply(ex), ex.label.index() as f64))
            .collect();
        let mut order: Vec<usize> = (0..inputs.len()).collect();
        let mut grad = vec![0.0; net.n_parameters()];
        for _ in 0..params.epochs {
            order.shuffle(&mut rng);
            let mut total = 0.0;
            for &i in &order {
                let (x, y) = &inputs[i];
                total += net.backprop(x, *y, &mut grad);
                net.step(&grad, params.learning_rate);
            }
            let mean = total / inputs.len() as f64;
            if !mean.is_finite() {
                return Err(Error::Argument("neural net training diverged".into()));
            }
            net.epoch_loss.push(mean);
        }
        Ok(net)
    }

    fn init(scaler: Scaler, hidden: usize, rng: &mut impl Rng) -> NeuralNet {
        let a = 1.0 / (N_FEATURES as f64).sqrt();
        let b = 1.0 / (hidden as f64).sqrt();
        let hidden_w = (0..hidden)
            .map(|_| std::array::from_fn(|_| rng.random_range(-a..a)))
            .collect();
        let hidden_b = (0..hidden).map(|_| rng.random_range(-a..a)).collect();
        let out_w = (0..hidden).map(|_| rng.random_range(-b..b)).collect();
        let out_b = rng.random_range(-b..b);
        NeuralNet {
            scaler,
            hidden_w,
            hidden_b,
            out_w,
            out_b,
            epoch_loss: Vec::new(),
        }
    }

    fn forward(&self, x: &[f64; N_FEATURES]) -> Forward {
        let hidden: Vec<f64> = self
            .hidden_w
            .iter()
            .zip(&self.hidden_b)
            .map(|(w, b)| sigmoid(w.iter().zip(x).map(|(wi, xi)| wi * xi).sum::<f64>() + b))
            .collect();
        let z = hidden.iter().zip(&self.out_w).map(|(h, v)| h * v).sum::<f64>() + self.out_b;
        Forward { hidden, z }
    }

    /// Fills `grad` with the loss gradient at one input and returns the loss.
    fn backprop(&self, x: &[f64; N_FEATURES], y: f64, grad: &mut [f64]) -> f64 {
        let f = self.forward(x);
        let delta = sigmoid(f.z) - y;
        let h = self.hidden_w.len();
        let stride = N_FEATURES + 1;
        for j in 0..h {
            let hj = f.hidden[j];
            let dj = delta * self.out_w[j] * hj * (1.0 - hj);
            for i in 0..N_FEATURES {
                grad[j * stride + i] = dj * x[i];
            }
            grad[j * stride + N_FEATURES] = dj;
            grad[h * stride + j] = delta * hj;
        }
        grad[h * stride + h] = delta;
        softplus(f.z) - y * f.z
    }

    fn step(&mut self, grad: &[f64], lr: f64) {
        let stride = N_FEATURES + 1;
        let h = self.hidden_w.len();
        for j in 0..h {
            for i in 0..N_FEATURES {
                self.hidden_w[j][i] -= lr * grad[j * stride + i];
            }
            self.hidden_b[j] -= lr * grad[j * stride + N_FEATURES];
            self.out_w[j] -= lr * grad[h * stride + j];
        }
        self.out_b -= lr * grad[h * stride + h];
    }

    pub fn n_parameters(&self) -> usize {
        self.hidden_w.len() * (N_FEATURES + 2) + 1
    }

    /// Flattened weights: each hidden unit's input weights then bias, then
    /// the output weights, then the output bias.
    pub fn parameters(&self) -> Vec<f64> {
        let mut p = Vec::with_capacity(self.n_parameters());
        for (w, b) in self.hidden_w.iter().zip(&self.hidden_b) {
            p.extend_from_slice(w);
            p.push(*b);
        }
        p.extend_from_slice(&self.out_w);
        p.push(self.out_b);
        p
    }

    pub fn set_parameters(&mut self, p: &[f64]) {
        assert_eq!(p.len(), self.n_parameters(), "parameter count");
        let stride = N_FEATURES + 1;
        let h = self.hidden_w.len();
        for j in 0..h {
            self.hidden_w[j].copy_from_slice(&p[j * stride..j * stride + N_FEATURES]);
            self.hidden_b[j] = p[j * stride + N_FEATURES];
            self.out_w[j] = p[h * stride + j];
        }
        self.out_b = p[h * stride + h];
    }

    /// Cross-entropy loss on one example.
    pub fn loss(&self, ex: &LabeledExample) -> f64 {
        let z = self.forward(&self.scaler.apply(ex)).z;
        let y = ex.label.index() as f64;
        softplus(z) - y * z
    }

    /// Analytic gradient of [`NeuralNet::loss`], ordered as
    /// [`NeuralNet::parameters`].
    pub fn gradient(&self, ex: &LabeledExample) -> Vec<f64> {
        let mut g = vec![0.0; self.n_parameters()];
        self.backprop(&self.scaler.apply(ex), ex.label.index() as f64, &mut g);
        g
    }

    /// `P(Team2 | x)`.
    pub fn probability(&self, ex: &LabeledExample) -> f64 {
        sigmoid(self.forward(&self.scaler.apply(ex)).z)
    }

    pub fn predict(&self, ex: &LabeledExample) -> Side {
        if self.probability(ex) > 0.5 {
            Side::Team2
        } else {
            Side::Team1
        }
    }

    /// Mean training loss per epoch.
    pub fn epoch_losses(&self) -> &[f64] {
        &self.epoch_loss
    }
}
