//! Naive Bayes with Gaussian class-conditionals for the five numeric
//! features and a smoothed categorical likelihood for the par prediction.

use serde::Serialize;

use super::{LabeledExample, N_FEATURES};
use crate::match_data::Side;
use crate::{Error, Result};

const NUMERIC: usize = N_FEATURES - 1;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct NaiveBayesParams {
    /// Lower bound on each per-class variance.
    pub var_floor: f64,
    /// Additive (Laplace) smoothing for the categorical feature.
    pub smoothing: f64,
}

impl Default for NaiveBayesParams {
    fn default() -> Self {
        NaiveBayesParams {
            var_floor: 1e-9,
            smoothing: 1.0,
        }
    }
}

impl NaiveBayesParams {
    pub fn validate(&self) -> Result<()> {
        if !(self.var_floor > 0.0 && self.var_floor.is_finite()) {
            return Err(Error::Argument("naive bayes var_floor must be positive".into()));
        }
        if !(self.smoothing >= 0.0 && self.smoothing.is_finite()) {
            return Err(Error::Argument("naive bayes smoothing must be non-negative".into()));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct NaiveBayes {
    // indexed by class (Side::index)
    log_prior: [f64; 2],
    mean: [[f64; NUMERIC]; 2],
    var: [[f64; NUMERIC]; 2],
    // [class][dl_prediction]
    log_dl: [[f64; 2]; 2],
}

impl NaiveBayes {
    pub fn fit(examples: &[LabeledExample], params: &NaiveBayesParams) -> Result<NaiveBayes> {
        params.validate()?;
        if examples.is_empty() {
            return Err(Error::Argument("cannot fit naive bayes on no examples".into()));
        }
        let mut n = [0usize; 2];
        let mut sum = [[0.0; NUMERIC]; 2];
        let mut dl = [[0usize; 2]; 2];
        for ex in examples {
            let c = ex.label.index();
            n[c] += 1;
            let x = ex.features();
            for j in 0..NUMERIC {
                sum[c][j] += x[j];
            }
            dl[c][ex.dl_prediction.index()] += 1;
        }

        let mut mean = [[0.0; NUMERIC]; 2];
        let mut var = [[params.var_floor; NUMERIC]; 2];
        for c in 0..2 {
            if n[c] == 0 {
                continue;
            }
            for j in 0..NUMERIC {
                mean[c][j] = sum[c][j] / n[c] as f64;
            }
        }
        let mut sq = [[0.0; NUMERIC]; 2];
        for ex in examples {
            let c = ex.label.index();
            let x = ex.features();
            for j in 0..NUMERIC {
                let d = x[j] - mean[c][j];
                sq[c][j] += d * d;
            }
        }
        for c in 0..2 {
            if n[c] == 0 {
                continue;
            }
            for j in 0..NUMERIC {
                var[c][j] = (sq[c][j] / n[c] as f64).max(params.var_floor);
            }
        }

        let total = examples.len() as f64;
        let log_prior = n.map(|k| if k == 0 { f64::NEG_INFINITY } else { (k as f64 / total).ln() });
        let mut log_dl = [[0.0; 2]; 2];
        for c in 0..2 {
            let denom = n[c] as f64 + 2.0 * params.smoothing;
            for v in 0..2 {
                let num = dl[c][v] as f64 + params.smoothing;
                log_dl[c][v] = if denom > 0.0 && num > 0.0 {
                    (num / denom).ln()
                } else {
                    f64::NEG_INFINITY
                };
            }
        }

        Ok(NaiveBayes {
            log_prior,
            mean,
            var,
            log_dl,
        })
    }

    /// Unnormalized log posterior per class.
    pub fn log_joint(&self, ex: &LabeledExample) -> [f64; 2] {
        let x = ex.features();
        let mut out = [0.0; 2];
        for (c, slot) in out.iter_mut().enumerate() {
            if self.log_prior[c] == f64::NEG_INFINITY {
                *slot = f64::NEG_INFINITY;
                continue;
            }
            let mut lp = self.log_prior[c] + self.log_dl[c][ex.dl_prediction.index()];
            for j in 0..NUMERIC {
                let v = self.var[c][j];
                let d = x[j] - self.mean[c][j];
                lp -= 0.5 * ((2.0 * std::f64::consts::PI * v).ln() + d * d / v);
            }
            *slot = lp;
        }
        out
    }

    /// Posterior `[P(Team1 | x), P(Team2 | x)]`.
    pub fn posterior(&self, ex: &LabeledExample) -> [f64; 2] {
        let lj = self.log_joint(ex);
        let top = lj[0].max(lj[1]);
        if top == f64::NEG_INFINITY {
            return [0.5, 0.5];
        }
        let e = lj.map(|l| (l - top).exp());
        let z = e[0] + e[1];
        [e[0] / z, e[1] / z]
    }

    pub fn predict(&self, ex: &LabeledExample) -> Side {
        let lj = self.log_joint(ex);
        if lj[1] > lj[0] {
            Side::Team2
        } else {
            Side::Team1
        }
    }
}
