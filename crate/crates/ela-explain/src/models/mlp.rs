//! Feed-forward regression network: five ReLU hidden layers with a
//! concatenation skip from hidden layer 2 into hidden layer 4, linear
//! output, trained with mini-batch Adam on mean squared error.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Hidden widths for the single-target network; the multi-target
/// network doubles every width.
pub const STR_WIDTHS: [usize; 5] = [24, 16, 16, 12, 8];
/// Concatenation skip: output of hidden layer 2 feeds hidden layer 4
/// (1-based hidden indices).
const SKIP_FROM: usize = 1;
const SKIP_TO: usize = 3;

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct MlpParams {
    pub epochs: usize,
    pub batch_size: usize,
    pub learning_rate: f64,
    pub dropout: f64,
}

impl Default for MlpParams {
    fn default() -> Self {
        MlpParams {
            epochs: 100,
            batch_size: 10,
            learning_rate: 0.001,
            dropout: 0.0,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Dense {
    pub w: Vec<f64>, // row-major out x in
    pub b: Vec<f64>,
    pub in_dim: usize,
    pub out_dim: usize,
}

impl Dense {
    fn new(in_dim: usize, out_dim: usize, rng: &mut ChaCha8Rng) -> Self {
        // He-uniform init
        let limit = (6.0 / in_dim as f64).sqrt();
        let w = (0..in_dim * out_dim)
            .map(|_| rng.random_range(-limit..limit))
            .collect();
        Dense {
            w,
            b: vec![0.0; out_dim],
            in_dim,
            out_dim,
        }
    }

    fn forward(&self, input: &[f64]) -> Vec<f64> {
        let mut out = self.b.clone();
        for o in 0..self.out_dim {
            let row = &self.w[o * self.in_dim..(o + 1) * self.in_dim];
            out[o] += row.iter().zip(input).map(|(w, x)| w * x).sum::<f64>();
        }
        out
    }

    /// Accumulates dW and db, returns dL/d(input).
    fn backward(
        &self,
        input: &[f64],
        delta: &[f64],
        grad_w: &mut [f64],
        grad_b: &mut [f64],
    ) -> Vec<f64> {
        let mut d_input = vec![0.0; self.in_dim];
        for o in 0..self.out_dim {
            grad_b[o] += delta[o];
            let row = &self.w[o * self.in_dim..(o + 1) * self.in_dim];
            let grad_row = &mut grad_w[o * self.in_dim..(o + 1) * self.in_dim];
            for i in 0..self.in_dim {
                grad_row[i] += delta[o] * input[i];
                d_input[i] += row[i] * delta[o];
            }
        }
        d_input
    }

    fn len(&self) -> usize {
        self.w.len() + self.b.len()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MlpModel {
    pub input_dim: usize,
    pub widths: Vec<usize>,
    pub n_targets: usize,
    pub layers: Vec<Dense>,
}

fn relu(v: &mut [f64]) {
    for x in v.iter_mut() {
        if *x < 0.0 {
            *x = 0.0;
        }
    }
}

struct Activations {
    output: Vec<f64>,
}

impl MlpModel {
    /// Untrained network with seeded He-uniform weights; widths are the
    /// five hidden sizes.
    pub fn init(input_dim: usize, widths: &[usize], n_targets: usize, seed: u64) -> Self {
        assert_eq!(widths.len(), 5, "five hidden layers");
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut layers = Vec::with_capacity(6);
        let mut in_dim = input_dim;
        for (i, &w) in widths.iter().enumerate() {
            let actual_in = if i == SKIP_TO { in_dim + widths[SKIP_FROM] } else { in_dim };
            layers.push(Dense::new(actual_in, w, &mut rng));
            in_dim = w;
        }
        layers.push(Dense::new(in_dim, n_targets, &mut rng));
        MlpModel {
            input_dim,
            widths: widths.to_vec(),
            n_targets,
            layers,
        }
    }

    pub fn param_count(&self) -> usize {
        self.layers.iter().map(Dense::len).sum()
    }

    fn forward(&self, x: &[f64]) -> Activations {
        let mut hidden: Vec<Vec<f64>> = Vec::with_capacity(5);
        let mut current = x.to_vec();
        for i in 0..5 {
            let input = if i == SKIP_TO {
                let mut cat = current.clone();
                cat.extend_from_slice(&hidden[SKIP_FROM]);
                cat
            } else {
                current
            };
            let mut out = self.layers[i].forward(&input);
            relu(&mut out);
            hidden.push(out.clone());
            current = out;
        }
        let output = self.layers[5].forward(&current);
        Activations { output }
    }

    pub fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.input_dim {
            return Err(Error::SchemaMismatch {
                reason: format!("expected {} features, got {}", self.input_dim, x.len()),
            });
        }
        Ok(self.forward(x).output)
    }

    /// MSE over a batch: mean over samples and targets.
    pub fn batch_loss(&self, xs: &[&[f64]], ys: &[&[f64]]) -> f64 {
        let mut acc = 0.0;
        for (x, y) in xs.iter().zip(ys) {
            let out = self.forward(x).output;
            for (o, t) in out.iter().zip(*y) {
                acc += (o - t) * (o - t);
            }
        }
        acc / (xs.len() * self.n_targets) as f64
    }

    /// Analytic loss gradients for a batch, flattened layer by layer
    /// (weights then bias per layer). Dropout masks, when given, are
    /// per-sample per-hidden-layer keep indicators scaled by 1/(1-p).
    pub fn batch_gradients(
        &self,
        xs: &[&[f64]],
        ys: &[&[f64]],
        dropout: Option<(&[Vec<Vec<f64>>], f64)>,
    ) -> (f64, Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let mut grad_w: Vec<Vec<f64>> = self.layers.iter().map(|l| vec![0.0; l.w.len()]).collect();
        let mut grad_b: Vec<Vec<f64>> = self.layers.iter().map(|l| vec![0.0; l.b.len()]).collect();
        let scale = 1.0 / (xs.len() * self.n_targets) as f64;
        let mut loss = 0.0;

        for (s, (x, y)) in xs.iter().zip(ys).enumerate() {
            // forward with optional dropout masks applied post-ReLU
            let mut hidden: Vec<Vec<f64>> = Vec::with_capacity(5);
            let mut current = x.to_vec();
            for i in 0..5 {
                let input = if i == SKIP_TO {
                    let mut cat = current.clone();
                    cat.extend_from_slice(&hidden[SKIP_FROM]);
                    cat
                } else {
                    current
                };
                let mut out = self.layers[i].forward(&input);
                relu(&mut out);
                if let Some((masks, _)) = dropout {
                    for (v, &m) in out.iter_mut().zip(&masks[s][i]) {
                        *v *= m;
                    }
                }
                hidden.push(out.clone());
                current = out;
            }
            let output = self.layers[5].forward(&current);

            let mut delta: Vec<f64> = output
                .iter()
                .zip(*y)
                .map(|(o, t)| {
                    loss += (o - t) * (o - t) * scale;
                    2.0 * (o - t) * scale
                })
                .collect();

            // inputs seen by each layer during the forward pass
            let layer_input = |i: usize| -> Vec<f64> {
                if i == 0 {
                    x.to_vec()
                } else if i == SKIP_TO {
                    let mut cat = hidden[i - 1].clone();
                    cat.extend_from_slice(&hidden[SKIP_FROM]);
                    cat
                } else {
                    hidden[i - 1].clone()
                }
            };

            let mut d_skip: Vec<f64> = Vec::new();
            let mut d_current =
                self.layers[5].backward(&hidden[4], &delta, &mut grad_w[5], &mut grad_b[5]);
            for i in (0..5).rev() {
                if i == SKIP_FROM && !d_skip.is_empty() {
                    for (d, s) in d_current.iter_mut().zip(&d_skip) {
                        *d += s;
                    }
                }
                // through dropout then ReLU
                delta = d_current
                    .iter()
                    .enumerate()
                    .map(|(j, &d)| {
                        let m = dropout.map_or(1.0, |(masks, _)| masks[s][i][j]);
                        if hidden[i][j] > 0.0 { d * m } else { 0.0 }
                    })
                    .collect();
                let input = layer_input(i);
                let d_input =
                    self.layers[i].backward(&input, &delta, &mut grad_w[i], &mut grad_b[i]);
                if i == SKIP_TO {
                    d_current = d_input[..self.widths[i - 1]].to_vec();
                    d_skip = d_input[self.widths[i - 1]..].to_vec();
                } else {
                    d_current = d_input;
                }
            }
        }
        (loss, grad_w, grad_b)
    }
}

struct Adam {
    m_w: Vec<Vec<f64>>,
    v_w: Vec<Vec<f64>>,
    m_b: Vec<Vec<f64>>,
    v_b: Vec<Vec<f64>>,
    t: i32,
}

const BETA1: f64 = 0.9;
const BETA2: f64 = 0.999;
const ADAM_EPS: f64 = 1e-8;

impl Adam {
    fn new(model: &MlpModel) -> Self {
        Adam {
            m_w: model.layers.iter().map(|l| vec![0.0; l.w.len()]).collect(),
            v_w: model.layers.iter().map(|l| vec![0.0; l.w.len()]).collect(),
            m_b: model.layers.iter().map(|l| vec![0.0; l.b.len()]).collect(),
            v_b: model.layers.iter().map(|l| vec![0.0; l.b.len()]).collect(),
            t: 0,
        }
    }

    fn step(&mut self, model: &mut MlpModel, grad_w: &[Vec<f64>], grad_b: &[Vec<f64>], lr: f64) {
        self.t += 1;
        let bc1 = 1.0 - BETA1.powi(self.t);
        let bc2 = 1.0 - BETA2.powi(self.t);
        for (l, layer) in model.layers.iter_mut().enumerate() {
            for (i, g) in grad_w[l].iter().enumerate() {
                let m = &mut self.m_w[l][i];
                let v = &mut self.v_w[l][i];
                *m = BETA1 * *m + (1.0 - BETA1) * g;
                *v = BETA2 * *v + (1.0 - BETA2) * g * g;
                layer.w[i] -= lr * (*m / bc1) / ((*v / bc2).sqrt() + ADAM_EPS);
            }
            for (i, g) in grad_b[l].iter().enumerate() {
                let m = &mut self.m_b[l][i];
                let v = &mut self.v_b[l][i];
                *m = BETA1 * *m + (1.0 - BETA1) * g;
                *v = BETA2 * *v + (1.0 - BETA2) * g * g;
                layer.b[i] -= lr * (*m / bc1) / ((*v / bc2).sqrt() + ADAM_EPS);
            }
        }
    }
}

/// Trains a network on (x, y). Features are expected standardized by
/// the caller. `widths` are the five hidden sizes.
pub fn fit_mlp(
    x: &[Vec<f64>],
    y: &[Vec<f64>],
    widths: &[usize],
    params: MlpParams,
    seed: u64,
) -> Result<MlpModel> {
    if x.is_empty() {
        return Err(Error::invalid_argument("x", "no training rows"));
    }
    let n_targets = y[0].len();
    let mut model = MlpModel::init(x[0].len(), widths, n_targets, seed);
    let mut adam = Adam::new(&model);
    let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(0x5eed));

    let n = x.len();
    let mut order: Vec<usize> = (0..n).collect();
    for epoch in 0..params.epochs {
        order.shuffle(&mut rng);
        for (batch_idx, chunk) in order.chunks(params.batch_size.max(1)).enumerate() {
            let xs: Vec<&[f64]> = chunk.iter().map(|&i| x[i].as_slice()).collect();
            let ys: Vec<&[f64]> = chunk.iter().map(|&i| y[i].as_slice()).collect();
            let masks;
            let dropout = if params.dropout > 0.0 {
                let keep = 1.0 - params.dropout;
                masks = xs
                    .iter()
                    .map(|_| {
                        model
                            .widths
                            .iter()
                            .map(|&w| {
                                (0..w)
                                    .map(|_| {
                                        if rng.random::<f64>() < keep { 1.0 / keep } else { 0.0 }
                                    })
                                    .collect::<Vec<f64>>()
                            })
                            .collect::<Vec<Vec<f64>>>()
                    })
                    .collect::<Vec<_>>();
                Some((masks.as_slice(), params.dropout))
            } else {
                None
            };
            let (loss, grad_w, grad_b) = model.batch_gradients(&xs, &ys, dropout);
            if !loss.is_finite() {
                return Err(Error::NonFiniteLoss {
                    epoch,
                    batch: batch_idx,
                });
            }
            adam.step(&mut model, &grad_w, &grad_b, params.learning_rate);
        }
    }
    Ok(model)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn toy_data(n: usize, f: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..f).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let y: Vec<Vec<f64>> = x.iter().map(|row| vec![2.0 * row[0] + 1.0]).collect();
        (x, y)
    }

    #[test]
    fn zero_epochs_returns_the_initialized_network() {
        let (x, y) = toy_data(20, 4, 1);
        let params = MlpParams {
            epochs: 0,
            ..MlpParams::default()
        };
        let trained = fit_mlp(&x, &y, &STR_WIDTHS, params, 33).unwrap();
        let fresh = MlpModel::init(4, &STR_WIDTHS, 1, 33);
        assert_eq!(trained.predict(&x[0]).unwrap(), fresh.predict(&x[0]).unwrap());
    }

    #[test]
    fn linear_target_is_learned() {
        let (x, y) = toy_data(200, 4, 2);
        let model = fit_mlp(&x, &y, &STR_WIDTHS, MlpParams::default(), 7).unwrap();
        let xs: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
        let ys: Vec<&[f64]> = y.iter().map(Vec::as_slice).collect();
        let mse = model.batch_loss(&xs, &ys);
        assert!(mse < 1e-2, "training mse {mse}");
    }

    #[test]
    fn analytic_gradients_match_finite_differences() {
        let (x, y) = toy_data(8, 5, 3);
        let model = MlpModel::init(5, &STR_WIDTHS, 1, 11);
        let xs: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
        let ys: Vec<&[f64]> = y.iter().map(Vec::as_slice).collect();
        let (_, grad_w, grad_b) = model.batch_gradients(&xs, &ys, None);

        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let h = 1e-6;
        for _ in 0..20 {
            let layer = rng.random_range(0..model.layers.len());
            let in_weights = rng.random::<f64>() < 0.8;
            let (analytic, probe_len) = if in_weights {
                (
                    &grad_w[layer],
                    model.layers[layer].w.len(),
                )
            } else {
                (&grad_b[layer], model.layers[layer].b.len())
            };
            let idx = rng.random_range(0..probe_len);

            let mut plus = model.clone();
            let mut minus = model.clone();
            if in_weights {
                plus.layers[layer].w[idx] += h;
                minus.layers[layer].w[idx] -= h;
            } else {
                plus.layers[layer].b[idx] += h;
                minus.layers[layer].b[idx] -= h;
            }
            let numeric = (plus.batch_loss(&xs, &ys) - minus.batch_loss(&xs, &ys)) / (2.0 * h);
            let a = analytic[idx];
            let rel = (a - numeric).abs() / a.abs().max(numeric.abs()).max(1e-6);
            assert!(rel < 1e-4, "layer {layer} idx {idx}: {a} vs {numeric}");
        }
    }

    #[test]
    fn str_param_count_is_logged_shape() {
        // with the paper's 99 inputs the STR stand-in has a definite count
        let model = MlpModel::init(99, &STR_WIDTHS, 1, 1);
        let by_hand = (99 * 24 + 24)
            + (24 * 16 + 16)
            + (16 * 16 + 16)
            + ((16 + 16) * 12 + 12)
            + (12 * 8 + 8)
            + (8 + 1);
        assert_eq!(model.param_count(), by_hand);
    }

    #[test]
    fn non_finite_input_aborts_with_location() {
        let (mut x, y) = toy_data(20, 3, 5);
        x[7][1] = f64::NAN;
        let err = fit_mlp(&x, &y, &STR_WIDTHS, MlpParams::default(), 1).unwrap_err();
        assert!(matches!(err, Error::NonFiniteLoss { .. }), "{err}");
    }

    #[test]
    fn dropout_training_stays_finite() {
        let (x, y) = toy_data(50, 4, 6);
        let params = MlpParams {
            epochs: 5,
            dropout: 0.2,
            ..MlpParams::default()
        };
        let model = fit_mlp(&x, &y, &STR_WIDTHS, params, 2).unwrap();
        assert!(model.predict(&x[0]).unwrap()[0].is_finite());
    }
}
