//! Sampling-based Shapley estimation for arbitrary predictors: value a
//! coalition by averaging the model over background rows with the
//! complement features replaced, weight coalitions by the Shapley
//! kernel, and solve the weighted least squares under the constraint
//! that attributions sum to `f(x) - base`. Small feature spaces whose
//! full coalition lattice fits the budget are enumerated exactly, which
//! makes the estimate the exact Shapley value of the masked game.

use nalgebra::{DMatrix, DVector};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result};

const RIDGE: f64 = 1e-10;

#[derive(Debug, Clone)]
pub struct KernelShapResult {
    /// F x T attribution matrix.
    pub phi: Vec<Vec<f64>>,
    /// Expected prediction over the background, per target.
    pub base: Vec<f64>,
    /// Whether the regression needed a ridge to become solvable.
    pub ridged: bool,
}

fn binomial(n: usize, k: usize) -> f64 {
    let mut acc = 1.0;
    for i in 0..k {
        acc *= (n - i) as f64 / (i + 1) as f64;
    }
    acc
}

struct CoalitionSet {
    masks: Vec<u64>,
    weights: Vec<f64>,
}

/// shap-style allocation: enumerate subset sizes fully (smallest first,
/// pairing s with F-s) while the budget covers them, then spend the
/// rest on seeded size-weighted random coalitions.
fn build_coalitions(n_features: usize, budget: usize, rng: &mut ChaCha8Rng) -> CoalitionSet {
    let m = n_features;
    // sizes 1..=floor((M-1)/2) come paired with their complement
    let num_subset_sizes = ((m as f64 - 1.0) / 2.0).ceil() as usize;
    let num_paired = (m - 1) / 2;

    let mut weight_vector: Vec<f64> = (1..=num_subset_sizes)
        .map(|s| (m as f64 - 1.0) / (s as f64 * (m - s) as f64))
        .collect();
    for w in weight_vector.iter_mut().take(num_paired) {
        *w *= 2.0;
    }
    let total: f64 = weight_vector.iter().sum();
    for w in weight_vector.iter_mut() {
        *w /= total;
    }

    let mut masks: Vec<u64> = Vec::with_capacity(budget);
    let mut weights: Vec<f64> = Vec::with_capacity(budget);
    let mut remaining_weight = weight_vector.clone();
    let mut num_full_subsets = 0usize;
    let mut samples_left = budget as f64;

    for s in 1..=num_subset_sizes {
        let mut nsubsets = binomial(m, s);
        if s <= num_paired {
            nsubsets *= 2.0;
        }
        if samples_left * remaining_weight[s - 1] / nsubsets < 1.0 - 1e-8 {
            break;
        }
        num_full_subsets += 1;
        samples_left -= nsubsets;
        if remaining_weight[s - 1] < 1.0 {
            let renorm = 1.0 - remaining_weight[s - 1];
            for w in remaining_weight.iter_mut() {
                *w /= renorm;
            }
        }
        let mut w = weight_vector[s - 1] / binomial(m, s);
        if s <= num_paired {
            w /= 2.0;
        }
        enumerate_size(m, s, &mut |mask| {
            masks.push(mask);
            weights.push(w);
            if s <= num_paired {
                masks.push(!mask & ((1u64 << m) - 1));
                weights.push(w);
            }
        });
    }

    let fixed = masks.len();
    if num_full_subsets < num_subset_sizes && samples_left >= 1.0 {
        // distribution over the non-enumerated sizes
        let mut size_weights = weight_vector[num_full_subsets..].to_vec();
        for (i, w) in size_weights.iter_mut().enumerate() {
            let s = num_full_subsets + i + 1;
            if s <= num_paired {
                *w /= 2.0; // both sides get emitted when sampled
            }
        }
        let total: f64 = size_weights.iter().sum();
        for w in size_weights.iter_mut() {
            *w /= total;
        }
        let mut remaining = samples_left as usize;
        while remaining > 0 {
            let mut pick = rng.random::<f64>();
            let mut s = num_full_subsets + 1;
            for (i, w) in size_weights.iter().enumerate() {
                if pick < *w || i == size_weights.len() - 1 {
                    s = num_full_subsets + i + 1;
                    break;
                }
                pick -= w;
            }
            let mut mask = 0u64;
            for idx in sample(rng, m, s) {
                mask |= 1 << idx;
            }
            masks.push(mask);
            weights.push(1.0);
            remaining -= 1;
            if remaining > 0 && s <= num_paired {
                masks.push(!mask & ((1u64 << m) - 1));
                weights.push(1.0);
                remaining -= 1;
            }
        }
        // scale the sampled block to carry the non-enumerated kernel mass
        let weight_left: f64 = weight_vector[num_full_subsets..].iter().sum();
        let sampled_total: f64 = weights[fixed..].iter().sum();
        if sampled_total > 0.0 {
            for w in weights[fixed..].iter_mut() {
                *w *= weight_left / sampled_total;
            }
        }
    }

    CoalitionSet { masks, weights }
}

fn enumerate_size(m: usize, s: usize, emit: &mut impl FnMut(u64)) {
    fn rec(m: usize, s: usize, start: usize, mask: u64, emit: &mut impl FnMut(u64)) {
        if s == 0 {
            emit(mask);
            return;
        }
        for i in start..=(m - s) {
            rec(m, s - 1, i + 1, mask | (1 << i), emit);
        }
    }
    rec(m, s, 0, 0, emit);
}

/// Mean prediction over the background with the masked-off features of
/// `x` replaced per background row.
fn coalition_value(
    predict: &mut dyn FnMut(&[f64]) -> Result<Vec<f64>>,
    background: &[Vec<f64>],
    x: &[f64],
    mask: u64,
    n_targets: usize,
) -> Result<Vec<f64>> {
    let mut acc = vec![0.0; n_targets];
    let mut blend = vec![0.0; x.len()];
    for row in background {
        for j in 0..x.len() {
            blend[j] = if mask & (1 << j) != 0 { x[j] } else { row[j] };
        }
        let out = predict(&blend)?;
        for (a, v) in acc.iter_mut().zip(out) {
            *a += v;
        }
    }
    let b = background.len() as f64;
    Ok(acc.into_iter().map(|v| v / b).collect())
}

pub fn kernel_shap(
    predict: &mut dyn FnMut(&[f64]) -> Result<Vec<f64>>,
    background: &[Vec<f64>],
    x: &[f64],
    n_coalitions: usize,
    seed: u64,
) -> Result<KernelShapResult> {
    let m = x.len();
    if background.is_empty() {
        return Err(Error::invalid_argument("background", "need at least one row"));
    }
    if m == 0 || m > 63 {
        return Err(Error::invalid_argument("x", "need 1..=63 features"));
    }
    if n_coalitions < 2 * m + 2 {
        return Err(Error::invalid_argument(
            "n_coalitions",
            format!("need at least 2F + 2 = {}", 2 * m + 2),
        ));
    }

    let fx = predict(x)?;
    let n_targets = fx.len();
    let base = coalition_value(predict, background, x, 0, n_targets)?;

    if m == 1 {
        let phi = vec![fx.iter().zip(&base).map(|(f, b)| f - b).collect()];
        return Ok(KernelShapResult {
            phi,
            base,
            ridged: false,
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let set = build_coalitions(m, n_coalitions - 2, &mut rng);

    let values: Vec<Vec<f64>> = set
        .masks
        .iter()
        .map(|&mask| coalition_value(predict, background, x, mask, n_targets))
        .collect::<Result<_>>()?;

    // WLS with the efficiency constraint folded in by eliminating the
    // last feature: columns are z_j - z_last, the response subtracts
    // z_last * (f(x) - base).
    let rows = set.masks.len();
    let cols = m - 1;
    let mut a = DMatrix::zeros(rows, cols);
    for (r, &mask) in set.masks.iter().enumerate() {
        let z_last = ((mask >> (m - 1)) & 1) as f64;
        for j in 0..cols {
            let z_j = ((mask >> j) & 1) as f64;
            a[(r, j)] = z_j - z_last;
        }
    }
    let w = DVector::from_vec(set.weights.clone());
    let mut atwa = DMatrix::zeros(cols, cols);
    for r in 0..rows {
        let row = a.row(r);
        for i in 0..cols {
            let wi = w[r] * row[i];
            if wi == 0.0 {
                continue;
            }
            for j in 0..cols {
                atwa[(i, j)] += wi * row[j];
            }
        }
    }

    let mut ridged = false;
    let chol = match atwa.clone().cholesky() {
        Some(c) => c,
        None => {
            ridged = true;
            let mut bump = RIDGE;
            loop {
                let mut regularized = atwa.clone();
                for i in 0..cols {
                    regularized[(i, i)] += bump;
                }
                if let Some(c) = regularized.cholesky() {
                    break c;
                }
                bump *= 10.0;
            }
        }
    };
    finish_solve(chol, &a, &w, &set, &values, &fx, &base, m, ridged)
}

#[allow(clippy::too_many_arguments)]
fn finish_solve(
    chol: nalgebra::Cholesky<f64, nalgebra::Dyn>,
    a: &DMatrix<f64>,
    w: &DVector<f64>,
    set: &CoalitionSet,
    values: &[Vec<f64>],
    fx: &[f64],
    base: &[f64],
    m: usize,
    ridged: bool,
) -> Result<KernelShapResult> {
    let cols = m - 1;
    let rows = set.masks.len();
    let n_targets = fx.len();
    let mut phi = vec![vec![0.0; n_targets]; m];
    for t in 0..n_targets {
        let gap = fx[t] - base[t];
        let mut atwy = DVector::zeros(cols);
        for r in 0..rows {
            let z_last = ((set.masks[r] >> (m - 1)) & 1) as f64;
            let y_adj = values[r][t] - base[t] - z_last * gap;
            let wy = w[r] * y_adj;
            if wy == 0.0 {
                continue;
            }
            for j in 0..cols {
                atwy[j] += wy * a[(r, j)];
            }
        }
        let beta = chol.solve(&atwy);
        let beta_sum: f64 = beta.iter().sum();
        for j in 0..cols {
            phi[j][t] = beta[j];
        }
        phi[m - 1][t] = gap - beta_sum;
    }
    Ok(KernelShapResult {
        phi,
        base: base.to_vec(),
        ridged,
    })
}
