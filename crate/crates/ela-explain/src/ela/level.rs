//! Level-set features: cross-validated misclassification error of LDA
//! and QDA classifiers separating below-quantile from above-quantile
//! sample points.

use indexmap::IndexMap;
use nalgebra::{DMatrix, DVector};

use crate::sampling::DesignSample;
use crate::stats::quantile;
use crate::Result;

pub const LEVEL_QUANTILES: [f64; 3] = [0.10, 0.25, 0.50];
const CV_FOLDS: usize = 10;
const RIDGE: f64 = 1e-8;

struct GaussianClass {
    mean: DVector<f64>,
    log_prior: f64,
}

/// Adds `RIDGE * I` (escalating tenfold while needed) until the matrix
/// admits a Cholesky factorization. Returns the factored matrix and
/// whether regularization was applied.
fn regularized_cholesky(mut m: DMatrix<f64>) -> (nalgebra::Cholesky<f64, nalgebra::Dyn>, bool) {
    if let Some(ch) = m.clone().cholesky() {
        return (ch, false);
    }
    let mut ridge = RIDGE;
    loop {
        for i in 0..m.nrows() {
            m[(i, i)] += ridge;
        }
        if let Some(ch) = m.clone().cholesky() {
            return (ch, true);
        }
        ridge *= 10.0;
    }
}

fn class_stats(rows: &[&[f64]]) -> (DVector<f64>, DMatrix<f64>) {
    let d = rows[0].len();
    let n = rows.len();
    let mut mean = DVector::zeros(d);
    for r in rows {
        for j in 0..d {
            mean[j] += r[j];
        }
    }
    mean /= n as f64;
    let mut cov = DMatrix::zeros(d, d);
    for r in rows {
        let diff = DVector::from_column_slice(r) - &mean;
        cov += &diff * diff.transpose();
    }
    if n > 1 {
        cov /= (n - 1) as f64;
    }
    (mean, cov)
}

/// Linear discriminant analysis with a pooled covariance.
fn lda_errors(
    train: &[(&[f64], bool)],
    test: &[(&[f64], bool)],
    regularized: &mut bool,
) -> usize {
    let pos: Vec<&[f64]> = train.iter().filter(|(_, c)| *c).map(|(r, _)| *r).collect();
    let neg: Vec<&[f64]> = train.iter().filter(|(_, c)| !*c).map(|(r, _)| *r).collect();
    if pos.is_empty() || neg.is_empty() {
        let majority = pos.len() >= neg.len();
        return test.iter().filter(|(_, c)| *c != majority).count();
    }
    let (mu_p, cov_p) = class_stats(&pos);
    let (mu_n, cov_n) = class_stats(&neg);
    let n_p = pos.len() as f64;
    let n_n = neg.len() as f64;
    let pooled = (cov_p * (n_p - 1.0) + cov_n * (n_n - 1.0)) / (n_p + n_n - 2.0).max(1.0);
    let (chol, reg) = regularized_cholesky(pooled);
    *regularized |= reg;

    let classes = [
        GaussianClass {
            mean: mu_p,
            log_prior: (n_p / (n_p + n_n)).ln(),
        },
        GaussianClass {
            mean: mu_n,
            log_prior: (n_n / (n_p + n_n)).ln(),
        },
    ];
    let alphas: Vec<DVector<f64>> = classes.iter().map(|c| chol.solve(&c.mean)).collect();

    test.iter()
        .filter(|(row, truth)| {
            let x = DVector::from_column_slice(row);
            let score = |k: usize| {
                alphas[k].dot(&x) - 0.5 * alphas[k].dot(&classes[k].mean) + classes[k].log_prior
            };
            let predicted_positive = score(0) > score(1);
            predicted_positive != *truth
        })
        .count()
}

/// Quadratic discriminant analysis with per-class covariances.
fn qda_errors(
    train: &[(&[f64], bool)],
    test: &[(&[f64], bool)],
    regularized: &mut bool,
) -> usize {
    let pos: Vec<&[f64]> = train.iter().filter(|(_, c)| *c).map(|(r, _)| *r).collect();
    let neg: Vec<&[f64]> = train.iter().filter(|(_, c)| !*c).map(|(r, _)| *r).collect();
    if pos.len() < 2 || neg.len() < 2 {
        let majority = pos.len() >= neg.len();
        return test.iter().filter(|(_, c)| *c != majority).count();
    }
    let total = (pos.len() + neg.len()) as f64;
    let prepared: Vec<_> = [(&pos, true), (&neg, false)]
        .into_iter()
        .map(|(rows, _)| {
            let (mean, cov) = class_stats(rows);
            let (chol, reg) = regularized_cholesky(cov);
            *regularized |= reg;
            let log_det: f64 = 2.0 * chol.l().diagonal().iter().map(|v| v.ln()).sum::<f64>();
            let log_prior = (rows.len() as f64 / total).ln();
            (mean, chol, log_det, log_prior)
        })
        .collect();

    test.iter()
        .filter(|(row, truth)| {
            let x = DVector::from_column_slice(row);
            let score = |k: usize| {
                let (mean, chol, log_det, log_prior) = &prepared[k];
                let diff = &x - mean;
                let solved = chol.solve(&diff);
                -0.5 * log_det - 0.5 * diff.dot(&solved) + log_prior
            };
            let predicted_positive = score(0) > score(1);
            predicted_positive != *truth
        })
        .count()
}

/// Deterministic stratified folds: indices of each class are dealt
/// round-robin in ascending order.
fn stratified_folds(labels: &[bool], folds: usize) -> Vec<usize> {
    let mut assignment = vec![0; labels.len()];
    for class in [true, false] {
        for (k, idx) in labels
            .iter()
            .enumerate()
            .filter(|(_, &c)| c == class)
            .map(|(i, _)| i)
            .enumerate()
        {
            assignment[idx] = k % folds;
        }
    }
    assignment
}

fn quantile_suffix(q: f64) -> String {
    format!("{:02}", (q * 100.0).round() as u32)
}

pub fn compute_ela_level(s: &DesignSample, quantiles: &[f64]) -> Result<IndexMap<String, f64>> {
    let n = s.len();
    let mut out = IndexMap::new();
    let mut regularized = false;
    let mut degenerate = false;

    for &q in quantiles {
        let threshold = quantile(&s.y, q);
        let labels: Vec<bool> = s.y.iter().map(|&v| v < threshold).collect();
        let positives = labels.iter().filter(|&&c| c).count();
        let suffix = quantile_suffix(q);

        let (lda_mmce, qda_mmce) = if positives == 0 || positives == n {
            // no split exists at this quantile; chance-level placeholder
            degenerate = true;
            (0.5, 0.5)
        } else {
            let assignment = stratified_folds(&labels, CV_FOLDS);
            let mut lda_rates = Vec::with_capacity(CV_FOLDS);
            let mut qda_rates = Vec::with_capacity(CV_FOLDS);
            for fold in 0..CV_FOLDS {
                let train: Vec<(&[f64], bool)> = (0..n)
                    .filter(|&i| assignment[i] != fold)
                    .map(|i| (s.x[i].as_slice(), labels[i]))
                    .collect();
                let test: Vec<(&[f64], bool)> = (0..n)
                    .filter(|&i| assignment[i] == fold)
                    .map(|i| (s.x[i].as_slice(), labels[i]))
                    .collect();
                if test.is_empty() {
                    continue;
                }
                lda_rates
                    .push(lda_errors(&train, &test, &mut regularized) as f64 / test.len() as f64);
                qda_rates
                    .push(qda_errors(&train, &test, &mut regularized) as f64 / test.len() as f64);
            }
            (
                crate::stats::mean(&lda_rates),
                crate::stats::mean(&qda_rates),
            )
        };

        out.insert(format!("ela_level.mmce_lda_{suffix}"), lda_mmce);
        out.insert(format!("ela_level.mmce_qda_{suffix}"), qda_mmce);
        let ratio = if qda_mmce == 0.0 {
            if lda_mmce == 0.0 {
                1.0
            } else {
                f64::MAX
            }
        } else {
            lda_mmce / qda_mmce
        };
        out.insert(format!("ela_level.lda_qda_{suffix}"), ratio);
    }
    out.insert(
        "ela_level.flag_degenerate".into(),
        if degenerate || regularized { 1.0 } else { 0.0 },
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn design(n: usize, d: usize, seed: u64) -> Vec<Vec<f64>> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        (0..n)
            .map(|_| (0..d).map(|_| rng.random_range(-5.0..5.0)).collect())
            .collect()
    }

    #[test]
    fn linearly_separable_labels_give_near_zero_lda_error() {
        let x = design(250, 2, 10);
        let y: Vec<f64> = x.iter().map(|row| row[0]).collect();
        let s = DesignSample {
            x,
            y,
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_ela_level(&s, &[0.5]).unwrap();
        // at most one misclassified point per 25-point fold
        assert!(f["ela_level.mmce_lda_50"] <= 1.0 / 25.0 + 1e-12);
    }

    #[test]
    fn coin_flip_labels_sit_near_chance() {
        // Labels independent of X: fake it by shuffling y relative to X.
        let mut rng = ChaCha8Rng::seed_from_u64(99);
        let x = design(250, 2, 11);
        let y: Vec<f64> = (0..250).map(|_| rng.random::<f64>()).collect();
        let s = DesignSample {
            x,
            y,
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_ela_level(&s, &[0.5]).unwrap();
        let mmce = f["ela_level.mmce_lda_50"];
        assert!((0.35..=0.65).contains(&mmce), "mmce {mmce}");
    }

    #[test]
    fn equal_covariance_gaussians_make_qda_close_to_lda() {
        // two spherical Gaussian clusters with equal covariance; label by
        // cluster via the y quantile
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let mut x = Vec::new();
        let mut y = Vec::new();
        for i in 0..200 {
            let lo = i < 100;
            let center = if lo { -2.0 } else { 2.0 };
            let px: f64 = rng.sample::<f64, _>(StandardNormal) + center;
            let py: f64 = rng.sample::<f64, _>(StandardNormal) + center;
            x.push(vec![px, py]);
            y.push(if lo { px - 10.0 } else { px + 10.0 });
        }
        let s = DesignSample {
            x,
            y,
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_ela_level(&s, &[0.5]).unwrap();
        let diff = (f["ela_level.mmce_lda_50"] - f["ela_level.mmce_qda_50"]).abs();
        assert!(diff <= 0.05, "lda/qda gap {diff}");
    }

    #[test]
    fn constant_y_is_degenerate_but_finite() {
        let x = design(100, 2, 3);
        let s = DesignSample {
            x,
            y: vec![1.0; 100],
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_ela_level(&s, &LEVEL_QUANTILES).unwrap();
        assert_eq!(f["ela_level.flag_degenerate"], 1.0);
        assert!(f.values().all(|v| v.is_finite()));
    }
}
