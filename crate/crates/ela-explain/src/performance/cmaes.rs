//! Baseline (mu/mu_w, lambda) CMA-ES with cumulative step-size
//! adaptation, used to produce the regression targets under a fixed
//! evaluation budget. Strategy constants follow the standard tutorial
//! defaults; no restarts, no elitism, no bound handling (the benchmark
//! functions are globally bounded below by their optimum).

use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::problems::Objective;
use crate::{Error, Result};

/// One generation of the run log (`--trace` output).
#[derive(Debug, Clone, Serialize)]
pub struct GenerationLog {
    pub generation: usize,
    pub evaluations: u64,
    pub best_precision: f64,
}

pub fn default_lambda(dim: usize) -> usize {
    4 + (3.0 * (dim as f64).ln()).floor() as usize
}

struct Constants {
    lambda: usize,
    mu: usize,
    weights: Vec<f64>,
    mu_eff: f64,
    c_sigma: f64,
    d_sigma: f64,
    c_c: f64,
    c_1: f64,
    c_mu: f64,
    chi_n: f64,
}

impl Constants {
    fn new(dim: usize) -> Self {
        let d = dim as f64;
        let lambda = default_lambda(dim);
        let mu = lambda / 2;
        let raw: Vec<f64> = (1..=mu)
            .map(|i| (mu as f64 + 0.5).ln() - (i as f64).ln())
            .collect();
        let sum: f64 = raw.iter().sum();
        let weights: Vec<f64> = raw.iter().map(|w| w / sum).collect();
        let mu_eff = 1.0 / weights.iter().map(|w| w * w).sum::<f64>();

        let c_sigma = (mu_eff + 2.0) / (d + mu_eff + 5.0);
        let d_sigma = 1.0 + 2.0 * (((mu_eff - 1.0) / (d + 1.0)).sqrt() - 1.0).max(0.0) + c_sigma;
        let c_c = (4.0 + mu_eff / d) / (d + 4.0 + 2.0 * mu_eff / d);
        let c_1 = 2.0 / ((d + 1.3) * (d + 1.3) + mu_eff);
        let c_mu = (1.0 - c_1)
            .min(2.0 * (mu_eff - 2.0 + 1.0 / mu_eff) / ((d + 2.0) * (d + 2.0) + mu_eff));
        let chi_n = d.sqrt() * (1.0 - 1.0 / (4.0 * d) + 1.0 / (21.0 * d * d));

        Constants {
            lambda,
            mu,
            weights,
            mu_eff,
            c_sigma,
            d_sigma,
            c_c,
            c_1,
            c_mu,
            chi_n,
        }
    }
}

/// Runs CMA-ES until the evaluator has spent `budget` evaluations (the
/// last generation is truncated to fit) and returns the best reached
/// precision over every evaluated point.
pub fn run_cmaes(ev: &mut impl Objective, budget: u64, seed: u64) -> Result<f64> {
    run_cmaes_traced(ev, budget, seed, None)
}

pub fn run_cmaes_traced(
    ev: &mut impl Objective,
    budget: u64,
    seed: u64,
    mut trace: Option<&mut Vec<GenerationLog>>,
) -> Result<f64> {
    let dim = ev.dim();
    let consts = Constants::new(dim);
    if budget < consts.lambda as u64 {
        return Err(Error::invalid_argument(
            "budget",
            format!("must be >= population size {}", consts.lambda),
        ));
    }

    let (lower, upper) = ev.bounds();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut mean =
        DVector::from_fn(dim, |_, _| rng.random_range(lower..upper));
    let mut sigma = 0.3 * (upper - lower);

    let mut cov: DMatrix<f64> = DMatrix::identity(dim, dim);
    let mut path_sigma: DVector<f64> = DVector::zeros(dim);
    let mut path_c: DVector<f64> = DVector::zeros(dim);

    let mut best_precision = f64::INFINITY;
    let mut spent: u64 = 0;
    let mut generation = 0usize;

    while spent < budget {
        // eigendecomposition of C = B D^2 B^T
        let eigen = nalgebra::SymmetricEigen::new(cov.clone());
        let basis = eigen.eigenvectors.clone();
        let scales: DVector<f64> = eigen.eigenvalues.map(|v| v.max(1e-20).sqrt());
        let inv_sqrt = {
            let inv = DMatrix::from_diagonal(&scales.map(|s| 1.0 / s));
            &basis * inv * basis.transpose()
        };

        let remaining = (budget - spent) as usize;
        let evals_now = remaining.min(consts.lambda);
        let mut offspring: Vec<(f64, DVector<f64>, DVector<f64>)> =
            Vec::with_capacity(evals_now);
        for _ in 0..evals_now {
            let z = DVector::from_fn(dim, |_, _| rng.sample::<f64, _>(StandardNormal));
            let y = &basis * z.component_mul(&scales);
            let x = &mean + sigma * &y;
            let f = ev.evaluate(x.as_slice())?;
            spent += 1;
            let precision = ev.precision(f);
            if precision < best_precision {
                best_precision = precision;
            }
            offspring.push((f, y, x));
        }
        generation += 1;
        if let Some(log) = trace.as_deref_mut() {
            log.push(GenerationLog {
                generation,
                evaluations: spent,
                best_precision,
            });
        }
        if evals_now < consts.lambda {
            break; // truncated last generation: no distribution update
        }

        offspring.sort_by(|a, b| a.0.partial_cmp(&b.0).expect("finite objective"));

        let mut y_w: DVector<f64> = DVector::zeros(dim);
        for (w, (_, y, _)) in consts.weights.iter().zip(&offspring) {
            y_w += *w * y;
        }
        mean += sigma * &y_w;

        path_sigma = (1.0 - consts.c_sigma) * &path_sigma
            + (consts.c_sigma * (2.0 - consts.c_sigma) * consts.mu_eff).sqrt()
                * (&inv_sqrt * &y_w);
        let ps_norm = path_sigma.norm();
        let denom =
            (1.0 - (1.0 - consts.c_sigma).powi(2 * generation as i32)).sqrt() * consts.chi_n;
        let h_sigma = if ps_norm / denom < 1.4 + 2.0 / (dim as f64 + 1.0) {
            1.0
        } else {
            0.0
        };
        path_c = (1.0 - consts.c_c) * &path_c
            + h_sigma * (consts.c_c * (2.0 - consts.c_c) * consts.mu_eff).sqrt() * &y_w;

        let mut rank_mu: DMatrix<f64> = DMatrix::zeros(dim, dim);
        for (w, (_, y, _)) in consts.weights.iter().zip(offspring.iter().take(consts.mu)) {
            rank_mu += *w * (y * y.transpose());
        }
        let delta_h = (1.0 - h_sigma) * consts.c_c * (2.0 - consts.c_c);
        cov = (1.0 - consts.c_1 - consts.c_mu) * &cov
            + consts.c_1 * (&path_c * path_c.transpose() + delta_h * &cov)
            + consts.c_mu * rank_mu;
        // keep C symmetric against drift
        cov = (&cov + cov.transpose()) * 0.5;

        sigma *= ((consts.c_sigma / consts.d_sigma) * (ps_norm / consts.chi_n - 1.0)).exp();
        if !sigma.is_finite() || sigma > 1e12 {
            break; // numeric blow-up guard; budget stays respected
        }
    }

    Ok(best_precision)
}
