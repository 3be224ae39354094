//! Random-forest regression: bootstrapped MAE trees with per-split
//! feature subsampling; the forest prediction is the per-target mean of
//! its trees.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::tree::{fit_tree_with, TreeModel, TreeParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct ForestParams {
    pub n_estimators: usize,
    pub max_depth: usize,
    pub min_leaf: usize,
    /// Diagnostic switch; disabling it also disables feature
    /// subsampling so a 1-tree forest equals the plain tree.
    pub bootstrap: bool,
}

impl ForestParams {
    pub fn new(n_estimators: usize, max_depth: usize) -> Self {
        ForestParams {
            n_estimators,
            max_depth,
            min_leaf: 1,
            bootstrap: true,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ForestModel {
    pub trees: Vec<TreeModel>,
    pub n_features: usize,
    pub n_targets: usize,
}

pub fn fit_random_forest(
    x: &[Vec<f64>],
    y: &[Vec<f64>],
    params: ForestParams,
    seed: u64,
) -> Result<ForestModel> {
    if x.is_empty() {
        return Err(Error::invalid_argument("x", "no training rows"));
    }
    if params.n_estimators == 0 {
        return Err(Error::invalid_argument("n_estimators", "must be >= 1"));
    }
    let n = x.len();
    let n_features = x[0].len();
    let tree_params = TreeParams {
        max_depth: params.max_depth,
        min_leaf: params.min_leaf,
    };
    let subsample = params
        .bootstrap
        .then(|| n_features.div_ceil(3));

    let trees: Vec<Result<TreeModel>> =
        crate::exec::map_range(params.n_estimators, |k| {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(k as u64));
            if params.bootstrap {
                let indices: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
                let bx: Vec<Vec<f64>> = indices.iter().map(|&i| x[i].clone()).collect();
                let by: Vec<Vec<f64>> = indices.iter().map(|&i| y[i].clone()).collect();
                fit_tree_with(&bx, &by, tree_params, subsample, Some(&mut rng))
            } else {
                fit_tree_with(x, y, tree_params, None, None)
            }
        });
    let trees = trees.into_iter().collect::<Result<Vec<_>>>()?;
    let n_targets = trees[0].n_targets;
    Ok(ForestModel {
        trees,
        n_features,
        n_targets,
    })
}

impl ForestModel {
    pub fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_features {
            return Err(Error::SchemaMismatch {
                reason: format!("expected {} features, got {}", self.n_features, x.len()),
            });
        }
        let mut acc = vec![0.0; self.n_targets];
        for tree in &self.trees {
            for (a, v) in acc.iter_mut().zip(tree.predict(x)?) {
                *a += v;
            }
        }
        let k = self.trees.len() as f64;
        Ok(acc.into_iter().map(|v| v / k).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::models::tree::fit_decision_tree;
    use rand::{Rng, SeedableRng};

    fn random_data(n: usize, f: usize, t: usize, seed: u64) -> (Vec<Vec<f64>>, Vec<Vec<f64>>) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let x: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..f).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        let y: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..t).map(|_| rng.random_range(-1.0..1.0)).collect())
            .collect();
        (x, y)
    }

    #[test]
    fn single_tree_without_bootstrap_equals_plain_tree() {
        let (x, y) = random_data(40, 4, 1, 5);
        let mut params = ForestParams::new(1, 4);
        params.bootstrap = false;
        let forest = fit_random_forest(&x, &y, params, 7).unwrap();
        let tree = fit_decision_tree(&x, &y, TreeParams::new(4)).unwrap();
        for row in &x {
            assert_eq!(forest.predict(row).unwrap(), tree.predict(row).unwrap());
        }
    }

    #[test]
    fn prediction_is_exact_mean_of_member_trees() {
        let (x, y) = random_data(50, 5, 2, 6);
        let forest = fit_random_forest(&x, &y, ForestParams::new(10, 3), 11).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let probe: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
            let pred = forest.predict(&probe).unwrap();
            for t in 0..2 {
                let mean: f64 = forest
                    .trees
                    .iter()
                    .map(|tree| tree.predict(&probe).unwrap()[t])
                    .sum::<f64>()
                    / forest.trees.len() as f64;
                assert!((pred[t] - mean).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn equal_seeds_reproduce_predictions() {
        let (x, y) = random_data(60, 4, 1, 8);
        let a = fit_random_forest(&x, &y, ForestParams::new(5, 4), 42).unwrap();
        let b = fit_random_forest(&x, &y, ForestParams::new(5, 4), 42).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        for _ in 0..20 {
            let probe: Vec<f64> = (0..4).map(|_| rng.random_range(-1.0..1.0)).collect();
            assert_eq!(a.predict(&probe).unwrap(), b.predict(&probe).unwrap());
        }
    }
}
