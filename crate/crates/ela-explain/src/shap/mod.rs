//! Shapley-value explanations: exact path-dependent values for trees
//! and forests, a subset-enumeration oracle for validation, and
//! sampling-based KernelSHAP for the network. Every explanation
//! satisfies local accuracy: base + sum of attributions equals the
//! model prediction.

pub mod game;
pub mod kernel;
pub mod tree_path;

use std::io::Write;
use std::path::Path;

use crate::cv::TrainedModel;
use crate::models::{ForestModel, ModelKind};
use crate::problems::ProblemInstance;
use crate::{Error, Result};

pub use game::{brute_force_shap, shapley_by_enumeration, tree_conditional_expectation};
pub use kernel::{kernel_shap, KernelShapResult};
pub use tree_path::{tree_base_value, tree_shap};

/// Shapley attributions of a forest: the mean of the member trees'
/// attributions and bases (Shapley values are linear in the game and
/// the forest prediction is the mean of its trees).
pub fn forest_shap(forest: &ForestModel, x: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    let mut phi = vec![vec![0.0; forest.n_targets]; forest.n_features];
    let mut base = vec![0.0; forest.n_targets];
    for tree in &forest.trees {
        let (tree_phi, tree_base) = tree_shap(tree, x)?;
        for f in 0..forest.n_features {
            for t in 0..forest.n_targets {
                phi[f][t] += tree_phi[f][t];
            }
        }
        for t in 0..forest.n_targets {
            base[t] += tree_base[t];
        }
    }
    let k = forest.trees.len() as f64;
    for row in phi.iter_mut() {
        for v in row.iter_mut() {
            *v /= k;
        }
    }
    for v in base.iter_mut() {
        *v /= k;
    }
    Ok((phi, base))
}

/// Options for the sampled (KernelSHAP) path.
#[derive(Debug, Clone)]
pub struct ExplainOptions {
    /// Background rows are subsampled to at most this many (seeded).
    pub background_cap: usize,
    /// Total coalitions including the empty and full sets; 0 means the
    /// default 2F + 2048.
    pub n_coalitions: usize,
    pub seed: u64,
}

impl Default for ExplainOptions {
    fn default() -> Self {
        ExplainOptions {
            background_cap: 100,
            n_coalitions: 0,
            seed: 0,
        }
    }
}

/// Explanation of a model over a dataset: per-row Shapley values plus
/// the shared base value.
#[derive(Debug, Clone)]
pub struct Explanation {
    pub model_id: String,
    pub dataset_id: String,
    pub feature_names: Vec<String>,
    pub instances: Vec<ProblemInstance>,
    /// Raw feature values per explained row (for the beeswarm export).
    pub feature_values: Vec<Vec<f64>>,
    /// n × F × T attributions.
    pub shap: Vec<Vec<Vec<f64>>>,
    /// Per-target expected output over the reference distribution.
    pub base: Vec<f64>,
}

impl Explanation {
    pub fn n_targets(&self) -> usize {
        self.base.len()
    }
}

/// Explains every row with the family-appropriate method: exact
/// tree-path values for trees and forests, KernelSHAP against a
/// background for the network (the background is the training-fold
/// matrix, subsampled under `opts.background_cap`).
pub fn explain_dataset(
    model: &TrainedModel,
    rows: &[Vec<f64>],
    instances: &[ProblemInstance],
    background: &[Vec<f64>],
    dataset_id: &str,
    opts: &ExplainOptions,
) -> Result<Explanation> {
    if rows.len() != instances.len() {
        return Err(Error::invalid_argument(
            "instances",
            format!("{} labels for {} rows", instances.len(), rows.len()),
        ));
    }
    let n_features = model.feature_names.len();
    let per_row: Vec<Result<(Vec<Vec<f64>>, Vec<f64>)>> = match &model.model {
        ModelKind::Tree(tree) => crate::exec::map_indexed(rows, |_, row| tree_shap(tree, row)),
        ModelKind::Forest(forest) => {
            crate::exec::map_indexed(rows, |_, row| forest_shap(forest, row))
        }
        ModelKind::Mlp(_) => {
            let bg = subsample_background(background, opts.background_cap, opts.seed);
            if bg.is_empty() {
                return Err(Error::invalid_argument(
                    "background",
                    "sampled path needs a non-empty background",
                ));
            }
            let n_coalitions = if opts.n_coalitions == 0 {
                2 * n_features + 2048
            } else {
                opts.n_coalitions
            };
            crate::exec::map_indexed(rows, |i, row| {
                let mut predict = |x: &[f64]| model.predict(x);
                let result = kernel_shap(
                    &mut predict,
                    &bg,
                    row,
                    n_coalitions,
                    opts.seed.wrapping_add(i as u64),
                )?;
                Ok((result.phi, result.base))
            })
        }
    };

    let mut shap = Vec::with_capacity(rows.len());
    let mut base: Option<Vec<f64>> = None;
    for item in per_row {
        let (phi, b) = item?;
        if base.is_none() {
            base = Some(b);
        }
        shap.push(phi);
    }
    Ok(Explanation {
        model_id: format!("{}_fold{}", model.spec.id(), model.fold),
        dataset_id: dataset_id.to_string(),
        feature_names: model.feature_names.clone(),
        instances: instances.to_vec(),
        feature_values: rows.to_vec(),
        shap,
        base: base.unwrap_or_default(),
    })
}

/// Seeded deterministic subsample (first `cap` indices of a seeded
/// shuffle), order-stable for reproducibility.
fn subsample_background(background: &[Vec<f64>], cap: usize, seed: u64) -> Vec<Vec<f64>> {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    if background.len() <= cap {
        return background.to_vec();
    }
    let mut idx: Vec<usize> = (0..background.len()).collect();
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    idx.shuffle(&mut rng);
    idx.truncate(cap);
    idx.sort_unstable();
    idx.into_iter().map(|i| background[i].clone()).collect()
}

/// Long-form explanation export: one row per (instance, feature,
/// target), the data behind beeswarm-style summary plots.
pub fn write_explanation_csv(path: &Path, e: &Explanation) -> Result<()> {
    let mut out = String::from(
        "instance_id,feature,target,feature_value,shap_value,base_value\n",
    );
    for (i, inst) in e.instances.iter().enumerate() {
        for (f, name) in e.feature_names.iter().enumerate() {
            for t in 0..e.n_targets() {
                out.push_str(&format!(
                    "{}_{},{},{},{},{},{}\n",
                    inst.fid,
                    inst.iid,
                    name,
                    t,
                    e.feature_values[i][f],
                    e.shap[i][f][t],
                    e.base[t]
                ));
            }
        }
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}
