//! Coalitional games over feature subsets and the exponential-time
//! Shapley evaluation used as the validation oracle for the fast paths.

use crate::models::{Node, TreeModel};
use crate::{Error, Result};

pub const BRUTE_FORCE_MAX_FEATURES: usize = 20;

/// Conditional expectation of a tree under a feature mask: splits on
/// masked-off features recurse into both children weighted by their
/// training coverage; splits on masked-in features follow `x`.
pub fn tree_conditional_expectation(tree: &TreeModel, x: &[f64], mask: u64) -> Vec<f64> {
    fn walk(tree: &TreeModel, x: &[f64], mask: u64, node: usize, weight: f64, acc: &mut [f64]) {
        match &tree.nodes[node] {
            Node::Leaf { prediction, .. } => {
                for (a, v) in acc.iter_mut().zip(prediction) {
                    *a += weight * v;
                }
            }
            Node::Internal {
                feature,
                threshold,
                left,
                right,
                coverage,
            } => {
                if mask & (1 << *feature) != 0 {
                    let next = if x[*feature] <= *threshold { *left } else { *right };
                    walk(tree, x, mask, next, weight, acc);
                } else {
                    let l_cov = tree.nodes[*left].coverage() as f64;
                    let r_cov = tree.nodes[*right].coverage() as f64;
                    let total = *coverage as f64;
                    walk(tree, x, mask, *left, weight * l_cov / total, acc);
                    walk(tree, x, mask, *right, weight * r_cov / total, acc);
                }
            }
        }
    }
    let mut acc = vec![0.0; tree.n_targets];
    walk(tree, x, mask, 0, 1.0, &mut acc);
    acc
}

/// Shapley values of an arbitrary vector-valued game by direct subset
/// enumeration: phi_f = sum over S not containing f of
/// |S|! (F-|S|-1)! / F! * (v(S+f) - v(S)).
pub fn shapley_by_enumeration(
    n_features: usize,
    n_targets: usize,
    mut game: impl FnMut(u64) -> Vec<f64>,
) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if n_features > BRUTE_FORCE_MAX_FEATURES {
        return Err(Error::invalid_argument(
            "n_features",
            format!("brute force refuses F > {BRUTE_FORCE_MAX_FEATURES}"),
        ));
    }
    let full: u64 = (1u64 << n_features) - 1;
    let values: Vec<Vec<f64>> = (0..=full).map(&mut game).collect();

    // weight(s) = s! (F-s-1)! / F! = 1 / (F * C(F-1, s))
    let f = n_features as f64;
    let mut choose = vec![1.0_f64; n_features];
    for s in 1..n_features {
        choose[s] = choose[s - 1] * (f - s as f64) / s as f64;
    }
    let weight: Vec<f64> = choose.iter().map(|c| 1.0 / (f * c)).collect();

    let mut phi = vec![vec![0.0; n_targets]; n_features];
    for feature in 0..n_features {
        let bit = 1u64 << feature;
        for subset in 0..=full {
            if subset & bit != 0 {
                continue;
            }
            let s = subset.count_ones() as usize;
            let with = &values[(subset | bit) as usize];
            let without = &values[subset as usize];
            for t in 0..n_targets {
                phi[feature][t] += weight[s] * (with[t] - without[t]);
            }
        }
    }
    Ok((phi, values[0].clone()))
}

/// Brute-force Shapley values of the tree's path-dependent game; the
/// oracle the fast tree computation is validated against.
pub fn brute_force_shap(tree: &TreeModel, x: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if x.len() != tree.n_features {
        return Err(Error::SchemaMismatch {
            reason: format!("expected {} features, got {}", tree.n_features, x.len()),
        });
    }
    shapley_by_enumeration(tree.n_features, tree.n_targets, |mask| {
        tree_conditional_expectation(tree, x, mask)
    })
}
