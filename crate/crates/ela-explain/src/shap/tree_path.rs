//! Exact Shapley values for a tree in polynomial time. The recursion
//! keeps, for every root-to-node path, the aggregated proportions of
//! feature subsets flowing down ("one" fractions follow the probe,
//! "zero" fractions follow training coverage); leaf contributions are
//! unwound per path feature. Repeated splits on one feature along a
//! path are merged by unwinding the earlier occurrence first.

use crate::models::{Node, TreeModel};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy)]
struct PathElement {
    feature: isize,
    zero: f64,
    one: f64,
    weight: f64,
}

fn extend(path: &mut Vec<PathElement>, zero: f64, one: f64, feature: isize) {
    let l = path.len();
    path.push(PathElement {
        feature,
        zero,
        one,
        weight: if l == 0 { 1.0 } else { 0.0 },
    });
    for i in (0..l).rev() {
        path[i + 1].weight += one * path[i].weight * (i + 1) as f64 / (l + 1) as f64;
        path[i].weight = zero * path[i].weight * (l - i) as f64 / (l + 1) as f64;
    }
}

fn unwind(path: &mut Vec<PathElement>, index: usize) {
    let depth = path.len() - 1;
    let one = path[index].one;
    let zero = path[index].zero;
    let mut next = path[depth].weight;
    for i in (0..depth).rev() {
        if one != 0.0 {
            let tmp = path[i].weight;
            path[i].weight = next * (depth + 1) as f64 / ((i + 1) as f64 * one);
            next = tmp - path[i].weight * zero * (depth - i) as f64 / (depth + 1) as f64;
        } else {
            path[i].weight =
                path[i].weight * (depth + 1) as f64 / (zero * (depth - i) as f64);
        }
    }
    for i in index..depth {
        path[i].feature = path[i + 1].feature;
        path[i].zero = path[i + 1].zero;
        path[i].one = path[i + 1].one;
    }
    path.pop();
}

/// Total permutation weight that element `index` carries: the sum of
/// the path weights after removing it. Computed by actually unwinding a
/// copy, so it is the exact inverse of `extend` by construction.
fn unwound_sum(path: &[PathElement], index: usize) -> f64 {
    let mut copy = path.to_vec();
    unwind(&mut copy, index);
    copy.iter().map(|el| el.weight).sum()
}

fn recurse(
    tree: &TreeModel,
    x: &[f64],
    phi: &mut [Vec<f64>],
    node: usize,
    mut path: Vec<PathElement>,
    parent_zero: f64,
    parent_one: f64,
    parent_feature: isize,
) {
    extend(&mut path, parent_zero, parent_one, parent_feature);
    match &tree.nodes[node] {
        Node::Leaf { prediction, .. } => {
            for i in 1..path.len() {
                let w = unwound_sum(&path, i);
                let el = path[i];
                let scale = w * (el.one - el.zero);
                for (t, v) in prediction.iter().enumerate() {
                    phi[el.feature as usize][t] += scale * v;
                }
            }
        }
        Node::Internal {
            feature,
            threshold,
            left,
            right,
            coverage,
        } => {
            let (hot, cold) = if x[*feature] <= *threshold {
                (*left, *right)
            } else {
                (*right, *left)
            };
            let total = *coverage as f64;
            let hot_fraction = tree.nodes[hot].coverage() as f64 / total;
            let cold_fraction = tree.nodes[cold].coverage() as f64 / total;

            let mut incoming_zero = 1.0;
            let mut incoming_one = 1.0;
            if let Some(k) = path.iter().position(|el| el.feature == *feature as isize) {
                incoming_zero = path[k].zero;
                incoming_one = path[k].one;
                unwind(&mut path, k);
            }
            recurse(
                tree,
                x,
                phi,
                hot,
                path.clone(),
                hot_fraction * incoming_zero,
                incoming_one,
                *feature as isize,
            );
            recurse(
                tree,
                x,
                phi,
                cold,
                path,
                cold_fraction * incoming_zero,
                0.0,
                *feature as isize,
            );
        }
    }
}

/// Coverage-weighted mean of the leaves: the expected model output over
/// the training distribution, i.e. the game value of the empty set.
pub fn tree_base_value(tree: &TreeModel) -> Vec<f64> {
    fn walk(tree: &TreeModel, node: usize, weight: f64, acc: &mut [f64]) {
        match &tree.nodes[node] {
            Node::Leaf { prediction, .. } => {
                for (a, v) in acc.iter_mut().zip(prediction) {
                    *a += weight * v;
                }
            }
            Node::Internal {
                left,
                right,
                coverage,
                ..
            } => {
                let total = *coverage as f64;
                walk(tree, *left, weight * tree.nodes[*left].coverage() as f64 / total, acc);
                walk(tree, *right, weight * tree.nodes[*right].coverage() as f64 / total, acc);
            }
        }
    }
    let mut acc = vec![0.0; tree.n_targets];
    walk(tree, 0, 1.0, &mut acc);
    acc
}

/// Exact Shapley values (F x T) and base value of the tree's
/// path-dependent game at probe `x`.
pub fn tree_shap(tree: &TreeModel, x: &[f64]) -> Result<(Vec<Vec<f64>>, Vec<f64>)> {
    if x.len() != tree.n_features {
        return Err(Error::SchemaMismatch {
            reason: format!("expected {} features, got {}", tree.n_features, x.len()),
        });
    }
    if tree.nodes.iter().any(|n| n.coverage() == 0) {
        return Err(Error::invalid_argument(
            "tree",
            "every node must carry a positive training coverage",
        ));
    }
    let mut phi = vec![vec![0.0; tree.n_targets]; tree.n_features];
    recurse(tree, x, &mut phi, 0, Vec::new(), 1.0, 1.0, -1);
    Ok((phi, tree_base_value(tree)))
}
