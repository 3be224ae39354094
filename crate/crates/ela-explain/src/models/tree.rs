//! Decision-tree regression with the MAE split criterion and per-target
//! median leaf predictions. Nodes carry training coverage counts, which
//! the Shapley computation consumes as path weights.

use rand::seq::index::sample;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::split::{best_split_on_rows, node_loss};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub enum Node {
    Internal {
        feature: usize,
        threshold: f64,
        left: usize,
        right: usize,
        coverage: usize,
    },
    Leaf {
        prediction: Vec<f64>,
        coverage: usize,
    },
}

impl Node {
    pub fn coverage(&self) -> usize {
        match self {
            Node::Internal { coverage, .. } | Node::Leaf { coverage, .. } => *coverage,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TreeModel {
    pub nodes: Vec<Node>,
    pub n_features: usize,
    pub n_targets: usize,
}

#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct TreeParams {
    pub max_depth: usize,
    pub min_leaf: usize,
}

impl TreeParams {
    pub fn new(max_depth: usize) -> Self {
        TreeParams {
            max_depth,
            min_leaf: 1,
        }
    }
}

struct Builder<'a> {
    x: &'a [Vec<f64>],
    y: &'a [Vec<f64>],
    params: TreeParams,
    /// Number of candidate features per split; `None` means all.
    feature_subsample: Option<usize>,
    rng: Option<&'a mut ChaCha8Rng>,
    feature_cache: Vec<Vec<f64>>,
    nodes: Vec<Node>,
}

impl Builder<'_> {
    fn leaf(&mut self, rows: &[usize]) -> usize {
        let n_targets = self.y[rows[0]].len();
        let prediction: Vec<f64> = (0..n_targets)
            .map(|t| {
                let column: Vec<f64> = rows.iter().map(|&i| self.y[i][t]).collect();
                crate::stats::median(&column)
            })
            .collect();
        self.nodes.push(Node::Leaf {
            prediction,
            coverage: rows.len(),
        });
        self.nodes.len() - 1
    }

    fn candidate_features(&mut self) -> Vec<usize> {
        let total = self.x[0].len();
        match (self.feature_subsample, self.rng.as_deref_mut()) {
            (Some(k), Some(rng)) if k < total => {
                let mut picked: Vec<usize> = sample(rng, total, k).into_iter().collect();
                picked.sort_unstable();
                picked
            }
            _ => (0..total).collect(),
        }
    }

    fn build(&mut self, rows: Vec<usize>, depth: usize) -> usize {
        let can_split = depth < self.params.max_depth
            && rows.len() >= 2 * self.params.min_leaf
            && node_loss(&rows, self.y) > 0.0;
        if !can_split {
            return self.leaf(&rows);
        }

        let mut best: Option<(usize, f64, f64)> = None;
        for f in self.candidate_features() {
            let column = &self.feature_cache[f];
            if let Some((threshold, loss)) =
                best_split_on_rows(&rows, column, self.y, self.params.min_leaf)
            {
                // strict < keeps the lowest feature index on loss ties
                if best.as_ref().is_none_or(|(_, _, b)| loss < *b) {
                    best = Some((f, threshold, loss));
                }
            }
        }
        let Some((feature, threshold, _)) = best else {
            return self.leaf(&rows);
        };

        let left_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&i| self.x[i][feature] <= threshold)
            .collect();
        let right_rows: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&i| self.x[i][feature] > threshold)
            .collect();

        let index = self.nodes.len();
        self.nodes.push(Node::Internal {
            feature,
            threshold,
            left: 0,
            right: 0,
            coverage: rows.len(),
        });
        let left = self.build(left_rows, depth + 1);
        let right = self.build(right_rows, depth + 1);
        if let Node::Internal {
            left: l, right: r, ..
        } = &mut self.nodes[index]
        {
            *l = left;
            *r = right;
        }
        index
    }
}

pub fn fit_decision_tree(x: &[Vec<f64>], y: &[Vec<f64>], params: TreeParams) -> Result<TreeModel> {
    fit_tree_with(x, y, params, None, None)
}

/// Tree fit with optional per-split feature subsampling (used by the
/// forest). Recursion order is fixed (left before right), so the rng
/// draw sequence is deterministic.
pub(crate) fn fit_tree_with(
    x: &[Vec<f64>],
    y: &[Vec<f64>],
    params: TreeParams,
    feature_subsample: Option<usize>,
    rng: Option<&mut ChaCha8Rng>,
) -> Result<TreeModel> {
    if x.is_empty() {
        return Err(Error::invalid_argument("x", "no training rows"));
    }
    if x.len() != y.len() {
        return Err(Error::invalid_argument(
            "y",
            format!("{} target rows for {} feature rows", y.len(), x.len()),
        ));
    }
    let n_features = x[0].len();
    let n_targets = y[0].len();
    // column-major cache so split search reads contiguous values
    let feature_cache: Vec<Vec<f64>> = (0..n_features)
        .map(|f| x.iter().map(|row| row[f]).collect())
        .collect();
    let mut builder = Builder {
        x,
        y,
        params,
        feature_subsample,
        rng,
        feature_cache,
        nodes: Vec::new(),
    };
    builder.build((0..x.len()).collect(), 0);
    Ok(TreeModel {
        nodes: builder.nodes,
        n_features,
        n_targets,
    })
}

impl TreeModel {
    pub fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.n_features {
            return Err(Error::SchemaMismatch {
                reason: format!(
                    "expected {} features, got {}",
                    self.n_features,
                    x.len()
                ),
            });
        }
        let mut node = 0;
        loop {
            match &self.nodes[node] {
                Node::Leaf { prediction, .. } => return Ok(prediction.clone()),
                Node::Internal {
                    feature,
                    threshold,
                    left,
                    right,
                    ..
                } => {
                    node = if x[*feature] <= *threshold { *left } else { *right };
                }
            }
        }
    }

    pub fn depth(&self) -> usize {
        fn walk(nodes: &[Node], i: usize) -> usize {
            match &nodes[i] {
                Node::Leaf { .. } => 0,
                Node::Internal { left, right, .. } => 1 + walk(nodes, *left).max(walk(nodes, *right)),
            }
        }
        walk(&self.nodes, 0)
    }

    pub fn leaf_count(&self) -> usize {
        self.nodes
            .iter()
            .filter(|n| matches!(n, Node::Leaf { .. }))
            .count()
    }
}
