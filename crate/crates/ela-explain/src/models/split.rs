//! The MAE split criterion: thresholds minimize the size-weighted sum
//! over children and targets of absolute deviation from the child
//! median.

use crate::stats::median;
use crate::{Error, Result};

/// Sum of absolute deviations from the median, accumulated in row
/// order. The brute-force oracle in the tests follows the same
/// accumulation order, so equality there is exact.
pub fn sum_abs_dev(values: &[f64]) -> f64 {
    let med = median(values);
    values.iter().map(|v| (v - med).abs()).sum()
}

/// Loss of a node as a leaf: SAD summed over targets.
pub fn node_loss(rows: &[usize], targets: &[Vec<f64>]) -> f64 {
    let n_targets = targets.first().map_or(0, Vec::len);
    (0..n_targets)
        .map(|t| {
            let column: Vec<f64> = rows.iter().map(|&i| targets[i][t]).collect();
            sum_abs_dev(&column)
        })
        .sum()
}

/// Best threshold for one feature over the given rows, or `None` when
/// the feature is constant or no split satisfies `min_leaf` on both
/// sides. Candidate thresholds are the midpoints between consecutive
/// distinct sorted feature values; ties on loss keep the smallest
/// threshold.
pub fn best_mae_split(
    feature_values: &[f64],
    targets: &[Vec<f64>],
    min_leaf: usize,
) -> Result<Option<(f64, f64)>> {
    if feature_values.len() != targets.len() {
        return Err(Error::invalid_argument(
            "feature_values",
            format!(
                "length {} does not match targets length {}",
                feature_values.len(),
                targets.len()
            ),
        ));
    }
    let rows: Vec<usize> = (0..feature_values.len()).collect();
    Ok(best_split_on_rows(&rows, feature_values, targets, min_leaf))
}

/// Split search restricted to a row subset (tree nodes pass their own
/// rows). Row order inside children follows the subset order.
pub fn best_split_on_rows(
    rows: &[usize],
    feature_values: &[f64],
    targets: &[Vec<f64>],
    min_leaf: usize,
) -> Option<(f64, f64)> {
    let n = rows.len();
    if n < 2 * min_leaf.max(1) {
        return None;
    }
    let mut distinct: Vec<f64> = rows.iter().map(|&i| feature_values[i]).collect();
    distinct.sort_by(|a, b| a.partial_cmp(b).expect("finite feature value"));
    distinct.dedup();
    if distinct.len() < 2 {
        return None;
    }

    let n_targets = targets[rows[0]].len();
    let mut best: Option<(f64, f64)> = None;
    for pair in distinct.windows(2) {
        // halves avoid overflow when a sentinel like f64::MAX appears
        let threshold = pair[0] / 2.0 + pair[1] / 2.0;
        let left: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&i| feature_values[i] <= threshold)
            .collect();
        let right: Vec<usize> = rows
            .iter()
            .copied()
            .filter(|&i| feature_values[i] > threshold)
            .collect();
        if left.len() < min_leaf || right.len() < min_leaf {
            continue;
        }
        let mut loss = 0.0;
        for t in 0..n_targets {
            let lv: Vec<f64> = left.iter().map(|&i| targets[i][t]).collect();
            let rv: Vec<f64> = right.iter().map(|&i| targets[i][t]).collect();
            loss += sum_abs_dev(&lv) + sum_abs_dev(&rv);
        }
        if best.as_ref().is_none_or(|(_, b)| loss < *b) {
            best = Some((threshold, loss));
        }
    }
    best
}
