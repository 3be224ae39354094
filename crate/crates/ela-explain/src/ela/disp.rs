//! Dispersion features: pairwise-distance concentration of the best
//! q-fraction of the sample relative to the whole sample.

use indexmap::IndexMap;

use crate::sampling::DesignSample;
use crate::stats::{euclidean, mean, median};
use crate::{Error, Result};

pub const DISP_QUANTILES: [f64; 4] = [0.02, 0.05, 0.10, 0.25];

fn pairwise_distances(points: &[&[f64]]) -> Vec<f64> {
    let mut out = Vec::with_capacity(points.len() * (points.len() - 1) / 2);
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            out.push(euclidean(points[i], points[j]));
        }
    }
    out
}

/// 0/0 is reported as ratio 1 (coincident points everywhere carry no
/// dispersion signal either way).
fn disp_ratio(sub: f64, full: f64) -> f64 {
    if full == 0.0 {
        1.0
    } else {
        sub / full
    }
}

fn quantile_suffix(q: f64) -> String {
    format!("{:02}", (q * 100.0).round() as u32)
}

pub fn compute_disp(s: &DesignSample, quantiles: &[f64]) -> Result<IndexMap<String, f64>> {
    let n = s.len();
    if n < 2 {
        return Err(Error::invalid_argument("sample", "disp needs n >= 2"));
    }
    // best-first ordering; ties keep sample order
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| s.y[a].partial_cmp(&s.y[b]).expect("finite y"));

    let subset_indices = |k: usize| {
        // subsets are index sets; restoring sample order makes the
        // whole-sample subset reproduce the full statistics exactly
        let mut idx: Vec<usize> = order[..k].to_vec();
        idx.sort_unstable();
        idx
    };

    let all_rows: Vec<&[f64]> = s.x.iter().map(Vec::as_slice).collect();
    let full_dists = pairwise_distances(&all_rows);
    let full_mean = mean(&full_dists);
    let full_median = median(&full_dists);

    let mut out = IndexMap::new();
    for &q in quantiles {
        let k = ((q * n as f64).ceil() as usize).clamp(2, n);
        let subset: Vec<&[f64]> = subset_indices(k)
            .into_iter()
            .map(|i| s.x[i].as_slice())
            .collect();
        let sub_dists = pairwise_distances(&subset);
        let sub_mean = mean(&sub_dists);
        let sub_median = median(&sub_dists);
        let suffix = quantile_suffix(q);
        out.insert(
            format!("disp.ratio_mean_{suffix}"),
            disp_ratio(sub_mean, full_mean),
        );
        out.insert(
            format!("disp.ratio_median_{suffix}"),
            disp_ratio(sub_median, full_median),
        );
        out.insert(format!("disp.diff_mean_{suffix}"), sub_mean - full_mean);
        out.insert(
            format!("disp.diff_median_{suffix}"),
            sub_median - full_median,
        );
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn coincident_points_hit_the_zero_over_zero_rule() {
        let s = DesignSample {
            x: vec![vec![1.0, 1.0]; 10],
            y: (0..10).map(f64::from).map(|v| v as f64).collect(),
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_disp(&s, &DISP_QUANTILES).unwrap();
        assert_eq!(f["disp.ratio_mean_10"], 1.0);
        assert_eq!(f["disp.diff_mean_10"], 0.0);
    }

    #[test]
    fn whole_sample_quantile_gives_exact_unit_ratio() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let x: Vec<Vec<f64>> = (0..40)
            .map(|_| vec![rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)])
            .collect();
        let y: Vec<f64> = x.iter().map(|r| r[0] + r[1]).collect();
        let s = DesignSample {
            x,
            y,
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_disp(&s, &[1.0]).unwrap();
        assert_eq!(f["disp.ratio_mean_100"], 1.0);
        assert_eq!(f["disp.diff_median_100"], 0.0);
    }

    #[test]
    fn clustered_best_points_shrink_the_ratio() {
        // y = distance from a center, so the best 10% huddle around it
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let center = [2.0, -1.0];
        let x: Vec<Vec<f64>> = (0..100)
            .map(|_| vec![rng.random_range(-5.0..5.0), rng.random_range(-5.0..5.0)])
            .collect();
        let y: Vec<f64> = x.iter().map(|r| euclidean(r, &center)).collect();
        let s = DesignSample {
            x: x.clone(),
            y: y.clone(),
            repetition_index: 0,
            seed: 0,
        };
        let f = compute_disp(&s, &[0.10]).unwrap();
        assert!(f["disp.ratio_mean_10"] < 1.0);

        // direct recomputation of the same quantity
        let mut order: Vec<usize> = (0..100).collect();
        order.sort_by(|&a, &b| y[a].partial_cmp(&y[b]).unwrap());
        let best: Vec<&[f64]> = order[..10].iter().map(|&i| x[i].as_slice()).collect();
        let all: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
        let expect = mean(&pairwise_distances(&best)) / mean(&pairwise_distances(&all));
        assert!((f["disp.ratio_mean_10"] - expect).abs() < 1e-12);
    }
}
