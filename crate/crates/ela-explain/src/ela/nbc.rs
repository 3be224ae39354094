//! Nearest-better-clustering features: each point's distance to its
//! nearest neighbor versus its nearest strictly better point.

use indexmap::IndexMap;

use crate::sampling::DesignSample;
use crate::stats::{euclidean, mean, pearson, sample_sd};
use crate::{Error, Result};

fn guarded_ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        if num == 0.0 {
            1.0
        } else {
            f64::MAX
        }
    } else {
        num / den
    }
}

/// `j` beats `i` when its value is smaller; exact ties go to the lower
/// index, which leaves exactly one point (the best) with no better one.
fn is_better(y: &[f64], j: usize, i: usize) -> bool {
    y[j] < y[i] || (y[j] == y[i] && j < i)
}

pub fn compute_nbc(s: &DesignSample) -> Result<IndexMap<String, f64>> {
    let n = s.len();
    if n < 3 {
        return Err(Error::invalid_argument("sample", "nbc needs n >= 3"));
    }

    let mut nn = vec![f64::INFINITY; n];
    let mut nb = vec![f64::INFINITY; n];
    let mut best_index = 0;
    for i in 0..n {
        if is_better(&s.y, i, best_index) {
            best_index = i;
        }
    }
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let d = euclidean(&s.x[i], &s.x[j]);
            if d < nn[i] {
                nn[i] = d;
            }
            if is_better(&s.y, j, i) && d < nb[i] {
                nb[i] = d;
            }
        }
    }
    // The best point has no better one; by convention it takes its
    // largest distance to any other point.
    let far = (0..n)
        .filter(|&j| j != best_index)
        .map(|j| euclidean(&s.x[best_index], &s.x[j]))
        .fold(0.0, f64::max);
    nb[best_index] = far;

    let tied = (0..n)
        .filter(|&i| (0..n).any(|j| j != i && s.y[j] == s.y[i]))
        .count();
    let tie_flag = tied as f64 / n as f64 > 0.10;

    let ratios: Vec<f64> = (0..n).map(|i| guarded_ratio(nb[i], nn[i])).collect();
    let ratio_mean = mean(&ratios);
    let coeff_var = guarded_ratio(sample_sd(&ratios), ratio_mean);

    let mut out = IndexMap::new();
    out.insert(
        "nbc.nn_nb.sd_ratio".into(),
        guarded_ratio(sample_sd(&nn), sample_sd(&nb)),
    );
    out.insert(
        "nbc.nn_nb.mean_ratio".into(),
        guarded_ratio(mean(&nn), mean(&nb)),
    );
    out.insert("nbc.nn_nb.cor".into(), pearson(&nn, &nb));
    out.insert("nbc.dist_ratio.coeff_var".into(), coeff_var);
    out.insert("nbc.nb_fitness.cor".into(), pearson(&nb, &s.y));
    out.insert("nbc.flag_ties".into(), if tie_flag { 1.0 } else { 0.0 });
    Ok(out)
}
