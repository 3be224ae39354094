//! Meta-model features: adjusted R² of four least-squares fits (linear,
//! linear with interactions, quadratic, quadratic with interactions)
//! plus summaries of the linear and quadratic coefficients.

use indexmap::IndexMap;
use nalgebra::{DMatrix, DVector};

use crate::sampling::DesignSample;
use crate::{Error, Result};

/// Ratio sentinel when a denominator is exactly zero (largest finite
/// value rather than a missing entry); 0/0 is reported as 1.
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

struct FitOutcome {
    adj_r2: f64,
    coefficients: Vec<f64>,
    rank_deficient: bool,
}

/// Least squares via SVD; rank-deficient systems fall back to the
/// minimum-norm solution implied by the pseudo-inverse.
fn least_squares(design: &DMatrix<f64>, y: &DVector<f64>) -> FitOutcome {
    let n = design.nrows();
    let p = design.ncols();
    let svd = design.clone().svd(true, true);
    let s_max = svd.singular_values.iter().cloned().fold(0.0, f64::max);
    let eps = 1e-10 * s_max.max(1.0);
    let rank = svd.singular_values.iter().filter(|&&s| s > eps).count();
    let beta = svd.solve(y, eps).expect("svd computed with u and v_t");

    let fitted = design * &beta;
    let ss_res: f64 = (y - &fitted).iter().map(|r| r * r).sum();
    let y_mean = y.iter().sum::<f64>() / n as f64;
    let ss_tot: f64 = y.iter().map(|v| (v - y_mean) * (v - y_mean)).sum();
    // Constant responses are reproduced exactly by every model here.
    let r2 = if ss_tot == 0.0 { 1.0 } else { 1.0 - ss_res / ss_tot };
    let adj_r2 = if n > p {
        1.0 - (1.0 - r2) * (n - 1) as f64 / (n - p) as f64
    } else {
        r2
    };
    FitOutcome {
        adj_r2,
        coefficients: beta.iter().cloned().collect(),
        rank_deficient: rank < p,
    }
}

fn design_matrix(
    x: &[Vec<f64>],
    quadratic: bool,
    interactions: bool,
) -> DMatrix<f64> {
    let n = x.len();
    let d = x[0].len();
    let mut cols: Vec<Vec<f64>> = Vec::new();
    cols.push(vec![1.0; n]);
    for j in 0..d {
        cols.push(x.iter().map(|row| row[j]).collect());
    }
    if quadratic {
        for j in 0..d {
            cols.push(x.iter().map(|row| row[j] * row[j]).collect());
        }
    }
    if interactions {
        for a in 0..d {
            for b in a + 1..d {
                cols.push(x.iter().map(|row| row[a] * row[b]).collect());
            }
        }
    }
    DMatrix::from_fn(n, cols.len(), |i, j| cols[j][i])
}

pub fn compute_ela_meta(s: &DesignSample) -> Result<IndexMap<String, f64>> {
    let n = s.len();
    let d = s.dim();
    let full_quadratic_terms = 1 + d + d * (d + 1) / 2;
    if n < 2 * full_quadratic_terms {
        return Err(Error::invalid_argument(
            "sample",
            format!("ela_meta needs n >= {}", 2 * full_quadratic_terms),
        ));
    }
    let y = DVector::from_column_slice(&s.y);

    let lin = least_squares(&design_matrix(&s.x, false, false), &y);
    let lin_int = least_squares(&design_matrix(&s.x, false, true), &y);
    let quad = least_squares(&design_matrix(&s.x, true, false), &y);
    let quad_int = least_squares(&design_matrix(&s.x, true, true), &y);

    let lin_abs: Vec<f64> = lin.coefficients[1..=d].iter().map(|c| c.abs()).collect();
    let lin_min = lin_abs.iter().cloned().fold(f64::INFINITY, f64::min);
    let lin_max = lin_abs.iter().cloned().fold(0.0, f64::max);
    // quadratic coefficients of the simple quadratic model
    let quad_abs: Vec<f64> = quad.coefficients[d + 1..=2 * d]
        .iter()
        .map(|c| c.abs())
        .collect();
    let quad_min = quad_abs.iter().cloned().fold(f64::INFINITY, f64::min);
    let quad_max = quad_abs.iter().cloned().fold(0.0, f64::max);

    let rank_deficient =
        lin.rank_deficient || lin_int.rank_deficient || quad.rank_deficient || quad_int.rank_deficient;

    let mut out = IndexMap::new();
    out.insert("ela_meta.lin_simple.adj_r2".into(), lin.adj_r2);
    out.insert("ela_meta.lin_simple.coef.min".into(), lin_min);
    out.insert("ela_meta.lin_simple.coef.max".into(), lin_max);
    out.insert(
        "ela_meta.lin_simple.coef.max_by_min".into(),
        guarded_ratio(lin_max, lin_min),
    );
    out.insert("ela_meta.lin_w_interact.adj_r2".into(), lin_int.adj_r2);
    out.insert("ela_meta.quad_simple.adj_r2".into(), quad.adj_r2);
    out.insert(
        "ela_meta.quad_simple.cond".into(),
        guarded_ratio(quad_max, quad_min),
    );
    out.insert("ela_meta.quad_w_interact.adj_r2".into(), quad_int.adj_r2);
    out.insert(
        "ela_meta.flag_rank_deficient".into(),
        if rank_deficient { 1.0 } else { 0.0 },
    );
    Ok(out)
}
