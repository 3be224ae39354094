//! Curvature features: aggregations of finite-difference gradient norms
//! at a budgeted prefix of the design points. This is the one feature
//! group that spends fresh evaluations; the cost is exactly
//! `points_budget * 2 * dim` calls, charged outside the optimizer budget.

use indexmap::IndexMap;

use crate::problems::Objective;
use crate::sampling::DesignSample;
use crate::stats::{mean, median, quantile, sample_sd};
use crate::{Error, Result};

const STEP_FRACTION: f64 = 1e-4;

/// Gradient estimate at design point `i`, reusing the cached center
/// value. Central differences where the stencil fits in the box; a
/// second-order one-sided stencil at the boundary, which also costs two
/// fresh evaluations per coordinate.
fn gradient_at(
    ev: &mut impl Objective,
    x: &[f64],
    y_center: f64,
    h: f64,
) -> Result<Vec<f64>> {
    let (lower, upper) = ev.bounds();
    let dim = x.len();
    let mut grad = Vec::with_capacity(dim);
    let mut probe = x.to_vec();
    for j in 0..dim {
        let xj = x[j];
        let g = if xj + h <= upper && xj - h >= lower {
            probe[j] = xj + h;
            let f_plus = ev.evaluate(&probe)?;
            probe[j] = xj - h;
            let f_minus = ev.evaluate(&probe)?;
            (f_plus - f_minus) / (2.0 * h)
        } else if xj + h > upper {
            probe[j] = xj - h;
            let f1 = ev.evaluate(&probe)?;
            probe[j] = xj - 2.0 * h;
            let f2 = ev.evaluate(&probe)?;
            (3.0 * y_center - 4.0 * f1 + f2) / (2.0 * h)
        } else {
            probe[j] = xj + h;
            let f1 = ev.evaluate(&probe)?;
            probe[j] = xj + 2.0 * h;
            let f2 = ev.evaluate(&probe)?;
            (-3.0 * y_center + 4.0 * f1 - f2) / (2.0 * h)
        };
        probe[j] = xj;
        grad.push(g);
    }
    Ok(grad)
}

pub fn compute_ela_curv(
    s: &DesignSample,
    ev: &mut impl Objective,
    points_budget: usize,
) -> Result<IndexMap<String, f64>> {
    if points_budget == 0 || points_budget > s.len() {
        return Err(Error::invalid_argument(
            "points_budget",
            format!("must be in 1..={}", s.len()),
        ));
    }
    let (lower, upper) = ev.bounds();
    let h = STEP_FRACTION * (upper - lower);
    let mut norms = Vec::with_capacity(points_budget);
    for i in 0..points_budget {
        let grad = gradient_at(ev, &s.x[i], s.y[i], h)?;
        norms.push(grad.iter().map(|g| g * g).sum::<f64>().sqrt());
    }

    let min = norms.iter().cloned().fold(f64::INFINITY, f64::min);
    let max = norms.iter().cloned().fold(0.0, f64::max);
    let zero_min = min == 0.0;
    let grad_scale = if zero_min { f64::MAX } else { max / min };

    let mut out = IndexMap::new();
    out.insert("ela_curv.grad_norm.min".into(), min);
    out.insert("ela_curv.grad_norm.lq".into(), quantile(&norms, 0.25));
    out.insert("ela_curv.grad_norm.mean".into(), mean(&norms));
    out.insert("ela_curv.grad_norm.med".into(), median(&norms));
    out.insert("ela_curv.grad_norm.uq".into(), quantile(&norms, 0.75));
    out.insert("ela_curv.grad_norm.max".into(), max);
    out.insert("ela_curv.grad_norm.sd".into(), sample_sd(&norms));
    out.insert("ela_curv.grad_scale".into(), grad_scale);
    out.insert(
        "ela_curv.flag_zero_grad".into(),
        if zero_min { 1.0 } else { 0.0 },
    );
    Ok(out)
}
