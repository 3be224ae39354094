//! Per-problem mean-absolute-error tables over the out-of-fold
//! predictions, with an unweighted mean row across problems.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::cv::{FoldPlan, OofPrediction};
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct MaeTable {
    pub target_names: Vec<String>,
    /// fid → per-target MAE over that problem's instances.
    pub per_problem: BTreeMap<u32, Vec<f64>>,
    /// Unweighted mean of the per-problem values, per target.
    pub mean_row: Vec<f64>,
}

/// Unweighted mean of per-problem values: the "Mean" row.
pub fn mean_row(values: &[f64]) -> f64 {
    crate::stats::mean(values)
}

/// Builds the per-problem MAE table. Every planned (fid, iid) must
/// appear exactly once in the predictions.
pub fn mae_table(
    predictions: &[OofPrediction],
    plan: &FoldPlan,
    target_names: &[String],
) -> Result<MaeTable> {
    let mut seen: BTreeMap<(u32, u32), usize> = BTreeMap::new();
    for p in predictions {
        *seen.entry((p.instance.fid, p.instance.iid)).or_insert(0) += 1;
    }
    let mut missing = Vec::new();
    let mut duplicated = Vec::new();
    for key in plan.assignment.keys() {
        match seen.get(key) {
            None => missing.push(*key),
            Some(1) => {}
            Some(_) => duplicated.push(*key),
        }
    }
    if !missing.is_empty() || !duplicated.is_empty() {
        return Err(Error::Data(format!(
            "predictions must cover each planned instance exactly once; missing {missing:?}, duplicated {duplicated:?}"
        )));
    }

    let n_targets = target_names.len();
    let mut by_fid: BTreeMap<u32, Vec<&OofPrediction>> = BTreeMap::new();
    for p in predictions {
        by_fid.entry(p.instance.fid).or_default().push(p);
    }
    let mut per_problem = BTreeMap::new();
    for (fid, preds) in by_fid {
        let mae: Vec<f64> = (0..n_targets)
            .map(|t| {
                preds
                    .iter()
                    .map(|p| (p.predicted[t] - p.truth[t]).abs())
                    .sum::<f64>()
                    / preds.len() as f64
            })
            .collect();
        per_problem.insert(fid, mae);
    }
    let mean: Vec<f64> = (0..n_targets)
        .map(|t| {
            let column: Vec<f64> = per_problem.values().map(|v| v[t]).collect();
            mean_row(&column)
        })
        .collect();
    Ok(MaeTable {
        target_names: target_names.to_vec(),
        per_problem,
        mean_row: mean,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cv::build_fold_plan;
    use crate::problems::ProblemInstance;

    fn plan_and_preds(
        fids: &[u32],
        iids: u32,
        value: impl Fn(u32, u32) -> (f64, f64),
    ) -> (FoldPlan, Vec<OofPrediction>) {
        let instances: Vec<ProblemInstance> = fids
            .iter()
            .flat_map(|&fid| (1..=iids).map(move |iid| ProblemInstance::new(fid, iid, 2)))
            .collect();
        let plan = build_fold_plan(&instances, iids as usize).unwrap();
        let preds = instances
            .iter()
            .map(|inst| {
                let (pred, truth) = value(inst.fid, inst.iid);
                OofPrediction {
                    instance: *inst,
                    fold: (inst.iid - 1) as usize,
                    predicted: vec![pred],
                    truth: vec![truth],
                }
            })
            .collect();
        (plan, preds)
    }

    #[test]
    fn perfect_predictions_are_all_zero() {
        let (plan, preds) = plan_and_preds(&[1, 3, 8], 4, |fid, _| (fid as f64, fid as f64));
        let table = mae_table(&preds, &plan, &["precision".into()]).unwrap();
        assert!(table.per_problem.values().all(|v| v[0] == 0.0));
        assert_eq!(table.mean_row, vec![0.0]);
    }

    #[test]
    fn two_instance_errors_average() {
        let (plan, preds) = plan_and_preds(&[5], 2, |_, iid| {
            // errors 1 and 3
            (0.0, if iid == 1 { 1.0 } else { 3.0 })
        });
        let table = mae_table(&preds, &plan, &["precision".into()]).unwrap();
        assert_eq!(table.per_problem[&5], vec![2.0]);
    }

    #[test]
    fn missing_instances_are_listed() {
        let (plan, mut preds) = plan_and_preds(&[1, 2], 3, |fid, _| (fid as f64, 0.0));
        preds.retain(|p| !(p.instance.fid == 2 && p.instance.iid == 3));
        let err = mae_table(&preds, &plan, &["precision".into()]).unwrap_err();
        assert!(err.to_string().contains("(2, 3)"), "{err}");
    }

    #[test]
    fn mean_row_is_exactly_the_unweighted_mean() {
        let (plan, preds) = plan_and_preds(&[1, 2, 3, 4], 2, |fid, _| (0.0, fid as f64));
        let table = mae_table(&preds, &plan, &["precision".into()]).unwrap();
        let per: Vec<f64> = table.per_problem.values().map(|v| v[0]).collect();
        assert!((table.mean_row[0] - mean_row(&per)).abs() < 1e-12);
    }
}
