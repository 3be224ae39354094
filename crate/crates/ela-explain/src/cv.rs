//! Instance-wise cross-validation: fold i holds the (i+1)-th instance
//! of every problem, models train on the remaining folds, and every
//! instance receives exactly one out-of-fold prediction. Feature
//! standardization for the network is fit on each fold's training
//! partition only.

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::ela::FeatureRecord;
use crate::models::{fit_model, Family, ModelKind, ModelSpec, TargetKind};
use crate::performance::PerformanceRecord;
use crate::problems::ProblemInstance;
use crate::{Error, Result};

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FoldPlan {
    pub n_folds: usize,
    /// (fid, iid) → fold index; fold = iid - 1.
    pub assignment: BTreeMap<(u32, u32), usize>,
}

pub fn build_fold_plan(instances: &[ProblemInstance], n_folds: usize) -> Result<FoldPlan> {
    if n_folds == 0 {
        return Err(Error::invalid_argument("n_folds", "must be >= 1"));
    }
    let mut by_fid: BTreeMap<u32, Vec<u32>> = BTreeMap::new();
    for inst in instances {
        by_fid.entry(inst.fid).or_default().push(inst.iid);
    }
    let mut problems = Vec::new();
    for (fid, iids) in &mut by_fid {
        iids.sort_unstable();
        let expected: Vec<u32> = (1..=n_folds as u32).collect();
        if *iids != expected {
            let missing: Vec<u32> = expected.iter().copied().filter(|i| !iids.contains(i)).collect();
            let extra: Vec<u32> = iids.iter().copied().filter(|i| !expected.contains(i)).collect();
            problems.push(format!(
                "fid {fid}: missing iids {missing:?}, unexpected iids {extra:?}"
            ));
        }
    }
    if !problems.is_empty() {
        return Err(Error::Data(format!(
            "fold plan needs iids 1..={n_folds} per problem: {}",
            problems.join("; ")
        )));
    }
    let assignment = instances
        .iter()
        .map(|inst| ((inst.fid, inst.iid), (inst.iid - 1) as usize))
        .collect();
    Ok(FoldPlan {
        n_folds,
        assignment,
    })
}

impl FoldPlan {
    pub fn fold_of(&self, instance: &ProblemInstance) -> Option<usize> {
        self.assignment.get(&(instance.fid, instance.iid)).copied()
    }
}

pub fn write_fold_plan_csv(path: &Path, plan: &FoldPlan) -> Result<()> {
    let mut out = String::from("fid,iid,fold\n");
    for ((fid, iid), fold) in &plan.assignment {
        out.push_str(&format!("{fid},{iid},{fold}\n"));
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Per-feature z-scoring; zero-variance features pass through.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct Standardizer {
    pub mean: Vec<f64>,
    pub sd: Vec<f64>,
}

impl Standardizer {
    pub fn fit(rows: &[&[f64]]) -> Self {
        let f = rows.first().map_or(0, |r| r.len());
        let n = rows.len() as f64;
        let mean: Vec<f64> = (0..f)
            .map(|j| rows.iter().map(|r| r[j]).sum::<f64>() / n)
            .collect();
        let sd: Vec<f64> = (0..f)
            .map(|j| {
                let var = rows.iter().map(|r| (r[j] - mean[j]).powi(2)).sum::<f64>() / n;
                let s = var.sqrt();
                if s > 0.0 { s } else { 1.0 }
            })
            .collect();
        Standardizer { mean, sd }
    }

    pub fn apply(&self, row: &[f64]) -> Vec<f64> {
        row.iter()
            .enumerate()
            .map(|(j, v)| (v - self.mean[j]) / self.sd[j])
            .collect()
    }
}

/// Feature matrix joined with targets, sorted by (fid, iid).
#[derive(Debug, Clone)]
pub struct Dataset {
    pub feature_names: Vec<String>,
    pub instances: Vec<ProblemInstance>,
    pub x: Vec<Vec<f64>>,
    /// [precision, log_precision] per instance.
    pub targets: Vec<[f64; 2]>,
    /// Feature columns excluded because they carried missing values.
    pub dropped_features: Vec<String>,
}

/// Joins landscape features with performance targets on (fid, iid).
/// Columns containing any missing value are dropped (ingested data may
/// carry them); both sides must cover exactly the same instances.
pub fn assemble_dataset(
    features: &[FeatureRecord],
    performance: &[PerformanceRecord],
) -> Result<Dataset> {
    let mut perf: BTreeMap<(u32, u32), &PerformanceRecord> = BTreeMap::new();
    for p in performance {
        perf.insert((p.instance.fid, p.instance.iid), p);
    }
    let mut records: Vec<&FeatureRecord> = features.iter().collect();
    records.sort_by_key(|r| (r.instance.fid, r.instance.iid));

    let feature_keys: Vec<(u32, u32)> = records
        .iter()
        .map(|r| (r.instance.fid, r.instance.iid))
        .collect();
    let perf_keys: Vec<(u32, u32)> = perf.keys().copied().collect();
    if feature_keys != perf_keys {
        let missing: Vec<_> = feature_keys.iter().filter(|k| !perf.contains_key(k)).collect();
        let extra: Vec<_> = perf_keys
            .iter()
            .filter(|k| !feature_keys.contains(k))
            .collect();
        return Err(Error::Data(format!(
            "features and performance cover different instances; performance missing {missing:?}, features missing {extra:?}"
        )));
    }

    let first = records
        .first()
        .ok_or_else(|| Error::Data("no feature records".into()))?;
    let all_names: Vec<String> = first.values.keys().cloned().collect();
    let mut keep = vec![true; all_names.len()];
    for r in &records {
        for (j, v) in r.values.values().enumerate() {
            if v.is_nan() {
                keep[j] = false;
            }
        }
    }
    let feature_names: Vec<String> = all_names
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| k)
        .map(|(n, _)| n.clone())
        .collect();
    let dropped_features: Vec<String> = all_names
        .iter()
        .zip(&keep)
        .filter(|(_, &k)| !k)
        .map(|(n, _)| n.clone())
        .collect();
    if feature_names.is_empty() {
        return Err(Error::Data(
            "every feature column carries missing values".into(),
        ));
    }

    let mut instances = Vec::with_capacity(records.len());
    let mut x = Vec::with_capacity(records.len());
    let mut targets = Vec::with_capacity(records.len());
    for r in records {
        let key = (r.instance.fid, r.instance.iid);
        let p = perf[&key];
        instances.push(r.instance);
        x.push(
            r.values
                .values()
                .enumerate()
                .filter(|(j, _)| keep[*j])
                .map(|(_, v)| *v)
                .collect(),
        );
        targets.push([p.target, p.log_target]);
    }
    Ok(Dataset {
        feature_names,
        instances,
        x,
        targets,
        dropped_features,
    })
}

impl Dataset {
    /// Target columns selected by a model spec, in prediction order.
    pub fn targets_for(&self, kind: TargetKind) -> Vec<Vec<f64>> {
        self.targets
            .iter()
            .map(|[p, l]| match kind {
                TargetKind::Precision => vec![*p],
                TargetKind::LogPrecision => vec![*l],
                TargetKind::Both => vec![*p, *l],
            })
            .collect()
    }
}

/// A fitted model plus everything needed to apply it to raw features.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrainedModel {
    pub format_version: String,
    pub spec: ModelSpec,
    pub fold: usize,
    pub feature_names: Vec<String>,
    pub standardizer: Option<Standardizer>,
    pub model: ModelKind,
}

pub const MODEL_FORMAT_VERSION: &str = "1";

impl TrainedModel {
    pub fn predict(&self, raw: &[f64]) -> Result<Vec<f64>> {
        match &self.standardizer {
            Some(s) => self.model.predict(&s.apply(raw)),
            None => self.model.predict(raw),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct OofPrediction {
    pub instance: ProblemInstance,
    pub fold: usize,
    pub predicted: Vec<f64>,
    pub truth: Vec<f64>,
}

#[derive(Debug)]
pub struct CvOutput {
    pub models: Vec<TrainedModel>,
    pub predictions: Vec<OofPrediction>,
}

/// Trains one model per fold (in parallel; fold k uses seed + k) and
/// collects the out-of-fold predictions.
pub fn run_cv(data: &Dataset, spec: &ModelSpec, plan: &FoldPlan, seed: u64) -> Result<CvOutput> {
    for inst in &data.instances {
        if plan.fold_of(inst).is_none() {
            return Err(Error::Data(format!(
                "instance (fid {}, iid {}) missing from the fold plan",
                inst.fid, inst.iid
            )));
        }
    }
    let targets = data.targets_for(spec.target);

    let per_fold: Vec<Result<(TrainedModel, Vec<OofPrediction>)>> =
        crate::exec::map_range(plan.n_folds, |fold| {
            train_fold(data, spec, plan, &targets, fold, seed + fold as u64)
                .map_err(|e| e.with_context(format!("fold {fold}")))
        });

    let mut models = Vec::with_capacity(plan.n_folds);
    let mut predictions = Vec::new();
    for item in per_fold {
        let (model, mut preds) = item?;
        models.push(model);
        predictions.append(&mut preds);
    }
    Ok(CvOutput {
        models,
        predictions,
    })
}

fn train_fold(
    data: &Dataset,
    spec: &ModelSpec,
    plan: &FoldPlan,
    targets: &[Vec<f64>],
    fold: usize,
    seed: u64,
) -> Result<(TrainedModel, Vec<OofPrediction>)> {
    let train_idx: Vec<usize> = (0..data.instances.len())
        .filter(|&i| plan.fold_of(&data.instances[i]) != Some(fold))
        .collect();
    let test_idx: Vec<usize> = (0..data.instances.len())
        .filter(|&i| plan.fold_of(&data.instances[i]) == Some(fold))
        .collect();
    if train_idx.is_empty() || test_idx.is_empty() {
        return Err(Error::Data("empty training or test partition".into()));
    }

    let standardizer = (spec.family == Family::Mlp).then(|| {
        let rows: Vec<&[f64]> = train_idx.iter().map(|&i| data.x[i].as_slice()).collect();
        Standardizer::fit(&rows)
    });
    let transform = |i: usize| -> Vec<f64> {
        match &standardizer {
            Some(s) => s.apply(&data.x[i]),
            None => data.x[i].clone(),
        }
    };

    let train_x: Vec<Vec<f64>> = train_idx.iter().map(|&i| transform(i)).collect();
    let train_y: Vec<Vec<f64>> = train_idx.iter().map(|&i| targets[i].clone()).collect();
    let model = fit_model(spec, &train_x, &train_y, seed)?;

    let trained = TrainedModel {
        format_version: MODEL_FORMAT_VERSION.to_string(),
        spec: spec.clone(),
        fold,
        feature_names: data.feature_names.clone(),
        standardizer,
        model,
    };
    let predictions = test_idx
        .iter()
        .map(|&i| {
            Ok(OofPrediction {
                instance: data.instances[i],
                fold,
                predicted: trained.predict(&data.x[i])?,
                truth: targets[i].clone(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((trained, predictions))
}
