//! Aggregation of per-instance explanations into the global artifacts:
//! feature-importance rankings, per-fold model representations,
//! hierarchical clustering of representations, top-k feature-set
//! intersections, and the embedding-input export.

pub mod cluster;
pub mod mae;

use std::collections::BTreeMap;
use std::io::Write;
use std::path::Path;

use serde::Serialize;

use crate::shap::Explanation;
use crate::{Error, Result};

pub use cluster::{hierarchical_cluster, LinkageTree, Merge};
pub use mae::{mae_table, mean_row, MaeTable};

/// A model's fingerprint: per-feature mean signed Shapley value over
/// the explained instances, with the mean-|Shapley| companion used for
/// importance ranking.
#[derive(Debug, Clone, Serialize)]
pub struct ModelRepresentation {
    pub model_id: String,
    pub target: usize,
    pub fold: usize,
    pub feature_names: Vec<String>,
    pub signed: Vec<f64>,
    pub absolute: Vec<f64>,
}

/// Features ranked by mean |Shapley| (descending; name breaks ties).
pub fn global_importance(e: &Explanation, target: usize, k: usize) -> Result<Vec<(String, f64)>> {
    let n_features = e.feature_names.len();
    if k > n_features {
        return Err(Error::invalid_argument(
            "k",
            format!("{k} exceeds the {n_features}-feature schema"),
        ));
    }
    let n = e.shap.len().max(1) as f64;
    let mut scored: Vec<(String, f64)> = (0..n_features)
        .map(|f| {
            let mean_abs = e.shap.iter().map(|row| row[f][target].abs()).sum::<f64>() / n;
            (e.feature_names[f].clone(), mean_abs)
        })
        .collect();
    scored.sort_by(|a, b| b.1.partial_cmp(&a.1).unwrap().then_with(|| a.0.cmp(&b.0)));
    scored.truncate(k);
    Ok(scored)
}

/// Mean signed and mean absolute Shapley vectors over the explained
/// instances, one representation per target.
pub fn model_representation(e: &Explanation, target: usize, fold: usize) -> ModelRepresentation {
    let n_features = e.feature_names.len();
    let n = e.shap.len().max(1) as f64;
    let signed: Vec<f64> = (0..n_features)
        .map(|f| e.shap.iter().map(|row| row[f][target]).sum::<f64>() / n)
        .collect();
    let absolute: Vec<f64> = (0..n_features)
        .map(|f| e.shap.iter().map(|row| row[f][target].abs()).sum::<f64>() / n)
        .collect();
    ModelRepresentation {
        model_id: e.model_id.clone(),
        target,
        fold,
        feature_names: e.feature_names.clone(),
        signed,
        absolute,
    }
}

impl ModelRepresentation {
    /// Element-wise average of representations (used to collapse folds).
    pub fn average(reps: &[ModelRepresentation]) -> Result<ModelRepresentation> {
        let first = reps
            .first()
            .ok_or_else(|| Error::invalid_argument("reps", "nothing to average"))?;
        let n = reps.len() as f64;
        let width = first.signed.len();
        for r in reps {
            if r.signed.len() != width {
                return Err(Error::SchemaMismatch {
                    reason: "representations differ in feature count".into(),
                });
            }
        }
        let signed = (0..width)
            .map(|f| reps.iter().map(|r| r.signed[f]).sum::<f64>() / n)
            .collect();
        let absolute = (0..width)
            .map(|f| reps.iter().map(|r| r.absolute[f]).sum::<f64>() / n)
            .collect();
        Ok(ModelRepresentation {
            model_id: first.model_id.clone(),
            target: first.target,
            fold: usize::MAX,
            feature_names: first.feature_names.clone(),
            signed,
            absolute,
        })
    }

    /// Top-k feature names by the mean-|Shapley| companion vector.
    pub fn top_k(&self, k: usize) -> Vec<String> {
        let mut order: Vec<usize> = (0..self.absolute.len()).collect();
        order.sort_by(|&a, &b| {
            self.absolute[b]
                .partial_cmp(&self.absolute[a])
                .unwrap()
                .then_with(|| self.feature_names[a].cmp(&self.feature_names[b]))
        });
        order
            .into_iter()
            .take(k)
            .map(|i| self.feature_names[i].clone())
            .collect()
    }
}

/// The seven Venn regions of three top-k sets (or three regions for
/// two), keyed by a label like "dt&rf" or "dt_only".
#[derive(Debug, Clone, Serialize)]
pub struct TopKIntersections {
    pub k: usize,
    pub top_sets: BTreeMap<String, Vec<String>>,
    pub regions: BTreeMap<String, Vec<String>>,
}

/// Top-k sets per family from fold-averaged representations plus all
/// their intersections.
pub fn top_k_intersection(
    reps_by_family: &BTreeMap<String, ModelRepresentation>,
    k: usize,
) -> Result<TopKIntersections> {
    let width = reps_by_family
        .values()
        .next()
        .ok_or_else(|| Error::invalid_argument("reps_by_family", "no representations"))?
        .feature_names
        .len();
    if k > width {
        return Err(Error::invalid_argument(
            "k",
            format!("{k} exceeds the {width}-feature schema"),
        ));
    }
    let top_sets: BTreeMap<String, Vec<String>> = reps_by_family
        .iter()
        .map(|(family, rep)| (family.clone(), rep.top_k(k)))
        .collect();

    let families: Vec<&String> = top_sets.keys().collect();
    let sets: Vec<std::collections::BTreeSet<&String>> = families
        .iter()
        .map(|f| top_sets[*f].iter().collect())
        .collect();

    let mut regions = BTreeMap::new();
    // every non-empty family combination gets its exclusive region
    for mask in 1..(1u32 << families.len()) {
        let inside: Vec<usize> = (0..families.len()).filter(|i| mask & (1 << i) != 0).collect();
        let outside: Vec<usize> = (0..families.len()).filter(|i| mask & (1 << i) == 0).collect();
        let mut members: Vec<String> = sets[inside[0]]
            .iter()
            .filter(|name| {
                inside.iter().all(|&i| sets[i].contains(*name))
                    && outside.iter().all(|&i| !sets[i].contains(*name))
            })
            .map(|s| s.to_string())
            .collect();
        members.sort();
        let label = if inside.len() == 1 {
            format!("{}_only", families[inside[0]])
        } else {
            inside
                .iter()
                .map(|&i| families[i].as_str())
                .collect::<Vec<_>>()
                .join("&")
        };
        regions.insert(label, members);
    }
    Ok(TopKIntersections {
        k,
        top_sets,
        regions,
    })
}

/// Embedding-input CSV: one row per representation, metadata columns
/// then the signed per-feature values.
pub fn write_embedding_csv(path: &Path, reps: &[ModelRepresentation]) -> Result<()> {
    let mut out = String::from("model_id,target,fold");
    if let Some(first) = reps.first() {
        for name in &first.feature_names {
            out.push(',');
            out.push_str(name);
        }
    }
    out.push('\n');
    for r in reps {
        out.push_str(&format!("{},{},{}", r.model_id, r.target, r.fold));
        for v in &r.signed {
            out.push_str(&format!(",{v}"));
        }
        out.push('\n');
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Parses an embedding CSV back into (model_id, target, fold, vector)
/// rows; the round-trip check in the tests keeps the export honest.
pub fn read_embedding_csv(path: &Path) -> Result<Vec<(String, usize, usize, Vec<f64>)>> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut rows = Vec::new();
    for (i, line) in content.lines().enumerate().skip(1) {
        if line.trim().is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(',').collect();
        let parse = |s: &str| -> Result<f64> {
            s.parse().map_err(|_| Error::CsvRow {
                path: path.into(),
                row: i + 1,
                reason: format!("bad value `{s}`"),
            })
        };
        let vector = fields[3..].iter().map(|s| parse(s)).collect::<Result<_>>()?;
        rows.push((
            fields[0].to_string(),
            fields[1].parse().unwrap_or(0),
            fields[2].parse().unwrap_or(0),
            vector,
        ));
    }
    Ok(rows)
}
