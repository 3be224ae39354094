//! Exploratory landscape analysis features. Six groups are computed
//! from an evaluated design (ela_distr, ela_meta, ela_level, disp, ic,
//! nbc) plus the evaluation-spending ela_curv group; per-repetition maps
//! are aggregated by the per-feature median. Externally produced
//! landscape CSVs (any schema with the same header convention) can be
//! ingested in place of the computed set.

pub mod curv;
pub mod disp;
pub mod distr;
pub mod ic;
pub mod level;
pub mod meta;
pub mod nbc;

use std::io::Write;
use std::path::Path;

use indexmap::IndexMap;

use crate::problems::{Objective, ProblemInstance};
use crate::sampling::DesignSample;
use crate::stats::median;
use crate::{Error, Result};

pub use curv::compute_ela_curv;
pub use disp::compute_disp;
pub use distr::compute_ela_distr;
pub use ic::compute_ic;
pub use level::compute_ela_level;
pub use meta::compute_ela_meta;
pub use nbc::compute_nbc;

pub type FeatureMap = IndexMap<String, f64>;

pub const FEATURE_SCHEMA_VERSION: &str = "1";

/// Feature values for one problem instance (median over repetitions).
#[derive(Debug, Clone)]
pub struct FeatureRecord {
    pub instance: ProblemInstance,
    pub values: FeatureMap,
}

#[derive(Debug, Clone)]
pub struct ElaConfig {
    pub level_quantiles: Vec<f64>,
    pub disp_quantiles: Vec<f64>,
    /// Design points at which gradients are estimated (clamped to n).
    pub curv_points_budget: usize,
}

impl Default for ElaConfig {
    fn default() -> Self {
        ElaConfig {
            level_quantiles: level::LEVEL_QUANTILES.to_vec(),
            disp_quantiles: disp::DISP_QUANTILES.to_vec(),
            curv_points_budget: 20,
        }
    }
}

/// All feature groups for one repetition, in schema order.
pub fn compute_features(
    s: &DesignSample,
    ev: &mut impl Objective,
    cfg: &ElaConfig,
) -> Result<FeatureMap> {
    let mut out = FeatureMap::new();
    out.extend(compute_ela_distr(s)?);
    out.extend(compute_ela_meta(s)?);
    out.extend(compute_ela_level(s, &cfg.level_quantiles)?);
    out.extend(compute_disp(s, &cfg.disp_quantiles)?);
    out.extend(compute_ic(s)?);
    out.extend(compute_nbc(s)?);
    let budget = cfg.curv_points_budget.min(s.len()).max(1);
    out.extend(compute_ela_curv(s, ev, budget)?);
    Ok(out)
}

/// Per-feature median across repetitions. All maps must share one
/// schema (same names, same order).
pub fn aggregate_repetitions(maps: &[FeatureMap]) -> Result<FeatureMap> {
    let first = maps
        .first()
        .ok_or_else(|| Error::invalid_argument("maps", "need at least one repetition"))?;
    for m in &maps[1..] {
        if m.len() != first.len() {
            return Err(Error::SchemaMismatch {
                reason: format!("expected {} features, got {}", first.len(), m.len()),
            });
        }
        for (a, b) in first.keys().zip(m.keys()) {
            if a != b {
                return Err(Error::SchemaMismatch {
                    reason: format!("feature `{b}` where `{a}` was expected"),
                });
            }
        }
    }
    let mut out = FeatureMap::new();
    for (i, name) in first.keys().enumerate() {
        let column: Vec<f64> = maps.iter().map(|m| m[i]).collect();
        out.insert(name.clone(), median(&column));
    }
    Ok(out)
}

fn check_uniform_schema(records: &[FeatureRecord]) -> Result<Vec<String>> {
    let first = records
        .first()
        .ok_or_else(|| Error::invalid_argument("records", "no records to write"))?;
    let names: Vec<String> = first.values.keys().cloned().collect();
    for r in records {
        let other: Vec<&String> = r.values.keys().collect();
        if other.len() != names.len() || names.iter().zip(&other).any(|(a, b)| &a != b) {
            return Err(Error::SchemaMismatch {
                reason: format!(
                    "record (fid {}, iid {}) does not match the schema of the first record",
                    r.instance.fid, r.instance.iid
                ),
            });
        }
    }
    Ok(names)
}

fn format_value(v: f64) -> String {
    if v.is_nan() {
        "NA".to_string()
    } else {
        format!("{v}")
    }
}

/// Aggregated landscape CSV: fid,iid,dim,<features...>.
pub fn write_landscape_csv(path: &Path, records: &[FeatureRecord]) -> Result<()> {
    let names = check_uniform_schema(records)?;
    let mut out = String::from("fid,iid,dim");
    for n in &names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for r in records {
        out.push_str(&format!(
            "{},{},{}",
            r.instance.fid, r.instance.iid, r.instance.dim
        ));
        for v in r.values.values() {
            out.push(',');
            out.push_str(&format_value(*v));
        }
        out.push('\n');
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Per-repetition landscape CSV: fid,iid,dim,rep,<features...>.
pub fn write_repetition_csv(
    path: &Path,
    rows: &[(ProblemInstance, usize, FeatureMap)],
) -> Result<()> {
    let first = rows
        .first()
        .ok_or_else(|| Error::invalid_argument("rows", "no rows to write"))?;
    let names: Vec<String> = first.2.keys().cloned().collect();
    let mut out = String::from("fid,iid,dim,rep");
    for n in &names {
        out.push(',');
        out.push_str(n);
    }
    out.push('\n');
    for (inst, rep, values) in rows {
        out.push_str(&format!("{},{},{},{}", inst.fid, inst.iid, inst.dim, rep));
        for v in values.values() {
            out.push(',');
            out.push_str(&format_value(*v));
        }
        out.push('\n');
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Reads a landscape CSV with header fid,iid,dim,<features...>. Missing
/// markers ("", "NA", "NaN") become NaN; downstream consumers decide how
/// to treat such columns. Ingested schemas replace the computed one.
pub fn read_landscape_csv(path: &Path) -> Result<Vec<FeatureRecord>> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = content.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::CsvRow {
        path: path.into(),
        row: 0,
        reason: "empty file".into(),
    })?;
    let columns: Vec<&str> = header.split(',').collect();
    if columns.len() < 4 || columns[0] != "fid" || columns[1] != "iid" || columns[2] != "dim" {
        return Err(Error::CsvRow {
            path: path.into(),
            row: 0,
            reason: "header must start with fid,iid,dim".into(),
        });
    }
    let feature_names: Vec<String> = columns[3..].iter().map(|s| s.to_string()).collect();

    let mut records = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row = line_no + 1;
        let fields: Vec<&str> = line.split(',').collect();
        if fields.len() != columns.len() {
            return Err(Error::CsvRow {
                path: path.into(),
                row,
                reason: format!("expected {} fields, got {}", columns.len(), fields.len()),
            });
        }
        let parse_int = |s: &str, what: &str| {
            s.parse::<u32>().map_err(|_| Error::CsvRow {
                path: path.into(),
                row,
                reason: format!("bad {what}: `{s}`"),
            })
        };
        let fid = parse_int(fields[0], "fid")?;
        let iid = parse_int(fields[1], "iid")?;
        let dim = parse_int(fields[2], "dim")? as usize;
        if !seen.insert((fid, iid)) {
            return Err(Error::CsvRow {
                path: path.into(),
                row,
                reason: format!("duplicate (fid, iid) = ({fid}, {iid})"),
            });
        }
        let mut values = FeatureMap::new();
        for (name, raw) in feature_names.iter().zip(&fields[3..]) {
            let v = match *raw {
                "" | "NA" | "NaN" | "nan" => f64::NAN,
                other => other.parse::<f64>().map_err(|_| Error::CsvRow {
                    path: path.into(),
                    row,
                    reason: format!("bad value for {name}: `{other}`"),
                })?,
            };
            values.insert(name.clone(), v);
        }
        records.push(FeatureRecord {
            instance: ProblemInstance::new(fid, iid, dim),
            values,
        });
    }
    Ok(records)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::problems::make_problem;
    use crate::sampling::build_design;

    fn features_for(fid: u32, iid: u32, dim: usize, n: usize, seed: u64) -> FeatureMap {
        let mut ev = make_problem(fid, iid, dim).unwrap();
        let samples = build_design(&mut ev, n, 1, seed).unwrap();
        compute_features(&samples[0], &mut ev, &ElaConfig::default()).unwrap()
    }

    #[test]
    fn aggregate_takes_even_count_median() {
        let maps: Vec<FeatureMap> = (1..=10)
            .map(|v| {
                let mut m = FeatureMap::new();
                m.insert("a".into(), v as f64);
                m
            })
            .collect();
        let agg = aggregate_repetitions(&maps).unwrap();
        assert_eq!(agg["a"], 5.5);
    }

    #[test]
    fn aggregate_of_single_repetition_is_identity() {
        let mut m = FeatureMap::new();
        m.insert("a".into(), 3.25);
        m.insert("b".into(), -1.0);
        let agg = aggregate_repetitions(&[m.clone()]).unwrap();
        assert_eq!(agg, m);
    }

    #[test]
    fn aggregate_resists_outliers() {
        let mut maps = Vec::new();
        for i in 0..10 {
            let mut m = FeatureMap::new();
            m.insert("a".into(), if i == 0 { 1e9 } else { 2.0 + i as f64 * 1e-3 });
            maps.push(m);
        }
        let agg = aggregate_repetitions(&maps).unwrap();
        assert!(agg["a"] < 3.0);
    }

    #[test]
    fn aggregate_names_the_divergent_feature() {
        let mut a = FeatureMap::new();
        a.insert("x".into(), 1.0);
        let mut b = FeatureMap::new();
        b.insert("y".into(), 1.0);
        let err = aggregate_repetitions(&[a, b]).unwrap_err();
        assert!(err.to_string().contains('y'), "{err}");
    }

    #[test]
    fn schema_is_stable_across_instances() {
        let a = features_for(1, 1, 2, 60, 1);
        let b = features_for(3, 2, 2, 60, 2);
        let names_a: Vec<&String> = a.keys().collect();
        let names_b: Vec<&String> = b.keys().collect();
        assert_eq!(names_a, names_b);
    }

    #[test]
    fn feature_computation_is_bit_deterministic() {
        let a = features_for(13, 1, 2, 60, 9);
        let b = features_for(13, 1, 2, 60, 9);
        assert_eq!(a, b);
    }

    #[test]
    fn x_translation_leaves_geometry_features_unchanged() {
        let mut ev = make_problem(3, 1, 2).unwrap();
        let samples = build_design(&mut ev, 80, 1, 12).unwrap();
        let s = &samples[0];
        let shifted = DesignSample {
            x: s.x
                .iter()
                .map(|row| row.iter().map(|v| v + 3.5).collect())
                .collect(),
            y: s.y.clone(),
            repetition_index: s.repetition_index,
            seed: s.seed,
        };
        let cfg = ElaConfig::default();
        let disp_a = compute_disp(s, &cfg.disp_quantiles).unwrap();
        let disp_b = compute_disp(&shifted, &cfg.disp_quantiles).unwrap();
        for (k, v) in &disp_a {
            assert!((v - disp_b[k]).abs() < 1e-12, "{k}");
        }
        let nbc_a = compute_nbc(s).unwrap();
        let nbc_b = compute_nbc(&shifted).unwrap();
        for (k, v) in &nbc_a {
            assert!((v - nbc_b[k]).abs() < 1e-12, "{k}");
        }
    }

    #[test]
    fn y_shift_leaves_order_based_groups_unchanged() {
        let mut ev = make_problem(8, 1, 2).unwrap();
        let samples = build_design(&mut ev, 80, 1, 4).unwrap();
        let s = &samples[0];
        let shifted = DesignSample {
            x: s.x.clone(),
            y: s.y.iter().map(|v| v + 1234.5).collect(),
            repetition_index: s.repetition_index,
            seed: s.seed,
        };
        let cfg = ElaConfig::default();
        let groups_a = [
            compute_ela_distr(s).unwrap(),
            compute_ela_level(s, &cfg.level_quantiles).unwrap(),
            compute_disp(s, &cfg.disp_quantiles).unwrap(),
            compute_ic(s).unwrap(),
            compute_nbc(s).unwrap(),
        ];
        let groups_b = [
            compute_ela_distr(&shifted).unwrap(),
            compute_ela_level(&shifted, &cfg.level_quantiles).unwrap(),
            compute_disp(&shifted, &cfg.disp_quantiles).unwrap(),
            compute_ic(&shifted).unwrap(),
            compute_nbc(&shifted).unwrap(),
        ];
        for (a, b) in groups_a.iter().zip(&groups_b) {
            for (k, v) in a {
                assert!((v - b[k]).abs() < 1e-9, "{k}: {v} vs {}", b[k]);
            }
        }
    }

    #[test]
    fn skewness_reacts_to_monotone_transform() {
        let mut ev = make_problem(8, 1, 2).unwrap();
        let samples = build_design(&mut ev, 80, 1, 6).unwrap();
        let s = &samples[0];
        let cubed = DesignSample {
            x: s.x.clone(),
            y: s.y.iter().map(|v| v * v * v).collect(),
            repetition_index: s.repetition_index,
            seed: s.seed,
        };
        let a = compute_ela_distr(s).unwrap();
        let b = compute_ela_distr(&cubed).unwrap();
        assert_ne!(a["ela_distr.skewness"], b["ela_distr.skewness"]);
    }

    #[test]
    fn landscape_csv_round_trips() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("landscape.csv");
        let records: Vec<FeatureRecord> = [(1, 1), (1, 2), (3, 1)]
            .iter()
            .map(|&(fid, iid)| {
                let mut values = FeatureMap::new();
                values.insert("g.a".into(), fid as f64 * 0.5);
                values.insert("g.b".into(), iid as f64 * -2.0);
                FeatureRecord {
                    instance: ProblemInstance::new(fid, iid, 2),
                    values,
                }
            })
            .collect();
        write_landscape_csv(&path, &records).unwrap();
        let back = read_landscape_csv(&path).unwrap();
        assert_eq!(back.len(), 3);
        assert_eq!(back[2].instance.fid, 3);
        assert_eq!(back[0].values["g.a"], 0.5);
    }

    #[test]
    fn ingestion_accepts_missing_markers_and_rejects_duplicates() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("external.csv");
        std::fs::write(
            &path,
            "fid,iid,dim,cm_angle.a,ela_local.b\n1,1,5,NA,2.5\n1,2,5,0.25,\n",
        )
        .unwrap();
        let records = read_landscape_csv(&path).unwrap();
        assert!(records[0].values["cm_angle.a"].is_nan());
        assert_eq!(records[1].values["cm_angle.a"], 0.25);
        assert!(records[1].values["ela_local.b"].is_nan());

        std::fs::write(&path, "fid,iid,dim,a\n1,1,5,1.0\n1,1,5,2.0\n").unwrap();
        let err = read_landscape_csv(&path).unwrap_err();
        assert!(matches!(err, Error::CsvRow { row: 3, .. }), "{err}");
    }
}
