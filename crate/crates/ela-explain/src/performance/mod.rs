//! Regression targets: the best target precision reached by the
//! optimizer within a fixed budget, aggregated over runs by the median,
//! with the log10(1 + p) transform. Externally produced performance
//! CSVs can be ingested instead of running the optimizer.

pub mod cmaes;

use std::io::Write;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::problems::{Objective, ProblemInstance};
use crate::stats::median;
use crate::{Error, Result};

pub use cmaes::{default_lambda, run_cmaes, run_cmaes_traced, GenerationLog};

/// Performance of one optimizer configuration on one problem instance.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PerformanceRecord {
    pub instance: ProblemInstance,
    /// Median best reached precision over the runs.
    pub target: f64,
    /// log10(1 + target), always recomputed from `target`.
    pub log_target: f64,
    pub runs: usize,
    pub budget: u64,
}

/// log10(1 + p); anchors: 0 → 0, 9 → 1, 99 → 2.
pub fn log_transform(p: f64) -> Result<f64> {
    if p < 0.0 {
        return Err(Error::invalid_argument(
            "precision",
            format!("must be >= 0, got {p}"),
        ));
    }
    Ok((1.0 + p).log10())
}

/// Per-run seeds are `base_seed..base_seed + runs`; the base derives
/// from the instance as fid * 100_000 + iid * 100 so instances never
/// share run seeds.
pub fn run_seed_base(instance: ProblemInstance) -> u64 {
    u64::from(instance.fid) * 100_000 + u64::from(instance.iid) * 100
}

/// Median-over-runs performance of the baseline optimizer.
pub fn collect_performance(
    ev: &mut (impl Objective + InstanceCarrier),
    runs: usize,
    budget: u64,
) -> Result<PerformanceRecord> {
    let instance = ev.carried_instance();
    let base = run_seed_base(instance);
    let precisions = collect_precisions(runs, |k| run_cmaes(ev, budget, base + k as u64))?;
    record_from_precisions(instance, &precisions, budget)
}

/// Runs an arbitrary per-run closure; the seam the tests use to inject
/// stub runs.
pub fn collect_precisions(
    runs: usize,
    mut run: impl FnMut(usize) -> Result<f64>,
) -> Result<Vec<f64>> {
    if runs == 0 {
        return Err(Error::invalid_argument("runs", "must be >= 1"));
    }
    (0..runs).map(&mut run).collect()
}

pub fn record_from_precisions(
    instance: ProblemInstance,
    precisions: &[f64],
    budget: u64,
) -> Result<PerformanceRecord> {
    let target = median(precisions);
    Ok(PerformanceRecord {
        instance,
        target,
        log_target: log_transform(target)?,
        runs: precisions.len(),
        budget,
    })
}

/// Access to the instance identity behind an objective; evaluators
/// carry it, stubs can fake it.
pub trait InstanceCarrier {
    fn carried_instance(&self) -> ProblemInstance;
}

impl InstanceCarrier for crate::problems::ProblemEvaluator {
    fn carried_instance(&self) -> ProblemInstance {
        self.instance()
    }
}

/// Performance CSV: fid,iid,target,log_target.
pub fn write_performance_csv(path: &Path, records: &[PerformanceRecord]) -> Result<()> {
    let mut out = String::from("fid,iid,target,log_target\n");
    for r in records {
        out.push_str(&format!(
            "{},{},{},{}\n",
            r.instance.fid, r.instance.iid, r.target, r.log_target
        ));
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Ingests fid,iid,target[,log_target]. The log column, when present,
/// is cross-checked against the recomputed transform within 1e-6.
pub fn ingest_performance_csv(path: &Path, dim: usize) -> Result<Vec<PerformanceRecord>> {
    let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut lines = content.lines().enumerate();
    let (_, header) = lines.next().ok_or_else(|| Error::CsvRow {
        path: path.into(),
        row: 0,
        reason: "empty file".into(),
    })?;
    let columns: Vec<&str> = header.split(',').map(str::trim).collect();
    let has_log = match columns.as_slice() {
        ["fid", "iid", "target"] => false,
        ["fid", "iid", "target", "log_target"] => true,
        _ => {
            return Err(Error::CsvRow {
                path: path.into(),
                row: 0,
                reason: "header must be fid,iid,target[,log_target]".into(),
            })
        }
    };

    let mut records = Vec::new();
    let mut seen = std::collections::HashSet::new();
    for (line_no, line) in lines {
        if line.trim().is_empty() {
            continue;
        }
        let row = line_no + 1;
        let bad = |reason: String| Error::CsvRow {
            path: path.into(),
            row,
            reason,
        };
        let fields: Vec<&str> = line.split(',').map(str::trim).collect();
        if fields.len() != columns.len() {
            return Err(bad(format!(
                "expected {} fields, got {}",
                columns.len(),
                fields.len()
            )));
        }
        let fid: u32 = fields[0]
            .parse()
            .map_err(|_| bad(format!("bad fid `{}`", fields[0])))?;
        let iid: u32 = fields[1]
            .parse()
            .map_err(|_| bad(format!("bad iid `{}`", fields[1])))?;
        let target: f64 = fields[2]
            .parse()
            .map_err(|_| bad(format!("bad target `{}`", fields[2])))?;
        if target < 0.0 {
            return Err(bad(format!("negative target {target}")));
        }
        if !seen.insert((fid, iid)) {
            return Err(bad(format!("duplicate (fid, iid) = ({fid}, {iid})")));
        }
        let log_target = log_transform(target)?;
        if has_log {
            let claimed: f64 = fields[3]
                .parse()
                .map_err(|_| bad(format!("bad log_target `{}`", fields[3])))?;
            if (claimed - log_target).abs() > 1e-6 {
                return Err(bad(format!(
                    "log_target {claimed} inconsistent with log10(1+{target}) = {log_target}"
                )));
            }
        }
        records.push(PerformanceRecord {
            instance: ProblemInstance::new(fid, iid, dim),
            target,
            log_target,
            runs: 0,
            budget: 0,
        });
    }
    Ok(records)
}
