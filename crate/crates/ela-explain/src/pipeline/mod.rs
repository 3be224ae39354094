//! Command orchestration: each subcommand reads its inputs from the
//! output directory, writes flat CSV/JSON artifacts, and records a
//! manifest (config hash, input hashes, outputs). Reruns of the data
//! stages skip existing outputs unless forced. All randomness derives
//! from the global seed, so a full run is byte-reproducible (manifests,
//! which carry timestamps, are the only exception).

pub mod config;

use std::collections::BTreeMap;
use std::io::Write as _;
use std::path::{Path, PathBuf};

use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::analysis::{
    hierarchical_cluster, mae_table, model_representation, top_k_intersection,
    write_embedding_csv, LinkageTree, MaeTable, ModelRepresentation, TopKIntersections,
};
use crate::cv::{
    assemble_dataset, build_fold_plan, run_cv, write_fold_plan_csv, Dataset, FoldPlan,
    OofPrediction, TrainedModel,
};
use crate::ela::{
    aggregate_repetitions, compute_features, read_landscape_csv, write_landscape_csv,
    write_repetition_csv, ElaConfig, FeatureMap, FeatureRecord,
};
use crate::models::ModelSpec;
use crate::performance::{
    ingest_performance_csv, record_from_precisions, run_cmaes_traced, run_seed_base,
    write_performance_csv, GenerationLog, PerformanceRecord,
};
use crate::problems::{make_problem, write_suite_manifest, ProblemInstance};
use crate::sampling::{build_design, write_design_csv};
use crate::shap::{explain_dataset, write_explanation_csv, ExplainOptions, Explanation};
use crate::{Error, Result};

pub use config::{DataMode, Profile, RunConfig};

#[derive(Debug, Clone, Serialize)]
pub struct CommandSummary {
    pub command: String,
    pub skipped: bool,
    pub outputs: Vec<PathBuf>,
    pub notes: Vec<String>,
}

pub struct Pipeline {
    pub config: RunConfig,
    pub force: bool,
    pub trace: bool,
}

fn write_text(path: &Path, content: &str) -> Result<()> {
    if let Some(parent) = path.parent() {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(content.as_bytes())
        .map_err(|e| Error::io(path, e))?;
    Ok(())
}

fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)
        .map_err(|e| Error::Data(format!("{}: {e}", path.display())))?;
    write_text(path, &(text + "\n"))
}

fn hex_digest(bytes: &[u8]) -> String {
    Sha256::digest(bytes)
        .iter()
        .map(|b| format!("{b:02x}"))
        .collect()
}

fn sha256_file(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(hex_digest(&bytes))
}

/// Deterministic sub-seed: global seed mixed with a tag and indices.
fn derive_seed(global: u64, tag: &str, a: u64, b: u64) -> u64 {
    let mut hasher = Sha256::new();
    hasher.update(global.to_le_bytes());
    hasher.update(tag.as_bytes());
    hasher.update(a.to_le_bytes());
    hasher.update(b.to_le_bytes());
    let digest = hasher.finalize();
    u64::from_le_bytes(digest[..8].try_into().expect("8 bytes"))
}

#[derive(Serialize)]
struct Manifest {
    command: String,
    version: String,
    timestamp_unix: u64,
    config_sha256: String,
    input_sha256: BTreeMap<String, String>,
    outputs: Vec<String>,
}

impl Pipeline {
    pub fn new(config: RunConfig) -> Result<Self> {
        config.validate()?;
        Ok(Pipeline {
            config,
            force: false,
            trace: false,
        })
    }

    fn out(&self) -> &Path {
        &self.config.output_dir
    }

    fn path(&self, name: &str) -> PathBuf {
        self.out().join(name)
    }

    fn seed_for(&self, tag: &str, a: u64, b: u64) -> u64 {
        derive_seed(self.config.seed, tag, a, b)
    }

    fn write_manifest(
        &self,
        command: &str,
        inputs: &[PathBuf],
        outputs: &[PathBuf],
    ) -> Result<PathBuf> {
        let config_text = toml::to_string(&self.config)
            .map_err(|e| Error::Config(format!("config serialization: {e}")))?;
        let mut input_sha256 = BTreeMap::new();
        for p in inputs {
            input_sha256.insert(p.display().to_string(), sha256_file(p)?);
        }
        let manifest = Manifest {
            command: command.to_string(),
            version: env!("CARGO_PKG_VERSION").to_string(),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
            config_sha256: hex_digest(config_text.as_bytes()),
            input_sha256,
            outputs: outputs.iter().map(|p| p.display().to_string()).collect(),
        };
        let path = self.path(&format!("manifest_{command}.json"));
        write_json(&path, &manifest)?;
        Ok(path)
    }

    // ----- features -------------------------------------------------

    pub fn cmd_features(&self) -> Result<CommandSummary> {
        let landscape_path = self.path("landscape.csv");
        let reps_path = self.path("landscape_reps.csv");
        let suite_path = self.path("suite.csv");
        let compute_mode = self.config.landscape.mode == DataMode::Compute;

        let mut required = vec![landscape_path.clone(), suite_path.clone()];
        if compute_mode {
            required.push(reps_path.clone());
        }
        if !self.force && required.iter().all(|p| p.exists()) {
            return Ok(CommandSummary {
                command: "features".into(),
                skipped: true,
                outputs: required,
                notes: vec!["outputs exist; rerun with --force to recompute".into()],
            });
        }
        std::fs::create_dir_all(self.out()).map_err(|e| Error::io(self.out(), e))?;

        let instances = self.config.instances();
        write_suite_manifest(&suite_path, &instances)?;

        let mut outputs = vec![suite_path, landscape_path.clone()];
        let mut notes = Vec::new();

        if compute_mode {
            let ela_cfg = ElaConfig {
                curv_points_budget: self.config.landscape.curv_points_budget,
                ..ElaConfig::default()
            };
            let n = self.config.sample_size();
            let repetitions = self.config.sampling.repetitions;
            let export_designs = self.config.sampling.export_designs;
            let designs_dir = self.path("designs");

            type InstanceRows = (ProblemInstance, Vec<FeatureMap>, FeatureMap);
            let per_instance: Vec<Result<InstanceRows>> =
                crate::exec::map_indexed(&instances, |_, inst| {
                    let mut ev = make_problem(inst.fid, inst.iid, inst.dim)?;
                    let base_seed =
                        self.seed_for("sampling", u64::from(inst.fid), u64::from(inst.iid));
                    let samples = build_design(&mut ev, n, repetitions, base_seed)?;
                    let mut maps = Vec::with_capacity(repetitions);
                    for s in &samples {
                        if export_designs {
                            std::fs::create_dir_all(&designs_dir)
                                .map_err(|e| Error::io(&designs_dir, e))?;
                            let path = designs_dir.join(format!(
                                "f{:02}_i{:02}_r{}.csv",
                                inst.fid, inst.iid, s.repetition_index
                            ));
                            write_design_csv(&path, s)?;
                        }
                        maps.push(compute_features(s, &mut ev, &ela_cfg)?);
                    }
                    let aggregated = aggregate_repetitions(&maps)?;
                    Ok((*inst, maps, aggregated))
                });

            let mut rep_rows = Vec::new();
            let mut records = Vec::new();
            for item in per_instance {
                let (inst, maps, aggregated) = item?;
                for (r, map) in maps.into_iter().enumerate() {
                    rep_rows.push((inst, r, map));
                }
                records.push(FeatureRecord {
                    instance: inst,
                    values: aggregated,
                });
            }
            write_repetition_csv(&reps_path, &rep_rows)?;
            write_landscape_csv(&landscape_path, &records)?;
            outputs.push(reps_path);
            notes.push(format!(
                "computed {} features for {} instances",
                records[0].values.len(),
                records.len()
            ));
        } else {
            let source = self.config.landscape.path.clone().expect("validated");
            let records = read_landscape_csv(&source)?;
            self.check_instance_coverage(
                &records.iter().map(|r| r.instance).collect::<Vec<_>>(),
            )?;
            write_landscape_csv(&landscape_path, &records)?;
            notes.push(format!(
                "ingested {} records from {}",
                records.len(),
                source.display()
            ));
        }

        let manifest = self.write_manifest("features", &[], &outputs)?;
        outputs.push(manifest);
        Ok(CommandSummary {
            command: "features".into(),
            skipped: false,
            outputs,
            notes,
        })
    }

    fn check_instance_coverage(&self, got: &[ProblemInstance]) -> Result<()> {
        let expected: std::collections::BTreeSet<(u32, u32)> = self
            .config
            .instances()
            .iter()
            .map(|i| (i.fid, i.iid))
            .collect();
        let present: std::collections::BTreeSet<(u32, u32)> =
            got.iter().map(|i| (i.fid, i.iid)).collect();
        let missing: Vec<_> = expected.difference(&present).collect();
        if !missing.is_empty() {
            return Err(Error::Data(format!(
                "ingested data does not cover the configured suite; missing {missing:?}"
            )));
        }
        Ok(())
    }

    // ----- performance ----------------------------------------------

    pub fn cmd_performance(&self) -> Result<CommandSummary> {
        let perf_path = self.path("performance.csv");
        if !self.force && perf_path.exists() {
            return Ok(CommandSummary {
                command: "performance".into(),
                skipped: true,
                outputs: vec![perf_path],
                notes: vec!["output exists; rerun with --force to recompute".into()],
            });
        }
        std::fs::create_dir_all(self.out()).map_err(|e| Error::io(self.out(), e))?;

        let mut notes = Vec::new();
        let records: Vec<PerformanceRecord> = match self.config.performance.mode {
            DataMode::Compute => {
                let instances = self.config.instances();
                let runs = self.config.performance.runs;
                let budget = self.config.performance.budget;
                let trace = self.trace;
                let trace_dir = self.path("trace");
                let per_instance: Vec<Result<PerformanceRecord>> =
                    crate::exec::map_indexed(&instances, |_, inst| {
                        let base = run_seed_base(*inst);
                        let mut precisions = Vec::with_capacity(runs);
                        for k in 0..runs {
                            let mut ev = make_problem(inst.fid, inst.iid, inst.dim)?;
                            let mut log: Vec<GenerationLog> = Vec::new();
                            let trace_arg = trace.then_some(&mut log);
                            let best =
                                run_cmaes_traced(&mut ev, budget, base + k as u64, trace_arg)?;
                            if trace {
                                std::fs::create_dir_all(&trace_dir)
                                    .map_err(|e| Error::io(&trace_dir, e))?;
                                let path = trace_dir.join(format!(
                                    "f{:02}_i{:02}_r{k}.jsonl",
                                    inst.fid, inst.iid
                                ));
                                let mut text = String::new();
                                for line in &log {
                                    text.push_str(
                                        &serde_json::to_string(line).expect("plain struct"),
                                    );
                                    text.push('\n');
                                }
                                write_text(&path, &text)?;
                            }
                            precisions.push(best);
                        }
                        record_from_precisions(*inst, &precisions, budget)
                    });
                let records = per_instance.into_iter().collect::<Result<Vec<_>>>()?;
                notes.push(format!(
                    "ran {} x {runs} optimizer runs at budget {budget}",
                    records.len()
                ));
                records
            }
            DataMode::Ingest => {
                let source = self.config.performance.path.clone().expect("validated");
                let records = ingest_performance_csv(&source, self.config.suite.dim)?;
                self.check_instance_coverage(
                    &records.iter().map(|r| r.instance).collect::<Vec<_>>(),
                )?;
                notes.push(format!(
                    "ingested {} records from {}",
                    records.len(),
                    source.display()
                ));
                records
            }
        };
        write_performance_csv(&perf_path, &records)?;
        let mut outputs = vec![perf_path];
        let manifest = self.write_manifest("performance", &[], &outputs)?;
        outputs.push(manifest);
        Ok(CommandSummary {
            command: "performance".into(),
            skipped: false,
            outputs,
            notes,
        })
    }

    // ----- shared loading -------------------------------------------

    fn load_dataset(&self) -> Result<(Dataset, FoldPlan)> {
        let landscape_path = self.path("landscape.csv");
        let perf_path = self.path("performance.csv");
        for (p, producer) in [(&landscape_path, "features"), (&perf_path, "performance")] {
            if !p.exists() {
                return Err(Error::Data(format!(
                    "{} not found; run the `{producer}` command first",
                    p.display()
                )));
            }
        }
        let features = read_landscape_csv(&landscape_path)?;
        let performance = ingest_performance_csv(&perf_path, self.config.suite.dim)?;
        let data = assemble_dataset(&features, &performance)?;
        let plan = build_fold_plan(&data.instances, self.config.n_folds())?;
        Ok((data, plan))
    }

    fn model_path(&self, spec: &ModelSpec, fold: usize) -> PathBuf {
        self.path(&format!("models/{}/fold{fold}.json", spec.id()))
    }

    fn load_model(&self, spec: &ModelSpec, fold: usize) -> Result<TrainedModel> {
        let path = self.model_path(spec, fold);
        if !path.exists() {
            return Err(Error::Data(format!(
                "{} not found; run the `train-eval` command first",
                path.display()
            )));
        }
        let text = std::fs::read_to_string(&path).map_err(|e| Error::io(&path, e))?;
        serde_json::from_str(&text).map_err(|e| Error::Data(format!("{}: {e}", path.display())))
    }

    // ----- train-eval -----------------------------------------------

    pub fn cmd_train_eval(&self) -> Result<CommandSummary> {
        let (data, plan) = self.load_dataset()?;
        let folds_path = self.path("folds.csv");
        write_fold_plan_csv(&folds_path, &plan)?;

        let mut outputs = vec![folds_path];
        let mut notes = Vec::new();
        if !data.dropped_features.is_empty() {
            notes.push(format!(
                "dropped feature columns with missing values: {}",
                data.dropped_features.join(", ")
            ));
        }

        let mut tables: BTreeMap<String, MaeTable> = BTreeMap::new();
        let mut prediction_lines = String::from("model_id,fid,iid,fold,target,predicted,truth\n");
        for (m_idx, entry) in self.config.models.iter().enumerate() {
            let spec = entry.to_spec()?;
            let seed = self.seed_for("cv", m_idx as u64, 0);
            let cv = run_cv(&data, &spec, &plan, seed)
                .map_err(|e| e.with_context(format!("model {}", spec.id())))?;
            for model in &cv.models {
                let path = self.model_path(&spec, model.fold);
                let json = serde_json::to_string(model)
                    .map_err(|e| Error::Data(format!("model serialization: {e}")))?;
                write_text(&path, &json)?;
                outputs.push(path);
            }
            if spec.family == crate::models::Family::Mlp {
                if let crate::models::ModelKind::Mlp(net) = &cv.models[0].model {
                    notes.push(format!(
                        "{}: {} trainable parameters",
                        spec.id(),
                        net.param_count()
                    ));
                }
            }
            let target_names: Vec<String> =
                spec.target.names().iter().map(|s| s.to_string()).collect();
            let table = mae_table(&cv.predictions, &plan, &target_names)?;
            tables.insert(spec.id(), table);
            append_prediction_rows(&mut prediction_lines, &spec, &cv.predictions);
        }

        let predictions_path = self.path("predictions.csv");
        write_text(&predictions_path, &prediction_lines)?;
        outputs.push(predictions_path);

        let report_path = self.path("mae_report.json");
        write_json(&report_path, &MaeReport { tables })?;
        outputs.push(report_path);

        let inputs = vec![self.path("landscape.csv"), self.path("performance.csv")];
        let manifest = self.write_manifest("train_eval", &inputs, &outputs)?;
        outputs.push(manifest);
        Ok(CommandSummary {
            command: "train-eval".into(),
            skipped: false,
            outputs,
            notes,
        })
    }

    // ----- explain ---------------------------------------------------

    fn explain_fold(
        &self,
        entry_index: usize,
        spec: &ModelSpec,
        fold: usize,
        data: &Dataset,
        plan: &FoldPlan,
    ) -> Result<(TrainedModel, Explanation)> {
        let model = self.load_model(spec, fold)?;
        let train_idx: Vec<usize> = (0..data.instances.len())
            .filter(|&i| plan.fold_of(&data.instances[i]) != Some(fold))
            .collect();
        let rows: Vec<Vec<f64>> = train_idx.iter().map(|&i| data.x[i].clone()).collect();
        let instances: Vec<ProblemInstance> =
            train_idx.iter().map(|&i| data.instances[i]).collect();
        let opts = ExplainOptions {
            background_cap: self.config.explanation.background_cap,
            n_coalitions: self.config.explanation.n_coalitions,
            seed: self.seed_for("explain", entry_index as u64, fold as u64),
        };
        let explanation = explain_dataset(
            &model,
            &rows,
            &instances,
            &rows,
            &format!("train_fold{fold}"),
            &opts,
        )?;
        Ok((model, explanation))
    }

    pub fn cmd_explain(&self, fold: usize) -> Result<CommandSummary> {
        if fold >= self.config.n_folds() {
            return Err(Error::invalid_argument(
                "fold",
                format!("fold {fold} outside 0..{}", self.config.n_folds()),
            ));
        }
        let (data, plan) = self.load_dataset()?;
        let k = self.config.explanation.top_k.min(data.feature_names.len());
        let mut outputs = Vec::new();

        for (m_idx, entry) in self.config.models.iter().enumerate() {
            let spec = entry.to_spec()?;
            let (model, explanation) = self
                .explain_fold(m_idx, &spec, fold, &data, &plan)
                .map_err(|e| e.with_context(format!("model {}", spec.id())))?;
            let dir = self.path(&format!("explain/{}", spec.id()));
            std::fs::create_dir_all(&dir).map_err(|e| Error::io(&dir, e))?;

            let beeswarm = dir.join(format!("fold{fold}_beeswarm.csv"));
            write_explanation_csv(&beeswarm, &explanation)?;
            outputs.push(beeswarm);

            let mut top: BTreeMap<String, Vec<(String, f64)>> = BTreeMap::new();
            for (t, name) in spec.target.names().iter().enumerate() {
                top.insert(
                    name.to_string(),
                    crate::analysis::global_importance(&explanation, t, k)?,
                );
            }
            let top_path = dir.join(format!("fold{fold}_top{k}.json"));
            write_json(&top_path, &top)?;
            outputs.push(top_path);

            let local = self.local_explanation(&model, &data, fold)?;
            let local_path = dir.join(format!(
                "local_f{:02}_i{:02}.csv",
                self.config.explanation.local_fid, self.config.explanation.local_iid
            ));
            write_explanation_csv(&local_path, &local)?;
            outputs.push(local_path);
        }

        let manifest = self.write_manifest("explain", &[], &outputs)?;
        outputs.push(manifest);
        Ok(CommandSummary {
            command: "explain".into(),
            skipped: false,
            outputs,
            notes: vec![format!("explained fold {fold} training partitions")],
        })
    }

    fn local_explanation(
        &self,
        model: &TrainedModel,
        data: &Dataset,
        fold: usize,
    ) -> Result<Explanation> {
        let fid = self.config.explanation.local_fid;
        let iid = self.config.explanation.local_iid;
        let idx = data
            .instances
            .iter()
            .position(|i| i.fid == fid && i.iid == iid)
            .ok_or_else(|| {
                Error::Data(format!(
                    "local instance (fid {fid}, iid {iid}) not in the dataset"
                ))
            })?;
        let train_rows: Vec<Vec<f64>> = data
            .instances
            .iter()
            .enumerate()
            .filter(|(_, inst)| !(inst.fid == fid && inst.iid == iid))
            .map(|(i, _)| data.x[i].clone())
            .collect();
        let opts = ExplainOptions {
            background_cap: self.config.explanation.background_cap,
            n_coalitions: self.config.explanation.n_coalitions,
            seed: self.seed_for("local", u64::from(fid), u64::from(iid) + fold as u64),
        };
        explain_dataset(
            model,
            &data.x[idx..=idx],
            &data.instances[idx..=idx],
            &train_rows,
            "local",
            &opts,
        )
    }

    // ----- represent -------------------------------------------------

    pub fn cmd_represent(&self) -> Result<CommandSummary> {
        let (data, plan) = self.load_dataset()?;
        let k = self.config.explanation.top_k.min(data.feature_names.len());

        let mut reps: Vec<ModelRepresentation> = Vec::new();
        // (scenario, target name) -> family label -> per-fold reps
        let mut combos: BTreeMap<(String, String), BTreeMap<String, Vec<ModelRepresentation>>> =
            BTreeMap::new();
        let mut clusters: BTreeMap<String, LinkageTree> = BTreeMap::new();

        for (m_idx, entry) in self.config.models.iter().enumerate() {
            let spec = entry.to_spec()?;
            let per_fold: Vec<Result<Vec<ModelRepresentation>>> =
                crate::exec::map_range(plan.n_folds, |fold| {
                    let (_, explanation) = self.explain_fold(m_idx, &spec, fold, &data, &plan)?;
                    Ok(spec
                        .target
                        .names()
                        .iter()
                        .enumerate()
                        .map(|(t, _)| model_representation(&explanation, t, fold))
                        .collect())
                });
            let mut by_target: BTreeMap<usize, Vec<ModelRepresentation>> = BTreeMap::new();
            for fold_reps in per_fold {
                for rep in
                    fold_reps.map_err(|e| e.with_context(format!("model {}", spec.id())))?
                {
                    by_target.entry(rep.target).or_default().push(rep);
                }
            }
            for (t, target_name) in spec.target.names().iter().enumerate() {
                let fold_reps = by_target.remove(&t).unwrap_or_default();
                let key = format!(
                    "{}_{}_{}",
                    spec.family.label(),
                    spec.scenario.label(),
                    target_name
                );
                if fold_reps.len() >= 2 {
                    let vectors: Vec<Vec<f64>> =
                        fold_reps.iter().map(|r| r.signed.clone()).collect();
                    clusters.insert(key, hierarchical_cluster(&vectors)?);
                }
                combos
                    .entry((
                        spec.scenario.label().to_string(),
                        target_name.to_string(),
                    ))
                    .or_default()
                    .entry(spec.family.label().to_string())
                    .or_default()
                    .extend(fold_reps.iter().cloned());
                reps.extend(fold_reps);
            }
        }

        let mut outputs = Vec::new();
        std::fs::create_dir_all(self.out()).map_err(|e| Error::io(self.out(), e))?;
        let embedding_path = self.path("representations.csv");
        write_embedding_csv(&embedding_path, &reps)?;
        outputs.push(embedding_path);

        if self.config.explanation.export_absolute {
            let abs_reps: Vec<ModelRepresentation> = reps
                .iter()
                .map(|r| ModelRepresentation {
                    signed: r.absolute.clone(),
                    ..r.clone()
                })
                .collect();
            let abs_path = self.path("representations_abs.csv");
            write_embedding_csv(&abs_path, &abs_reps)?;
            outputs.push(abs_path);
        }

        let clusters_path = self.path("clusters.json");
        write_json(&clusters_path, &clusters)?;
        outputs.push(clusters_path);

        let mut intersections: BTreeMap<String, TopKIntersections> = BTreeMap::new();
        for ((scenario, target_name), families) in &combos {
            let averaged: BTreeMap<String, ModelRepresentation> = families
                .iter()
                .map(|(family, fold_reps)| {
                    ModelRepresentation::average(fold_reps).map(|avg| (family.clone(), avg))
                })
                .collect::<Result<_>>()?;
            intersections.insert(
                format!("{scenario}_{target_name}"),
                top_k_intersection(&averaged, k)?,
            );
        }
        let intersections_path = self.path("intersections.json");
        write_json(&intersections_path, &intersections)?;
        outputs.push(intersections_path);

        let manifest = self.write_manifest("represent", &[], &outputs)?;
        outputs.push(manifest);
        Ok(CommandSummary {
            command: "represent".into(),
            skipped: false,
            outputs,
            notes: vec![format!("{} representation rows", reps.len())],
        })
    }

    pub fn cmd_all(&self) -> Result<Vec<CommandSummary>> {
        Ok(vec![
            self.cmd_features()?,
            self.cmd_performance()?,
            self.cmd_train_eval()?,
            self.cmd_explain(0)?,
            self.cmd_represent()?,
        ])
    }
}

#[derive(Serialize)]
struct MaeReport {
    tables: BTreeMap<String, MaeTable>,
}

fn append_prediction_rows(out: &mut String, spec: &ModelSpec, predictions: &[OofPrediction]) {
    for p in predictions {
        for (t, name) in spec.target.names().iter().enumerate() {
            out.push_str(&format!(
                "{},{},{},{},{},{},{}\n",
                spec.id(),
                p.instance.fid,
                p.instance.iid,
                p.fold,
                name,
                p.predicted[t],
                p.truth[t]
            ));
        }
    }
}
