//! Acceptance suite: one test per criterion, each printing a PASS line
//! when it holds. Tolerances are pinned in the assertions.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;
use std::time::Instant;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use ela_explain::analysis::{global_importance, mean_row, model_representation, top_k_intersection};
use ela_explain::cv::{assemble_dataset, build_fold_plan, Standardizer, TrainedModel};
use ela_explain::ela::{compute_ela_curv, compute_ela_distr, compute_ela_meta, read_landscape_csv};
use ela_explain::models::{
    best_mae_split, fit_random_forest, Family, ForestParams, MlpModel, ModelSpec,
    Node, Scenario, TargetKind, TreeModel, STR_WIDTHS,
};
use ela_explain::performance::{ingest_performance_csv, log_transform};
use ela_explain::pipeline::{Pipeline, Profile, RunConfig};
use ela_explain::problems::Objective;
use ela_explain::sampling::{improved_lhs, is_stratified, DesignSample};
use ela_explain::shap::{brute_force_shap, forest_shap, tree_shap, explain_dataset, ExplainOptions};

fn pass(number: u32, name: &str) {
    println!("ACCEPTANCE {number:02} {name}: PASS");
}

/// Random tree with coverage counts and possibly repeated features
/// along paths.
fn random_tree(n_features: usize, depth: usize, n_targets: usize, rng: &mut ChaCha8Rng) -> TreeModel {
    fn grow(
        nodes: &mut Vec<Node>,
        n_features: usize,
        n_targets: usize,
        depth: usize,
        coverage: usize,
        rng: &mut ChaCha8Rng,
    ) -> usize {
        if depth == 0 || coverage < 2 || rng.random::<f64>() < 0.25 {
            let prediction = (0..n_targets).map(|_| rng.random_range(-5.0..5.0)).collect();
            nodes.push(Node::Leaf {
                prediction,
                coverage,
            });
            return nodes.len() - 1;
        }
        let idx = nodes.len();
        nodes.push(Node::Internal {
            feature: rng.random_range(0..n_features),
            threshold: rng.random_range(-1.0..1.0),
            left: 0,
            right: 0,
            coverage,
        });
        let left_cov = rng.random_range(1..coverage);
        let l = grow(nodes, n_features, n_targets, depth - 1, left_cov, rng);
        let r = grow(nodes, n_features, n_targets, depth - 1, coverage - left_cov, rng);
        if let Node::Internal { left, right, .. } = &mut nodes[idx] {
            *left = l;
            *right = r;
        }
        idx
    }
    let mut nodes = Vec::new();
    grow(&mut nodes, n_features, n_targets, depth, 512, rng);
    TreeModel {
        nodes,
        n_features,
        n_targets,
    }
}

#[test]
fn acceptance_01_tree_shap_equals_brute_force() {
    let started = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(10_001);
    for case in 0..200 {
        let n_features = rng.random_range(2..=8);
        let depth = rng.random_range(1..=5);
        let n_targets = 1 + case % 2;
        let tree = random_tree(n_features, depth, n_targets, &mut rng);
        for _ in 0..10 {
            let x: Vec<f64> = (0..n_features).map(|_| rng.random_range(-1.2..1.2)).collect();
            let (fast, base_fast) = tree_shap(&tree, &x).unwrap();
            let (brute, base_brute) = brute_force_shap(&tree, &x).unwrap();
            for t in 0..n_targets {
                assert!((base_fast[t] - base_brute[t]).abs() <= 1e-9);
                for f in 0..n_features {
                    assert!(
                        (fast[f][t] - brute[f][t]).abs() <= 1e-9,
                        "case {case}: feature {f} target {t}: {} vs {}",
                        fast[f][t],
                        brute[f][t]
                    );
                }
            }
        }
    }
    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 30, "took {elapsed:?}");
    pass(1, "tree_shap equals brute force on 200 random trees");
}

/// Audits every exported explanation row of a finished desk run: for
/// each explained instance and target, base + sum(shap) must equal the
/// model prediction.
fn audit_exported_explanations(out: &Path, config: &RunConfig) {
    let features = read_landscape_csv(&out.join("landscape.csv")).unwrap();
    let performance = ingest_performance_csv(&out.join("performance.csv"), config.suite.dim).unwrap();
    let data = assemble_dataset(&features, &performance).unwrap();
    let row_by_key: HashMap<(u32, u32), &Vec<f64>> = data
        .instances
        .iter()
        .zip(&data.x)
        .map(|(inst, row)| ((inst.fid, inst.iid), row))
        .collect();

    let mut audited_rows = 0usize;
    for entry in std::fs::read_dir(out.join("explain")).unwrap() {
        let model_dir = entry.unwrap().path();
        let model_id = model_dir.file_name().unwrap().to_string_lossy().to_string();
        for csv in std::fs::read_dir(&model_dir).unwrap() {
            let csv_path = csv.unwrap().path();
            if csv_path.extension().and_then(|e| e.to_str()) != Some("csv") {
                continue;
            }
            let fold: usize = {
                let name = csv_path.file_name().unwrap().to_string_lossy().to_string();
                if name.starts_with("fold") {
                    name[4..5].parse().unwrap()
                } else {
                    0 // local explanations come from the fold-0 model
                }
            };
            let model_path = out.join(format!("models/{model_id}/fold{fold}.json"));
            let model: TrainedModel =
                serde_json::from_str(&std::fs::read_to_string(&model_path).unwrap()).unwrap();

            // (instance, target) -> (sum shap, base)
            let mut sums: BTreeMap<(String, usize), (f64, f64)> = BTreeMap::new();
            let content = std::fs::read_to_string(&csv_path).unwrap();
            for line in content.lines().skip(1) {
                let fields: Vec<&str> = line.split(',').collect();
                let key = (fields[0].to_string(), fields[2].parse::<usize>().unwrap());
                let shap: f64 = fields[4].parse().unwrap();
                let base: f64 = fields[5].parse().unwrap();
                let entry = sums.entry(key).or_insert((0.0, base));
                entry.0 += shap;
            }
            for ((instance_id, target), (sum, base)) in sums {
                let parts: Vec<u32> = instance_id.split('_').map(|s| s.parse().unwrap()).collect();
                let row = row_by_key[&(parts[0], parts[1])];
                let pred = model.predict(row).unwrap()[target];
                assert!(
                    (base + sum - pred).abs() <= 1e-9,
                    "{model_id} fold {fold} {instance_id} target {target}: base {base} + sum {sum} != {pred}"
                );
                audited_rows += 1;
            }
        }
    }
    assert!(audited_rows > 0, "no explanation rows found to audit");
}

fn desk_config(dir: &Path) -> RunConfig {
    let mut config = RunConfig::profile(Profile::Desk);
    config.output_dir = dir.to_path_buf();
    config
}

#[test]
fn acceptance_02_efficiency_audit_on_the_desk_run() {
    let dir = tempfile::tempdir().unwrap();
    let config = desk_config(dir.path());
    let pipeline = Pipeline::new(config.clone()).unwrap();
    pipeline.cmd_all().unwrap();
    audit_exported_explanations(dir.path(), &config);
    pass(2, "every exported explanation row satisfies local accuracy");
}

#[test]
fn acceptance_03_mae_split_matches_exhaustive_enumeration() {
    // independent enumeration oracle, written from the definition
    fn oracle(x: &[f64], y: &[Vec<f64>]) -> Option<(f64, f64)> {
        let mut values = x.to_vec();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap());
        values.dedup();
        let mut best: Option<(f64, f64)> = None;
        for w in values.windows(2) {
            let thr = w[0] / 2.0 + w[1] / 2.0;
            let mut loss = 0.0;
            for t in 0..y[0].len() {
                for side in [true, false] {
                    let vals: Vec<f64> = (0..x.len())
                        .filter(|&i| (x[i] <= thr) == side)
                        .map(|i| y[i][t])
                        .collect();
                    let mut sorted = vals.clone();
                    sorted.sort_by(|a, b| a.partial_cmp(b).unwrap());
                    let m = sorted.len();
                    let median = if m % 2 == 1 {
                        sorted[m / 2]
                    } else {
                        0.5 * (sorted[m / 2 - 1] + sorted[m / 2])
                    };
                    loss += vals.iter().map(|v| (v - median).abs()).sum::<f64>();
                }
            }
            if best.is_none() || loss < best.unwrap().1 {
                best = Some((thr, loss));
            }
        }
        best
    }

    let mut rng = ChaCha8Rng::seed_from_u64(10_003);
    for case in 0..200 {
        let n = rng.random_range(4..=30);
        let n_targets = 1 + case % 2;
        let x: Vec<f64> = (0..n).map(|_| rng.random_range(0..10) as f64 * 0.5).collect();
        let y: Vec<Vec<f64>> = (0..n)
            .map(|_| (0..n_targets).map(|_| rng.random_range(0..8) as f64).collect())
            .collect();
        let ours = best_mae_split(&x, &y, 1).unwrap();
        let expected = oracle(&x, &y);
        assert_eq!(ours, expected, "case {case}");
    }
    pass(3, "best_mae_split equals exhaustive threshold enumeration");
}

#[test]
fn acceptance_04_fold_plan_structure() {
    use ela_explain::problems::ProblemInstance;
    // paper profile metadata
    let instances: Vec<ProblemInstance> = (1..=24)
        .flat_map(|fid| (1..=50).map(move |iid| ProblemInstance::new(fid, iid, 5)))
        .collect();
    let plan = build_fold_plan(&instances, 50).unwrap();
    assert_eq!(plan.n_folds, 50);
    for fold in 0..50 {
        let members: Vec<(u32, u32)> = plan
            .assignment
            .iter()
            .filter(|(_, &f)| f == fold)
            .map(|(&k, _)| k)
            .collect();
        assert_eq!(members.len(), 24);
        assert!(members.iter().all(|&(_, iid)| iid as usize == fold + 1));
        let fids: std::collections::BTreeSet<u32> = members.iter().map(|&(fid, _)| fid).collect();
        assert_eq!(fids.len(), 24);
    }
    // desk analog
    let desk: Vec<ProblemInstance> = [1, 3, 8, 13, 21]
        .iter()
        .flat_map(|&fid| (1..=5).map(move |iid| ProblemInstance::new(fid, iid, 2)))
        .collect();
    let plan = build_fold_plan(&desk, 5).unwrap();
    for fold in 0..5 {
        assert_eq!(plan.assignment.values().filter(|&&f| f == fold).count(), 5);
    }
    pass(4, "fold i holds exactly the (i+1)-th instance of every problem");
}

#[test]
fn acceptance_05_log_transform_anchors() {
    assert_eq!(log_transform(0.0).unwrap(), 0.0);
    assert_eq!(log_transform(9.0).unwrap(), 1.0);
    assert_eq!(log_transform(99.0).unwrap(), 2.0);
    pass(5, "log10(1 + p) anchors hold exactly");
}

#[test]
fn acceptance_06_published_table_mean_cross_check() {
    // DT STR target-precision column, per benchmark problem 1..24
    let column = [
        0.074, 132.867, 4.105, 1.605, 0.000, 6.897, 105.273, 0.719, 6.740, 137.634, 39.892,
        139.217, 4.340, 1.416, 1.436, 1.254, 3.446, 11.109, 0.195, 0.289, 0.593, 0.658, 0.549,
        1.816,
    ];
    let printed_mean = 25.089;
    let computed = mean_row(&column);
    assert!(
        (computed - printed_mean).abs() <= 0.01,
        "computed {computed} vs printed {printed_mean}"
    );
    pass(6, "published per-problem column reproduces its printed mean");
}

struct AnalyticObjective {
    dim: usize,
    evals: u64,
    f: fn(&[f64]) -> f64,
}

impl Objective for AnalyticObjective {
    fn dim(&self) -> usize {
        self.dim
    }
    fn bounds(&self) -> (f64, f64) {
        (-5.0, 5.0)
    }
    fn evaluate(&mut self, x: &[f64]) -> ela_explain::Result<f64> {
        self.evals += 1;
        Ok((self.f)(x))
    }
    fn evaluations(&self) -> u64 {
        self.evals
    }
    fn precision(&self, f: f64) -> f64 {
        f
    }
}

#[test]
fn acceptance_07_feature_sanity() {
    let mut rng = ChaCha8Rng::seed_from_u64(10_007);
    let x: Vec<Vec<f64>> = (0..120)
        .map(|_| (0..4).map(|_| rng.random_range(-5.0..5.0)).collect())
        .collect();

    // exactly linear data
    let y_lin: Vec<f64> = x.iter().map(|r| 3.0 + 2.0 * r[0] - r[2]).collect();
    let s = DesignSample {
        x: x.clone(),
        y: y_lin,
        repetition_index: 0,
        seed: 1,
    };
    let meta = compute_ela_meta(&s).unwrap();
    assert!(meta["ela_meta.lin_simple.adj_r2"] >= 0.999);

    // sphere
    let y_sq: Vec<f64> = x.iter().map(|r| r.iter().map(|v| v * v).sum()).collect();
    let s = DesignSample {
        x: x.clone(),
        y: y_sq,
        repetition_index: 0,
        seed: 2,
    };
    let meta = compute_ela_meta(&s).unwrap();
    assert!(meta["ela_meta.quad_simple.adj_r2"] >= 0.999);

    // seeded symmetric sample of 10,000 points
    let sym: Vec<f64> = (0..10_000)
        .map(|_| rng.sample::<f64, _>(rand_distr::StandardNormal))
        .collect();
    let s = DesignSample {
        x: (0..sym.len()).map(|i| vec![i as f64, 0.0]).collect(),
        y: sym,
        repetition_index: 0,
        seed: 3,
    };
    let distr = compute_ela_distr(&s).unwrap();
    assert!(
        distr["ela_distr.skewness"].abs() <= 0.05,
        "skewness {}",
        distr["ela_distr.skewness"]
    );

    // gradient norm of a linear function is sqrt(d)
    let mut obj = AnalyticObjective {
        dim: 5,
        evals: 0,
        f: |x| x.iter().sum(),
    };
    let sample_x: Vec<Vec<f64>> = (0..30)
        .map(|_| (0..5).map(|_| rng.random_range(-4.5..4.5)).collect())
        .collect();
    let sample_y: Vec<f64> = sample_x.iter().map(|r| r.iter().sum()).collect();
    let s = DesignSample {
        x: sample_x,
        y: sample_y,
        repetition_index: 0,
        seed: 4,
    };
    let curv = compute_ela_curv(&s, &mut obj, 10).unwrap();
    let expect = 5.0_f64.sqrt();
    assert!((curv["ela_curv.grad_norm.mean"] - expect).abs() <= 1e-6);
    assert!((curv["ela_curv.grad_norm.min"] - expect).abs() <= 1e-6);
    pass(7, "meta/distr/curv sanity anchors hold");
}

#[test]
fn acceptance_08_lhs_stratification() {
    for seed in 0..100 {
        let dim = 1 + (seed as usize % 5);
        let n = 20 + (seed as usize % 4) * 25;
        let bounds = vec![(-5.0, 5.0); dim];
        let design = improved_lhs(dim, n, &bounds, 20_000 + seed).unwrap();
        assert!(is_stratified(&design, &bounds), "seed {seed}");
    }
    pass(8, "one point per stratum per coordinate on 100 seeded designs");
}

#[test]
fn acceptance_09_mlp_gradient_check() {
    let mut rng = ChaCha8Rng::seed_from_u64(10_009);
    let x: Vec<Vec<f64>> = (0..10)
        .map(|_| (0..6).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let y: Vec<Vec<f64>> = x.iter().map(|r| vec![r[0] - 0.5 * r[3]]).collect();
    let xs: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
    let ys: Vec<&[f64]> = y.iter().map(Vec::as_slice).collect();
    let model = MlpModel::init(6, &STR_WIDTHS, 1, 77);
    let (_, grad_w, grad_b) = model.batch_gradients(&xs, &ys, None);

    let h = 1e-6;
    for probe in 0..20 {
        let layer = rng.random_range(0..model.layers.len());
        let in_weights = probe % 4 != 3;
        let len = if in_weights {
            model.layers[layer].w.len()
        } else {
            model.layers[layer].b.len()
        };
        let idx = rng.random_range(0..len);
        let mut plus = model.clone();
        let mut minus = model.clone();
        if in_weights {
            plus.layers[layer].w[idx] += h;
            minus.layers[layer].w[idx] -= h;
        } else {
            plus.layers[layer].b[idx] += h;
            minus.layers[layer].b[idx] -= h;
        }
        let numeric = (plus.batch_loss(&xs, &ys) - minus.batch_loss(&xs, &ys)) / (2.0 * h);
        let analytic = if in_weights {
            grad_w[layer][idx]
        } else {
            grad_b[layer][idx]
        };
        let rel = (analytic - numeric).abs() / analytic.abs().max(numeric.abs()).max(1e-6);
        assert!(
            rel < 1e-4,
            "probe {probe} layer {layer} idx {idx}: analytic {analytic} vs numeric {numeric}"
        );
    }
    pass(9, "backprop matches central finite differences");
}

#[test]
fn acceptance_10_forest_linearity_in_predictions_and_shap() {
    let mut rng = ChaCha8Rng::seed_from_u64(10_010);
    let x: Vec<Vec<f64>> = (0..80)
        .map(|_| (0..5).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let y: Vec<Vec<f64>> = x.iter().map(|r| vec![r[0] * r[1] + r[4]]).collect();
    let forest = fit_random_forest(&x, &y, ForestParams::new(10, 4), 5).unwrap();
    for _ in 0..1000 {
        let probe: Vec<f64> = (0..5).map(|_| rng.random_range(-1.0..1.0)).collect();
        let pred = forest.predict(&probe).unwrap()[0];
        let mean_pred: f64 = forest
            .trees
            .iter()
            .map(|t| t.predict(&probe).unwrap()[0])
            .sum::<f64>()
            / forest.trees.len() as f64;
        assert!((pred - mean_pred).abs() <= 1e-12);

        let (phi, base) = forest_shap(&forest, &probe).unwrap();
        for f in 0..5 {
            let mean_phi: f64 = forest
                .trees
                .iter()
                .map(|t| tree_shap(t, &probe).unwrap().0[f][0])
                .sum::<f64>()
                / forest.trees.len() as f64;
            assert!((phi[f][0] - mean_phi).abs() <= 1e-12);
        }
        let mean_base: f64 = forest
            .trees
            .iter()
            .map(|t| tree_shap(t, &probe).unwrap().1[0])
            .sum::<f64>()
            / forest.trees.len() as f64;
        assert!((base[0] - mean_base).abs() <= 1e-12);
    }
    pass(10, "forest prediction and shap are exact means over trees");
}

#[test]
fn acceptance_11_desk_pipeline_end_to_end() {
    let started = Instant::now();
    let dir_a = tempfile::tempdir().unwrap();
    let dir_b = tempfile::tempdir().unwrap();
    for dir in [&dir_a, &dir_b] {
        let pipeline = Pipeline::new(desk_config(dir.path())).unwrap();
        pipeline.cmd_all().unwrap();
    }

    // byte-determinism modulo manifests (the only timestamped files)
    let mut files: Vec<std::path::PathBuf> = walk(dir_a.path())
        .into_iter()
        .filter(|p| !p.file_name().unwrap().to_string_lossy().starts_with("manifest_"))
        .collect();
    files.sort();
    assert!(files.len() > 10);
    for file in &files {
        let rel = file.strip_prefix(dir_a.path()).unwrap();
        let a = std::fs::read(file).unwrap();
        let b = std::fs::read(dir_b.path().join(rel)).unwrap_or_else(|_| {
            panic!("{} missing from the second run", rel.display())
        });
        assert_eq!(a, b, "{} differs between runs", rel.display());
    }

    // schema-valid reports
    let report: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(dir_a.path().join("mae_report.json")).unwrap())
            .unwrap();
    let tables = report["tables"].as_object().unwrap();
    assert_eq!(tables.len(), 9);
    for (model_id, table) in tables {
        let per_problem = table["per_problem"].as_object().unwrap();
        assert_eq!(per_problem.len(), 5, "{model_id}");
        let mean: Vec<f64> = table["mean_row"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_f64().unwrap())
            .collect();
        // mean row equals the unweighted mean of per-problem entries
        for (t, m) in mean.iter().enumerate() {
            let column: Vec<f64> = per_problem
                .values()
                .map(|v| v.as_array().unwrap()[t].as_f64().unwrap())
                .collect();
            assert!((m - mean_row(&column)).abs() <= 1e-12);
        }
    }
    let intersections: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir_a.path().join("intersections.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(intersections.as_object().unwrap().len(), 4);

    // efficiency audit over the run's exports
    let config = desk_config(dir_a.path());
    audit_exported_explanations(dir_a.path(), &config);

    let elapsed = started.elapsed();
    assert!(elapsed.as_secs() < 600, "took {elapsed:?}");
    pass(11, "desk pipeline is reproducible, schema-valid, and audited");
}

fn walk(dir: &Path) -> Vec<std::path::PathBuf> {
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir).unwrap() {
        let path = entry.unwrap().path();
        if path.is_dir() {
            out.extend(walk(&path));
        } else {
            out.push(path);
        }
    }
    out
}

#[test]
fn acceptance_12_sparse_signal_recoverability() {
    let mut rng = ChaCha8Rng::seed_from_u64(10_012);
    let n_features = 30;
    let n = 200;
    let signal = [3usize, 11, 22];
    let x: Vec<Vec<f64>> = (0..n)
        .map(|_| (0..n_features).map(|_| rng.random_range(-1.0..1.0)).collect())
        .collect();
    let y: Vec<Vec<f64>> = x
        .iter()
        .map(|r| {
            let noise: f64 = rng.sample::<f64, _>(rand_distr::StandardNormal);
            vec![3.0 * r[signal[0]] - 2.0 * r[signal[1]] + 1.5 * r[signal[2]] + 0.02 * noise]
        })
        .collect();
    let feature_names: Vec<String> = (0..n_features).map(|i| format!("f{i:02}")).collect();
    let instances: Vec<ela_explain::problems::ProblemInstance> = (0..n)
        .map(|i| ela_explain::problems::ProblemInstance::new(1, i as u32 + 1, 2))
        .collect();

    let mut reps_by_family = BTreeMap::new();
    for family in [Family::Tree, Family::Forest, Family::Mlp] {
        let spec = ModelSpec::new(family, Scenario::Str, TargetKind::Precision).unwrap();
        let standardizer = (family == Family::Mlp).then(|| {
            let rows: Vec<&[f64]> = x.iter().map(Vec::as_slice).collect();
            Standardizer::fit(&rows)
        });
        let train_x: Vec<Vec<f64>> = match &standardizer {
            Some(s) => x.iter().map(|r| s.apply(r)).collect(),
            None => x.clone(),
        };
        let model = TrainedModel {
            format_version: "1".into(),
            spec: spec.clone(),
            fold: 0,
            feature_names: feature_names.clone(),
            standardizer,
            model: ela_explain::models::fit_model(&spec, &train_x, &y, 7).unwrap(),
        };
        let opts = ExplainOptions {
            background_cap: 50,
            n_coalitions: 400,
            seed: 11,
        };
        let explanation = explain_dataset(&model, &x, &instances, &x, "train", &opts).unwrap();
        let top10: Vec<String> = global_importance(&explanation, 0, 10)
            .unwrap()
            .into_iter()
            .map(|(name, _)| name)
            .collect();
        for &s in &signal {
            assert!(
                top10.contains(&feature_names[s]),
                "{}: top-10 {:?} misses generating feature {}",
                spec.id(),
                top10,
                feature_names[s]
            );
        }
        reps_by_family.insert(
            family.label().to_string(),
            model_representation(&explanation, 0, 0),
        );
    }

    let result = top_k_intersection(&reps_by_family, 10).unwrap();
    let three_way = &result.regions["dt&mlp&rf"];
    for &s in &signal {
        assert!(
            three_way.contains(&feature_names[s]),
            "three-way region {:?} misses generating feature {}",
            three_way,
            feature_names[s]
        );
    }
    pass(12, "all three families recover the sparse generating features");
}
