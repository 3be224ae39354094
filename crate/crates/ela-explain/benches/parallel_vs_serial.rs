//! Sequential baseline vs rayon for the pipeline's data-parallel
//! sections: per-instance feature computation, optimizer run batches,
//! and per-row tree explanations.

use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};

use ela_explain::ela::{compute_features, ElaConfig};
use ela_explain::exec;
use ela_explain::models::{fit_decision_tree, TreeParams};
use ela_explain::performance::run_cmaes;
use ela_explain::problems::{make_problem, ProblemInstance};
use ela_explain::sampling::build_design;
use ela_explain::shap::tree_shap;

fn instance_list() -> Vec<ProblemInstance> {
    [1u32, 3, 8, 13, 17, 21, 22, 24]
        .iter()
        .map(|&fid| ProblemInstance::new(fid, 1, 2))
        .collect()
}

fn feature_workload(inst: &ProblemInstance) -> f64 {
    let cfg = ElaConfig {
        curv_points_budget: 10,
        ..ElaConfig::default()
    };
    let mut ev = make_problem(inst.fid, inst.iid, inst.dim).unwrap();
    let samples = build_design(&mut ev, 60, 1, 7).unwrap();
    let features = compute_features(&samples[0], &mut ev, &cfg).unwrap();
    features.values().sum()
}

fn bench_feature_batch(c: &mut Criterion) {
    let instances = instance_list();
    let mut group = c.benchmark_group("feature_batch");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| exec::map_indexed_seq(black_box(&instances), |_, inst| feature_workload(inst)))
    });
    group.bench_function("rayon", |b| {
        b.iter(|| exec::map_indexed(black_box(&instances), |_, inst| feature_workload(inst)))
    });
    group.finish();
}

fn bench_optimizer_batch(c: &mut Criterion) {
    let instances = instance_list();
    let run = |inst: &ProblemInstance| {
        let mut ev = make_problem(inst.fid, inst.iid, inst.dim).unwrap();
        run_cmaes(&mut ev, 2000, 5).unwrap()
    };
    let mut group = c.benchmark_group("optimizer_batch");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| exec::map_indexed_seq(black_box(&instances), |_, inst| run(inst)))
    });
    group.bench_function("rayon", |b| {
        b.iter(|| exec::map_indexed(black_box(&instances), |_, inst| run(inst)))
    });
    group.finish();
}

fn bench_explanation_rows(c: &mut Criterion) {
    let n = 512;
    let x: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..8).map(|j| ((i * 31 + j * 7) % 97) as f64 / 97.0).collect())
        .collect();
    let y: Vec<Vec<f64>> = x
        .iter()
        .map(|r| vec![r[0] * 2.0 - r[3] + (r[5] * 6.0).sin()])
        .collect();
    let tree = fit_decision_tree(&x, &y, TreeParams::new(8)).unwrap();

    let mut group = c.benchmark_group("tree_shap_rows");
    group.sample_size(10);
    group.bench_function("sequential", |b| {
        b.iter(|| exec::map_indexed_seq(black_box(&x), |_, row| tree_shap(&tree, row).unwrap()))
    });
    group.bench_function("rayon", |b| {
        b.iter(|| exec::map_indexed(black_box(&x), |_, row| tree_shap(&tree, row).unwrap()))
    });
    group.finish();
}

criterion_group!(
    benches,
    bench_feature_batch,
    bench_optimizer_batch,
    bench_explanation_rows
);
criterion_main!(benches);
