//! End-to-end checks of the command-line interface: subcommand flow,
//! ingestion paths, idempotent reruns, and the documented exit codes
//! (0 success, 2 config error, 3 data error).

use std::path::Path;
use std::process::Command;

const EXE: &str = env!("CARGO_BIN_EXE_ela-explain");

fn write_small_config(dir: &Path) -> std::path::PathBuf {
    let out = dir.join("out");
    let config = format!(
        r#"
seed = 7
output_dir = "{}"

[suite]
fids = [1, 3]
iids = [1, 3]
dim = 2

[sampling]
points_per_dim = 10
repetitions = 2

[performance]
budget = 300
runs = 2

[[models]]
family = "tree"
scenario = "str"
target = "precision"

[[models]]
family = "forest"
scenario = "mtr"
target = "both"

[[models]]
family = "mlp"
scenario = "str"
target = "log_precision"
epochs = 5

[explanation]
top_k = 5
n_coalitions = 130
background_cap = 8
local_fid = 3
local_iid = 1
"#,
        out.display()
    );
    let path = dir.join("config.toml");
    std::fs::write(&path, config).unwrap();
    path
}

fn run(args: &[&str]) -> std::process::Output {
    Command::new(EXE).args(args).output().unwrap()
}

#[test]
fn full_flow_trace_and_idempotency() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_small_config(dir.path());
    let config = config.to_str().unwrap();
    let out = dir.path().join("out");

    let result = run(&["--config", config, "features"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    assert!(out.join("landscape.csv").exists());
    assert!(out.join("landscape_reps.csv").exists());
    assert!(out.join("suite.csv").exists());

    // rerun without --force: skipped, bytes unchanged
    let before = std::fs::read(out.join("landscape.csv")).unwrap();
    let rerun = run(&["--config", config, "features"]);
    assert!(rerun.status.success());
    assert!(String::from_utf8_lossy(&rerun.stderr).contains("skipped"));
    assert_eq!(before, std::fs::read(out.join("landscape.csv")).unwrap());

    let result = run(&["--config", config, "performance", "--trace"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    assert!(out.join("performance.csv").exists());
    let traces: Vec<_> = std::fs::read_dir(out.join("trace")).unwrap().collect();
    assert_eq!(traces.len(), 6 * 2); // instances x runs
    let one = std::fs::read_to_string(traces[0].as_ref().unwrap().path()).unwrap();
    let first_line: serde_json::Value = serde_json::from_str(one.lines().next().unwrap()).unwrap();
    assert!(first_line["evaluations"].as_u64().unwrap() > 0);

    let result = run(&["--config", config, "train-eval"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    assert!(out.join("mae_report.json").exists());
    assert!(out.join("folds.csv").exists());
    assert!(out.join("predictions.csv").exists());
    assert!(out.join("models/dt_str_precision/fold2.json").exists());

    let result = run(&["--config", config, "explain", "--fold", "1"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    assert!(out
        .join("explain/dt_str_precision/fold1_beeswarm.csv")
        .exists());
    assert!(out
        .join("explain/mlp_str_log_precision/local_f03_i01.csv")
        .exists());

    let result = run(&["--config", config, "represent"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    assert!(out.join("representations.csv").exists());
    assert!(out.join("clusters.json").exists());
    assert!(out.join("intersections.json").exists());

    // representation rows: dt_str (1 target) + mlp_str (1) + rf_mtr (2) = 4 per fold, 3 folds
    let reps = std::fs::read_to_string(out.join("representations.csv")).unwrap();
    assert_eq!(reps.lines().count() - 1, 12);
}

#[test]
fn malformed_config_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.toml");
    std::fs::write(&path, "suite = { fids = [99] }\n").unwrap();
    let result = run(&["--config", path.to_str().unwrap(), "features"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn missing_inputs_exit_with_code_3() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_small_config(dir.path());
    let result = run(&["--config", config.to_str().unwrap(), "train-eval"]);
    assert_eq!(result.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("features"), "{stderr}");
}

#[test]
fn out_of_range_fold_exits_with_code_2() {
    let dir = tempfile::tempdir().unwrap();
    let config = write_small_config(dir.path());
    let result = run(&["--config", config.to_str().unwrap(), "explain", "--fold", "9"]);
    assert_eq!(result.status.code(), Some(2));
}

#[test]
fn ingestion_flow_with_external_files() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("out");
    let landscape = dir.path().join("external_landscape.csv");
    let performance = dir.path().join("external_performance.csv");

    // two computed-style columns plus one carrying missing values
    let mut landscape_text = String::from("fid,iid,dim,ela_distr.skewness,cm_angle.dist,nbc.nn_nb.cor\n");
    let mut perf_text = String::from("fid,iid,target\n");
    for fid in [1u32, 3] {
        for iid in 1..=3u32 {
            let marker = if fid == 1 && iid == 2 { "NA" } else { "0.5" };
            landscape_text.push_str(&format!(
                "{fid},{iid},2,{},{marker},{}\n",
                fid as f64 * 0.1 + iid as f64,
                iid as f64 * -0.2
            ));
            perf_text.push_str(&format!("{fid},{iid},{}\n", (fid + iid) as f64));
        }
    }
    std::fs::write(&landscape, landscape_text).unwrap();
    std::fs::write(&performance, perf_text).unwrap();

    let config_path = dir.path().join("config.toml");
    std::fs::write(
        &config_path,
        format!(
            r#"
output_dir = "{}"

[suite]
fids = [1, 3]
iids = [1, 3]
dim = 2

[landscape]
mode = "ingest"
path = "{}"

[performance]
mode = "ingest"
path = "{}"

[[models]]
family = "tree"
scenario = "str"
target = "precision"

[explanation]
top_k = 2
"#,
            out.display(),
            landscape.display(),
            performance.display()
        ),
    )
    .unwrap();
    let config = config_path.to_str().unwrap();

    assert!(run(&["--config", config, "features"]).status.success());
    assert!(run(&["--config", config, "performance"]).status.success());
    let result = run(&["--config", config, "train-eval"]);
    assert!(result.status.success(), "{}", String::from_utf8_lossy(&result.stderr));
    // the column with missing values is excluded from the model matrix
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("cm_angle.dist"), "{stderr}");

    // inconsistent log_target column is a row-addressed data error
    std::fs::write(&performance, "fid,iid,target,log_target\n1,1,99.0,1.99\n").unwrap();
    let result = run(&["--config", config, "performance", "--force"]);
    assert_eq!(result.status.code(), Some(3));
    let stderr = String::from_utf8_lossy(&result.stderr);
    assert!(stderr.contains("row 2"), "{stderr}");
}

#[test]
fn profile_flag_selects_defaults() {
    // `--profile paper` without a config is accepted; just verify the
    // CLI wiring by checking that an invalid explicit seed parse fails
    // while a valid one is accepted at parse level (command itself not
    // run to completion here).
    let result = Command::new(EXE)
        .args(["--profile", "invalid", "features"])
        .output()
        .unwrap();
    assert_eq!(result.status.code(), Some(2)); // clap usage error
}
