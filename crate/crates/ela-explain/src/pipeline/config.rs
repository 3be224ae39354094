//! Declarative run configuration. The desk profile (default) finishes
//! the full pipeline in minutes; the paper profile mirrors the full
//! experimental setup (24 problems × 50 instances at dimension 5,
//! 50D samples × 10 repetitions, 10 optimizer runs at budget 50,000).

use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::models::{Family, ModelSpec, Scenario, TargetKind};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Profile {
    Desk,
    Paper,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SuiteConfig {
    pub fids: Vec<u32>,
    /// Inclusive instance range [lo, hi]; iids lo..=hi per problem.
    pub iids: [u32; 2],
    pub dim: usize,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            fids: vec![1, 3, 8, 13, 21],
            iids: [1, 5],
            dim: 2,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct SamplingConfig {
    /// Sample size is points_per_dim * dim.
    pub points_per_dim: usize,
    pub repetitions: usize,
    pub export_designs: bool,
}

impl Default for SamplingConfig {
    fn default() -> Self {
        SamplingConfig {
            points_per_dim: 50,
            repetitions: 3,
            export_designs: false,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DataMode {
    /// Compute (landscape) or run the optimizer (performance).
    #[serde(alias = "run")]
    Compute,
    Ingest,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct LandscapeConfig {
    pub mode: DataMode,
    /// External landscape CSV for ingest mode.
    pub path: Option<PathBuf>,
    pub curv_points_budget: usize,
}

impl Default for LandscapeConfig {
    fn default() -> Self {
        LandscapeConfig {
            mode: DataMode::Compute,
            path: None,
            curv_points_budget: 20,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct PerformanceConfig {
    pub mode: DataMode,
    pub budget: u64,
    pub runs: usize,
    /// External performance CSV for ingest mode.
    pub path: Option<PathBuf>,
}

impl Default for PerformanceConfig {
    fn default() -> Self {
        PerformanceConfig {
            mode: DataMode::Compute,
            budget: 2_000,
            runs: 3,
            path: None,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ModelEntry {
    pub family: Family,
    pub scenario: Scenario,
    pub target: TargetKind,
    pub max_depth: Option<usize>,
    pub min_leaf: Option<usize>,
    pub n_estimators: Option<usize>,
    pub bootstrap: Option<bool>,
    pub epochs: Option<usize>,
    pub batch_size: Option<usize>,
    pub learning_rate: Option<f64>,
    pub dropout: Option<f64>,
}

impl Default for ModelEntry {
    fn default() -> Self {
        ModelEntry {
            family: Family::Tree,
            scenario: Scenario::Str,
            target: TargetKind::Precision,
            max_depth: None,
            min_leaf: None,
            n_estimators: None,
            bootstrap: None,
            epochs: None,
            batch_size: None,
            learning_rate: None,
            dropout: None,
        }
    }
}

impl ModelEntry {
    fn new(family: Family, scenario: Scenario, target: TargetKind) -> Self {
        ModelEntry {
            family,
            scenario,
            target,
            ..ModelEntry::default()
        }
    }

    pub fn to_spec(&self) -> Result<ModelSpec> {
        let mut spec = ModelSpec::new(self.family, self.scenario, self.target)?;
        if let Some(d) = self.max_depth {
            spec.tree.max_depth = d;
            spec.forest.max_depth = d;
        }
        if let Some(m) = self.min_leaf {
            spec.tree.min_leaf = m;
            spec.forest.min_leaf = m;
        }
        if let Some(n) = self.n_estimators {
            spec.forest.n_estimators = n;
        }
        if let Some(b) = self.bootstrap {
            spec.forest.bootstrap = b;
        }
        if let Some(e) = self.epochs {
            spec.mlp.epochs = e;
        }
        if let Some(b) = self.batch_size {
            spec.mlp.batch_size = b;
        }
        if let Some(lr) = self.learning_rate {
            spec.mlp.learning_rate = lr;
        }
        if let Some(d) = self.dropout {
            spec.mlp.dropout = d;
        }
        Ok(spec)
    }
}

fn default_models() -> Vec<ModelEntry> {
    let mut out = Vec::new();
    for family in [Family::Tree, Family::Forest, Family::Mlp] {
        out.push(ModelEntry::new(family, Scenario::Str, TargetKind::Precision));
        out.push(ModelEntry::new(family, Scenario::Str, TargetKind::LogPrecision));
        out.push(ModelEntry::new(family, Scenario::Mtr, TargetKind::Both));
    }
    out
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct ExplanationConfig {
    pub top_k: usize,
    /// KernelSHAP coalitions (0 = the 2F + 2048 default).
    pub n_coalitions: usize,
    pub background_cap: usize,
    /// Instance singled out for the local explanation.
    pub local_fid: u32,
    pub local_iid: u32,
    /// Also export the mean-|Shapley| variant of the embedding input.
    pub export_absolute: bool,
}

impl Default for ExplanationConfig {
    fn default() -> Self {
        ExplanationConfig {
            top_k: 10,
            n_coalitions: 300,
            background_cap: 25,
            local_fid: 13,
            local_iid: 1,
            export_absolute: false,
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    pub output_dir: PathBuf,
    pub suite: SuiteConfig,
    pub sampling: SamplingConfig,
    pub landscape: LandscapeConfig,
    pub performance: PerformanceConfig,
    pub models: Vec<ModelEntry>,
    pub explanation: ExplanationConfig,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 42,
            output_dir: PathBuf::from("out"),
            suite: SuiteConfig::default(),
            sampling: SamplingConfig::default(),
            landscape: LandscapeConfig::default(),
            performance: PerformanceConfig::default(),
            models: default_models(),
            explanation: ExplanationConfig::default(),
        }
    }
}

impl RunConfig {
    pub fn profile(profile: Profile) -> Self {
        match profile {
            Profile::Desk => RunConfig::default(),
            Profile::Paper => RunConfig {
                suite: SuiteConfig {
                    fids: (1..=24).collect(),
                    iids: [1, 50],
                    dim: 5,
                },
                sampling: SamplingConfig {
                    points_per_dim: 50,
                    repetitions: 10,
                    export_designs: false,
                },
                performance: PerformanceConfig {
                    mode: DataMode::Compute,
                    budget: 50_000,
                    runs: 10,
                    path: None,
                },
                explanation: ExplanationConfig {
                    n_coalitions: 0, // 2F + 2048
                    background_cap: 100,
                    local_fid: 11,
                    local_iid: 1,
                    ..ExplanationConfig::default()
                },
                output_dir: PathBuf::from("out-paper"),
                ..RunConfig::default()
            },
        }
    }

    pub fn from_file(path: &Path) -> Result<Self> {
        let content = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let config: RunConfig = toml::from_str(&content)
            .map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.suite.fids.is_empty() {
            return Err(Error::Config("suite.fids is empty".into()));
        }
        for &fid in &self.suite.fids {
            if !(1..=24).contains(&fid) {
                return Err(Error::Config(format!("suite.fids contains {fid} (valid: 1..=24)")));
            }
        }
        if self.suite.iids[0] < 1 || self.suite.iids[1] < self.suite.iids[0] {
            return Err(Error::Config(format!(
                "suite.iids range {:?} is invalid",
                self.suite.iids
            )));
        }
        if self.suite.dim < 2 {
            return Err(Error::Config("suite.dim must be >= 2".into()));
        }
        if self.sampling.points_per_dim == 0 || self.sampling.repetitions == 0 {
            return Err(Error::Config("sampling needs points and repetitions".into()));
        }
        if self.models.is_empty() {
            return Err(Error::Config("no models configured".into()));
        }
        for m in &self.models {
            m.to_spec()?;
        }
        if self.landscape.mode == DataMode::Ingest && self.landscape.path.is_none() {
            return Err(Error::Config("landscape.mode = ingest needs landscape.path".into()));
        }
        if self.performance.mode == DataMode::Ingest && self.performance.path.is_none() {
            return Err(Error::Config(
                "performance.mode = ingest needs performance.path".into(),
            ));
        }
        Ok(())
    }

    pub fn sample_size(&self) -> usize {
        self.sampling.points_per_dim * self.suite.dim
    }

    pub fn n_folds(&self) -> usize {
        (self.suite.iids[1] - self.suite.iids[0] + 1) as usize
    }

    pub fn instances(&self) -> Vec<crate::problems::ProblemInstance> {
        let mut out = Vec::new();
        let mut fids = self.suite.fids.clone();
        fids.sort_unstable();
        for fid in fids {
            for iid in self.suite.iids[0]..=self.suite.iids[1] {
                out.push(crate::problems::ProblemInstance::new(fid, iid, self.suite.dim));
            }
        }
        out
    }
}
