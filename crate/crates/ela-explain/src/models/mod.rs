//! The three regressor families (decision tree, random forest,
//! feed-forward network), each in single- and multi-target form, with
//! the hyperparameter defaults pinned per family and scenario.

pub mod forest;
pub mod mlp;
pub mod split;
pub mod tree;

use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub use forest::{fit_random_forest, ForestModel, ForestParams};
pub use mlp::{fit_mlp, MlpModel, MlpParams, STR_WIDTHS};
pub use split::best_mae_split;
pub use tree::{fit_decision_tree, Node, TreeModel, TreeParams};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Tree,
    Forest,
    Mlp,
}

impl Family {
    pub fn label(self) -> &'static str {
        match self {
            Family::Tree => "dt",
            Family::Forest => "rf",
            Family::Mlp => "mlp",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Scenario {
    Str,
    Mtr,
}

impl Scenario {
    pub fn label(self) -> &'static str {
        match self {
            Scenario::Str => "str",
            Scenario::Mtr => "mtr",
        }
    }
}

/// Which regression target(s) a model predicts.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetKind {
    Precision,
    LogPrecision,
    Both,
}

impl TargetKind {
    pub fn label(self) -> &'static str {
        match self {
            TargetKind::Precision => "precision",
            TargetKind::LogPrecision => "log_precision",
            TargetKind::Both => "both",
        }
    }

    /// Target column names in prediction order.
    pub fn names(self) -> Vec<&'static str> {
        match self {
            TargetKind::Precision => vec!["precision"],
            TargetKind::LogPrecision => vec!["log_precision"],
            TargetKind::Both => vec!["precision", "log_precision"],
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ModelSpec {
    pub family: Family,
    pub scenario: Scenario,
    pub target: TargetKind,
    pub tree: TreeParams,
    pub forest: ForestParams,
    pub mlp: MlpParams,
}

impl ModelSpec {
    /// Spec with the pinned defaults: tree depth 9 (STR) / 10 (MTR);
    /// forest depth 7 with 10 (STR) / 20 (MTR) trees; network trained
    /// 100 epochs, batch 10, step 0.001.
    pub fn new(family: Family, scenario: Scenario, target: TargetKind) -> Result<Self> {
        match (scenario, target) {
            (Scenario::Str, TargetKind::Both) => {
                return Err(Error::invalid_argument(
                    "target",
                    "STR models predict exactly one target",
                ))
            }
            (Scenario::Mtr, TargetKind::Precision | TargetKind::LogPrecision) => {
                return Err(Error::invalid_argument(
                    "target",
                    "MTR models predict both targets",
                ))
            }
            _ => {}
        }
        let mtr = scenario == Scenario::Mtr;
        Ok(ModelSpec {
            family,
            scenario,
            target,
            tree: TreeParams::new(if mtr { 10 } else { 9 }),
            forest: ForestParams::new(if mtr { 20 } else { 10 }, 7),
            mlp: MlpParams::default(),
        })
    }

    pub fn n_targets(&self) -> usize {
        match self.target {
            TargetKind::Both => 2,
            _ => 1,
        }
    }

    pub fn mlp_widths(&self) -> Vec<usize> {
        match self.scenario {
            Scenario::Str => STR_WIDTHS.to_vec(),
            Scenario::Mtr => STR_WIDTHS.iter().map(|w| w * 2).collect(),
        }
    }

    /// Stable identifier used in file names and reports.
    pub fn id(&self) -> String {
        format!(
            "{}_{}_{}",
            self.family.label(),
            self.scenario.label(),
            self.target.label()
        )
    }
}

/// A trained model of any family.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ModelKind {
    Tree(TreeModel),
    Forest(ForestModel),
    Mlp(MlpModel),
}

impl ModelKind {
    pub fn predict(&self, x: &[f64]) -> Result<Vec<f64>> {
        match self {
            ModelKind::Tree(m) => m.predict(x),
            ModelKind::Forest(m) => m.predict(x),
            ModelKind::Mlp(m) => m.predict(x),
        }
    }

    pub fn n_features(&self) -> usize {
        match self {
            ModelKind::Tree(m) => m.n_features,
            ModelKind::Forest(m) => m.n_features,
            ModelKind::Mlp(m) => m.input_dim,
        }
    }

    pub fn n_targets(&self) -> usize {
        match self {
            ModelKind::Tree(m) => m.n_targets,
            ModelKind::Forest(m) => m.n_targets,
            ModelKind::Mlp(m) => m.n_targets,
        }
    }
}

/// Fits the family named by the spec. The caller standardizes features
/// for the network; trees consume raw features.
pub fn fit_model(spec: &ModelSpec, x: &[Vec<f64>], y: &[Vec<f64>], seed: u64) -> Result<ModelKind> {
    if y.first().map_or(0, Vec::len) != spec.n_targets() {
        return Err(Error::invalid_argument(
            "y",
            format!(
                "{} target columns for a {} model",
                y.first().map_or(0, Vec::len),
                spec.scenario.label()
            ),
        ));
    }
    Ok(match spec.family {
        Family::Tree => ModelKind::Tree(fit_decision_tree(x, y, spec.tree)?),
        Family::Forest => ModelKind::Forest(fit_random_forest(x, y, spec.forest, seed)?),
        Family::Mlp => ModelKind::Mlp(fit_mlp(x, y, &spec.mlp_widths(), spec.mlp, seed)?),
    })
}
