//! End-to-end toolkit for landscape-aware performance prediction of
//! black-box optimizers, with Shapley-value explanations of the trained
//! predictors.
//!
//! The pipeline has four stages, each usable on its own:
//!
//! 1. [`problems`] + [`sampling`] + [`ela`]: build a benchmark suite of
//!    seeded problem instances, draw space-filling designs, and compute
//!    exploratory landscape analysis (ELA) features per instance.
//! 2. [`performance`]: run a baseline CMA-ES under a fixed evaluation
//!    budget (or ingest externally produced results) to obtain the
//!    reached target precision per instance.
//! 3. [`models`] + [`cv`]: train decision-tree, random-forest, and
//!    feed-forward-network regressors (single- and multi-target) under
//!    an instance-wise cross-validation plan.
//! 4. [`shap`] + [`analysis`]: explain every prediction with exact
//!    (trees) or sampled (network) Shapley values and aggregate the
//!    explanations into importance rankings, model representations,
//!    clusterings, and top-k feature intersections.
//!
//! The [`pipeline`] module wires the stages into the CLI commands.

pub mod analysis;
pub mod cv;
pub mod ela;
mod error;
pub mod exec;
pub mod models;
pub mod performance;
pub mod pipeline;
pub mod problems;
pub mod sampling;
pub mod shap;
pub mod stats;

pub use error::{Error, ErrorClass, Result};
