//! Benchmark problem suite: 24 single-objective continuous functions on
//! [-5, 5]^dim with seeded per-instance transforms (optimum shift,
//! orthogonal rotation where the base function is rotation-sensitive,
//! objective offset) and exact optimum values.

mod functions;
pub mod transforms;

use std::io::Write;
use std::path::Path;

use functions::InstanceFunction;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

pub const LOWER_BOUND: f64 = -5.0;
pub const UPPER_BOUND: f64 = 5.0;
pub const NUM_PROBLEMS: u32 = 24;

/// Identity of one benchmark problem instance.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct ProblemInstance {
    pub fid: u32,
    pub iid: u32,
    pub dim: usize,
}

impl ProblemInstance {
    pub fn new(fid: u32, iid: u32, dim: usize) -> Self {
        ProblemInstance { fid, iid, dim }
    }
}

/// An evaluatable problem instance. The evaluation counter is the only
/// mutable state; use one evaluator from one thread at a time and spread
/// distinct evaluators across threads freely.
#[derive(Debug, Clone)]
pub struct ProblemEvaluator {
    instance: ProblemInstance,
    function: InstanceFunction,
    evaluations: u64,
}

/// Builds the evaluator for `(fid, iid, dim)`. Construction is a pure
/// function of its arguments, so equal triples produce identical
/// evaluators.
pub fn make_problem(fid: u32, iid: u32, dim: usize) -> Result<ProblemEvaluator> {
    if fid < 1 || fid > NUM_PROBLEMS {
        return Err(Error::invalid_argument(
            "fid",
            format!("must be in 1..=24, got {fid}"),
        ));
    }
    if iid < 1 {
        return Err(Error::invalid_argument("iid", "must be >= 1"));
    }
    if dim < 2 {
        return Err(Error::invalid_argument(
            "dim",
            format!("must be >= 2, got {dim}"),
        ));
    }
    Ok(ProblemEvaluator {
        instance: ProblemInstance::new(fid, iid, dim),
        function: InstanceFunction::build(fid, iid, dim),
        evaluations: 0,
    })
}

impl ProblemEvaluator {
    pub fn instance(&self) -> ProblemInstance {
        self.instance
    }

    pub fn dim(&self) -> usize {
        self.instance.dim
    }

    pub fn bounds(&self) -> (f64, f64) {
        (LOWER_BOUND, UPPER_BOUND)
    }

    /// Exact objective value at the instance optimum.
    pub fn optimum_value(&self) -> f64 {
        self.function.f_opt
    }

    /// Location of the instance optimum.
    pub fn optimum_point(&self) -> &[f64] {
        &self.function.x_opt
    }

    pub fn evaluations(&self) -> u64 {
        self.evaluations
    }

    /// Evaluates f(x). Out-of-bounds points are evaluated as-is; only the
    /// vector length is checked. Each call counts one evaluation.
    pub fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        if x.len() != self.instance.dim {
            return Err(Error::DimensionMismatch {
                expected: self.instance.dim,
                actual: x.len(),
            });
        }
        self.evaluations += 1;
        Ok(self.function.eval(x))
    }

    /// Target precision of an objective value: `f_value - optimum_value`.
    /// Non-negative for any value produced by `evaluate`.
    pub fn precision(&self, f_value: f64) -> f64 {
        f_value - self.function.f_opt
    }
}

/// Anything a sampler or optimizer can evaluate. `ProblemEvaluator` is
/// the production implementation; tests inject stubs through this seam.
pub trait Objective {
    fn dim(&self) -> usize;
    fn bounds(&self) -> (f64, f64);
    fn evaluate(&mut self, x: &[f64]) -> Result<f64>;
    fn evaluations(&self) -> u64;
    /// Maps an objective value to target precision (f - f_opt).
    fn precision(&self, f_value: f64) -> f64;
}

impl Objective for ProblemEvaluator {
    fn dim(&self) -> usize {
        ProblemEvaluator::dim(self)
    }

    fn bounds(&self) -> (f64, f64) {
        ProblemEvaluator::bounds(self)
    }

    fn evaluate(&mut self, x: &[f64]) -> Result<f64> {
        ProblemEvaluator::evaluate(self, x)
    }

    fn evaluations(&self) -> u64 {
        ProblemEvaluator::evaluations(self)
    }

    fn precision(&self, f_value: f64) -> f64 {
        ProblemEvaluator::precision(self, f_value)
    }
}

/// Writes the suite manifest (fid,iid,dim,optimum_value) for audit.
pub fn write_suite_manifest(path: &Path, instances: &[ProblemInstance]) -> Result<()> {
    let mut out = String::from("fid,iid,dim,optimum_value\n");
    for inst in instances {
        let ev = make_problem(inst.fid, inst.iid, inst.dim)?;
        out.push_str(&format!(
            "{},{},{},{}\n",
            inst.fid,
            inst.iid,
            inst.dim,
            ev.optimum_value()
        ));
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}
