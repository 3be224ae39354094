//! Space-filling designs: Latin hypercube sampling with a maximin
//! "improved" step, and evaluated designs for feature computation.

use std::io::Write;
use std::path::Path;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::problems::Objective;
use crate::{Error, Result};

/// Candidate designs generated per `improved_lhs` call; the one with the
/// largest minimum pairwise distance wins.
pub const LHS_CANDIDATES: usize = 30;

/// One evaluated sampling repetition: an n×d design and its objective
/// values.
#[derive(Debug, Clone)]
pub struct DesignSample {
    pub x: Vec<Vec<f64>>,
    pub y: Vec<f64>,
    pub repetition_index: usize,
    pub seed: u64,
}

impl DesignSample {
    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.x.first().map_or(0, Vec::len)
    }
}

fn plain_lhs(dim: usize, n: usize, bounds: &[(f64, f64)], rng: &mut ChaCha8Rng) -> Vec<Vec<f64>> {
    let mut columns: Vec<Vec<f64>> = Vec::with_capacity(dim);
    for j in 0..dim {
        let (lo, hi) = bounds[j];
        let width = (hi - lo) / n as f64;
        let mut strata: Vec<usize> = (0..n).collect();
        strata.shuffle(rng);
        let column: Vec<f64> = strata
            .into_iter()
            .map(|s| lo + (s as f64 + rng.random::<f64>()) * width)
            .collect();
        columns.push(column);
    }
    (0..n)
        .map(|i| (0..dim).map(|j| columns[j][i]).collect())
        .collect()
}

pub fn min_pairwise_distance(points: &[Vec<f64>]) -> f64 {
    let mut best = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let d = crate::stats::euclidean(&points[i], &points[j]);
            if d < best {
                best = d;
            }
        }
    }
    best
}

/// Latin hypercube design with the maximin refinement: `candidates`
/// seeded LHS designs are generated from one stream and the one with the
/// largest minimum pairwise distance is returned. Candidate 0 is the
/// plain LHS for the same seed, so the result is never worse than it.
pub fn improved_lhs_with(
    dim: usize,
    n: usize,
    bounds: &[(f64, f64)],
    seed: u64,
    candidates: usize,
) -> Result<Vec<Vec<f64>>> {
    if n == 0 {
        return Err(Error::invalid_argument("n", "sample size must be >= 1"));
    }
    if dim == 0 {
        return Err(Error::invalid_argument("dim", "dimension must be >= 1"));
    }
    if bounds.len() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            actual: bounds.len(),
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best: Option<(f64, Vec<Vec<f64>>)> = None;
    for _ in 0..candidates.max(1) {
        let design = plain_lhs(dim, n, bounds, &mut rng);
        let score = min_pairwise_distance(&design);
        // strict > keeps the earliest candidate on ties
        if best.as_ref().is_none_or(|(s, _)| score > *s) {
            best = Some((score, design));
        }
    }
    Ok(best.expect("at least one candidate").1)
}

pub fn improved_lhs(dim: usize, n: usize, bounds: &[(f64, f64)], seed: u64) -> Result<Vec<Vec<f64>>> {
    improved_lhs_with(dim, n, bounds, seed, LHS_CANDIDATES)
}

/// Builds `repetitions` evaluated designs with per-repetition seeds
/// `base_seed + r`, so repetition r does not depend on how many others
/// were requested.
pub fn build_design(
    ev: &mut impl Objective,
    n: usize,
    repetitions: usize,
    base_seed: u64,
) -> Result<Vec<DesignSample>> {
    if repetitions == 0 {
        return Err(Error::invalid_argument("repetitions", "must be >= 1"));
    }
    let dim = ev.dim();
    let bounds = vec![ev.bounds(); dim];
    let mut samples = Vec::with_capacity(repetitions);
    for r in 0..repetitions {
        let seed = base_seed + r as u64;
        let x = improved_lhs(dim, n, &bounds, seed)?;
        let mut y = Vec::with_capacity(n);
        for row in &x {
            y.push(ev.evaluate(row)?);
        }
        samples.push(DesignSample {
            x,
            y,
            repetition_index: r,
            seed,
        });
    }
    Ok(samples)
}

/// Design export: one CSV with columns x1..xd,y.
pub fn write_design_csv(path: &Path, sample: &DesignSample) -> Result<()> {
    let dim = sample.dim();
    let mut out = String::new();
    for j in 0..dim {
        out.push_str(&format!("x{},", j + 1));
    }
    out.push_str("y\n");
    for (row, y) in sample.x.iter().zip(&sample.y) {
        for v in row {
            out.push_str(&format!("{v},"));
        }
        out.push_str(&format!("{y}\n"));
    }
    let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(out.as_bytes()).map_err(|e| Error::io(path, e))?;
    Ok(())
}

/// Checks the Latin property: exactly one point per stratum per
/// coordinate.
pub fn is_stratified(design: &[Vec<f64>], bounds: &[(f64, f64)]) -> bool {
    let n = design.len();
    let dim = bounds.len();
    for j in 0..dim {
        let (lo, hi) = bounds[j];
        let width = (hi - lo) / n as f64;
        let mut seen = vec![false; n];
        for row in design {
            let mut s = ((row[j] - lo) / width) as usize;
            if s >= n {
                s = n - 1;
            }
            if seen[s] {
                return false;
            }
            seen[s] = true;
        }
        if seen.iter().any(|&b| !b) {
            return false;
        }
    }
    true
}
