//! Information-content features: entropy of fitness-change symbol
//! sequences along a nearest-neighbor tour through the sample,
//! evaluated over a log-spaced sensitivity grid.

use indexmap::IndexMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::sampling::DesignSample;
use crate::stats::euclidean;
use crate::{Error, Result};

pub const IC_GRID: usize = 64;
const SETTLING_THRESHOLD: f64 = 0.05;

/// Nearest-neighbor tour: start at a seeded index, repeatedly hop to the
/// nearest unvisited point (ties to the lowest index).
pub(crate) fn nn_tour(s: &DesignSample) -> Vec<usize> {
    let n = s.len();
    let mut rng = ChaCha8Rng::seed_from_u64(s.seed);
    let start = rng.random_range(0..n);
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut current = start;
    visited[start] = true;
    order.push(start);
    for _ in 1..n {
        let mut best = usize::MAX;
        let mut best_dist = f64::INFINITY;
        for j in 0..n {
            if !visited[j] {
                let d = euclidean(&s.x[current], &s.x[j]);
                if d < best_dist {
                    best_dist = d;
                    best = j;
                }
            }
        }
        visited[best] = true;
        order.push(best);
        current = best;
    }
    order
}

/// Per-step (length, delta-y) along the tour.
pub(crate) fn tour_steps(s: &DesignSample, order: &[usize]) -> Vec<(f64, f64)> {
    order
        .windows(2)
        .map(|w| {
            (
                euclidean(&s.x[w[0]], &s.x[w[1]]),
                s.y[w[1]] - s.y[w[0]],
            )
        })
        .collect()
}

pub(crate) fn symbols(steps: &[(f64, f64)], eps: f64) -> Vec<i8> {
    steps
        .iter()
        .map(|&(d, dy)| {
            let threshold = eps * d;
            if dy > threshold {
                1
            } else if dy < -threshold {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// Entropy of consecutive-symbol pairs with differing symbols, log base 6.
pub(crate) fn pair_entropy(sym: &[i8]) -> f64 {
    if sym.len() < 2 {
        return 0.0;
    }
    let mut counts = [[0usize; 3]; 3];
    for w in sym.windows(2) {
        counts[(w[0] + 1) as usize][(w[1] + 1) as usize] += 1;
    }
    let total = (sym.len() - 1) as f64;
    let mut h = 0.0;
    for a in 0..3 {
        for b in 0..3 {
            if a != b && counts[a][b] > 0 {
                let p = counts[a][b] as f64 / total;
                h -= p * p.ln() / 6.0_f64.ln();
            }
        }
    }
    h
}

/// Partial information content: the fraction of adjacent non-zero
/// symbol pairs that change slope sign. Monotone sequences score 0,
/// strictly alternating ones score 1.
pub(crate) fn partial_information(sym: &[i8]) -> f64 {
    let nonzero: Vec<i8> = sym.iter().cloned().filter(|&v| v != 0).collect();
    if nonzero.len() < 2 {
        return 0.0;
    }
    let changes = nonzero.windows(2).filter(|w| w[0] != w[1]).count();
    changes as f64 / (nonzero.len() - 1) as f64
}

pub(crate) fn eps_grid(y_range: f64, grid: usize) -> Vec<f64> {
    let lo = (1e-5 * y_range).ln();
    let hi = y_range.ln();
    (0..grid)
        .map(|g| (lo + (hi - lo) * g as f64 / (grid - 1) as f64).exp())
        .collect()
}

pub fn compute_ic(s: &DesignSample) -> Result<IndexMap<String, f64>> {
    let n = s.len();
    if n < 10 {
        return Err(Error::invalid_argument("sample", "ic needs n >= 10"));
    }
    let y_min = s.y.iter().cloned().fold(f64::INFINITY, f64::min);
    let y_max = s.y.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let range = y_max - y_min;

    let mut out = IndexMap::new();
    if range == 0.0 {
        out.insert("ic.h_max".into(), 0.0);
        out.insert("ic.eps_s".into(), 0.0);
        out.insert("ic.eps_max".into(), 0.0);
        out.insert("ic.eps_ratio".into(), 0.0);
        out.insert("ic.m0".into(), 0.0);
        out.insert("ic.flag_degenerate".into(), 1.0);
        return Ok(out);
    }

    let order = nn_tour(s);
    let steps = tour_steps(s, &order);
    let grid = eps_grid(range, IC_GRID);
    let entropies: Vec<f64> = grid
        .iter()
        .map(|&eps| pair_entropy(&symbols(&steps, eps)))
        .collect();

    let h_max = entropies.iter().cloned().fold(0.0, f64::max);
    let eps_max = grid[entropies
        .iter()
        .enumerate()
        .max_by(|(ia, a), (ib, b)| a.partial_cmp(b).unwrap().then(ib.cmp(ia)))
        .map(|(i, _)| i)
        .unwrap_or(0)];
    let eps_s = grid
        .iter()
        .zip(&entropies)
        .find(|(_, &h)| h < SETTLING_THRESHOLD)
        .map(|(&e, _)| e)
        .unwrap_or(range);
    let m0 = partial_information(&symbols(&steps, 0.0));

    out.insert("ic.h_max".into(), h_max);
    out.insert("ic.eps_s".into(), eps_s);
    out.insert("ic.eps_max".into(), eps_max);
    out.insert("ic.eps_ratio".into(), (eps_max / eps_s).log10());
    out.insert("ic.m0".into(), m0);
    out.insert("ic.flag_degenerate".into(), 0.0);
    Ok(out)
}
