//! y-distribution features: sample skewness, excess kurtosis, and the
//! number of peaks of a Gaussian KDE of the objective values.

use indexmap::IndexMap;

use crate::sampling::DesignSample;
use crate::stats::{excess_kurtosis, sample_sd, skewness};
use crate::{Error, Result};

pub const KDE_GRID: usize = 512;

/// Silverman's rule-of-thumb bandwidth.
fn silverman_bandwidth(y: &[f64]) -> f64 {
    1.06 * sample_sd(y) * (y.len() as f64).powf(-0.2)
}

/// Density of a Gaussian KDE on an equally spaced grid spanning
/// [min - 3 bw, max + 3 bw].
pub(crate) fn kde_grid_densities(y: &[f64], grid: usize) -> (f64, Vec<f64>) {
    let bw = silverman_bandwidth(y);
    let lo = y.iter().cloned().fold(f64::INFINITY, f64::min) - 3.0 * bw;
    let hi = y.iter().cloned().fold(f64::NEG_INFINITY, f64::max) + 3.0 * bw;
    let step = (hi - lo) / (grid - 1) as f64;
    let norm = 1.0 / (y.len() as f64 * bw * (2.0 * std::f64::consts::PI).sqrt());
    let densities = (0..grid)
        .map(|g| {
            let t = lo + g as f64 * step;
            y.iter()
                .map(|&v| {
                    let u = (t - v) / bw;
                    (-0.5 * u * u).exp()
                })
                .sum::<f64>()
                * norm
        })
        .collect();
    (bw, densities)
}

/// Counts grid points strictly greater than both neighbors.
pub(crate) fn count_peaks(densities: &[f64]) -> usize {
    densities
        .windows(3)
        .filter(|w| w[1] > w[0] && w[1] > w[2])
        .count()
}

pub fn compute_ela_distr(s: &DesignSample) -> Result<IndexMap<String, f64>> {
    if s.len() < 4 {
        return Err(Error::invalid_argument("sample", "ela_distr needs n >= 4"));
    }
    let y = &s.y;
    let degenerate = sample_sd(y) == 0.0;
    let (skew, kurt, peaks) = if degenerate {
        (0.0, 0.0, 1)
    } else {
        let (_, densities) = kde_grid_densities(y, KDE_GRID);
        (skewness(y), excess_kurtosis(y), count_peaks(&densities).max(1))
    };
    let mut out = IndexMap::new();
    out.insert("ela_distr.skewness".into(), skew);
    out.insert("ela_distr.kurtosis".into(), kurt);
    out.insert("ela_distr.number_of_peaks".into(), peaks as f64);
    out.insert(
        "ela_distr.flag_degenerate".into(),
        if degenerate { 1.0 } else { 0.0 },
    );
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;
    use rand_distr::StandardNormal;

    fn sample_from_y(y: Vec<f64>) -> DesignSample {
        let x = (0..y.len()).map(|i| vec![i as f64, 0.0]).collect();
        DesignSample {
            x,
            y,
            repetition_index: 0,
            seed: 0,
        }
    }

    #[test]
    fn symmetric_values_have_zero_skewness() {
        let s = sample_from_y(vec![-2.0, -1.0, 0.0, 1.0, 2.0]);
        let f = compute_ela_distr(&s).unwrap();
        assert_eq!(f["ela_distr.skewness"], 0.0);
    }

    #[test]
    fn constant_values_are_flagged_degenerate() {
        let s = sample_from_y(vec![3.0; 10]);
        let f = compute_ela_distr(&s).unwrap();
        assert_eq!(f["ela_distr.skewness"], 0.0);
        assert_eq!(f["ela_distr.kurtosis"], 0.0);
        assert_eq!(f["ela_distr.number_of_peaks"], 1.0);
        assert_eq!(f["ela_distr.flag_degenerate"], 1.0);
    }

    #[test]
    fn bimodal_mixture_has_two_peaks() {
        // Equal-weight mixture of N(0,1) and N(10,1); modes far apart
        // relative to the Silverman bandwidth.
        let mut rng = ChaCha8Rng::seed_from_u64(314);
        let y: Vec<f64> = (0..200)
            .map(|i| {
                let z: f64 = rng.sample(StandardNormal);
                if i % 2 == 0 {
                    z
                } else {
                    10.0 + z
                }
            })
            .collect();
        let s = sample_from_y(y.clone());
        let f = compute_ela_distr(&s).unwrap();
        assert_eq!(f["ela_distr.number_of_peaks"], 2.0);

        // independent scan over the same KDE definition
        let (_, densities) = kde_grid_densities(&y, KDE_GRID);
        let mut direct = 0;
        for g in 1..densities.len() - 1 {
            if densities[g] > densities[g - 1] && densities[g] > densities[g + 1] {
                direct += 1;
            }
        }
        assert_eq!(direct, 2);
    }

    #[test]
    fn rejects_tiny_samples() {
        let s = sample_from_y(vec![1.0, 2.0, 3.0]);
        assert!(compute_ela_distr(&s).is_err());
    }
}
