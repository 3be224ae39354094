//! Coordinate transforms shared by the benchmark function definitions:
//! the oscillation and asymmetry maps, diagonal conditioning, and seeded
//! orthogonal rotations. All maps fix the origin, so composing them
//! never moves a function's optimum.

use nalgebra::{DMatrix, DVector};
use rand::Rng;
use rand_distr::StandardNormal;

/// Oscillation map: non-linear, sign- and zero-preserving warp of each
/// coordinate (`osz(0) == 0` exactly).
pub fn oscillate(x: f64) -> f64 {
    if x == 0.0 {
        return 0.0;
    }
    let xhat = x.abs().ln();
    let (c1, c2) = if x > 0.0 { (10.0, 7.9) } else { (5.5, 3.1) };
    x.signum() * (xhat + 0.049 * ((c1 * xhat).sin() + (c2 * xhat).sin())).exp()
}

pub fn oscillate_vec(z: &mut [f64]) {
    for v in z.iter_mut() {
        *v = oscillate(*v);
    }
}

/// Asymmetry map with strength `beta`: positive coordinates are raised
/// to a power that grows along the coordinate index.
pub fn asymmetrize(z: &mut [f64], beta: f64) {
    let d = z.len();
    for (i, v) in z.iter_mut().enumerate() {
        if *v > 0.0 {
            let t = if d > 1 {
                i as f64 / (d - 1) as f64
            } else {
                0.0
            };
            *v = v.powf(1.0 + beta * t * v.sqrt());
        }
    }
}

/// Diagonal conditioning: coordinate `i` is scaled by
/// `alpha^(i / (2 (d - 1)))`, spreading eigenvalues over `sqrt(alpha)`.
pub fn condition(z: &mut [f64], alpha: f64) {
    let d = z.len();
    for (i, v) in z.iter_mut().enumerate() {
        let t = if d > 1 {
            i as f64 / (2.0 * (d - 1) as f64)
        } else {
            0.0
        };
        *v *= alpha.powf(t);
    }
}

/// Scale factor used by `condition`, exposed for per-peak diagonals.
pub fn condition_factor(i: usize, d: usize, alpha: f64) -> f64 {
    let t = if d > 1 {
        i as f64 / (2.0 * (d - 1) as f64)
    } else {
        0.0
    };
    alpha.powf(t)
}

/// Seeded orthogonal matrix: QR of a Gaussian matrix with the sign of
/// the R diagonal fixed, which makes the factorization unique.
pub fn random_rotation(dim: usize, rng: &mut impl Rng) -> DMatrix<f64> {
    let g = DMatrix::from_fn(dim, dim, |_, _| rng.sample::<f64, _>(StandardNormal));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..dim {
        if r[(j, j)] < 0.0 {
            for i in 0..dim {
                q[(i, j)] = -q[(i, j)];
            }
        }
    }
    q
}

pub fn rotate(m: &DMatrix<f64>, z: &[f64]) -> Vec<f64> {
    let v = m * DVector::from_column_slice(z);
    v.as_slice().to_vec()
}
