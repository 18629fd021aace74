//! Empirical characteristic function and its double-log linearization.
//!
//! For a grid point t the transform is
//!
//! ```text
//! y = log(-log |phi_hat(t)|^2),    omega = log t,
//! ```
//!
//! which turns `|phi(t)|^2 = exp(-2 sigma^alpha |t|^alpha)` into the line
//! `y = log(2 sigma^alpha) + alpha * omega`.

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::stable::{Sample, StableParams};

/// `|phi_hat|^2` values within `DEGENERACY_EPS` of 0 or 1 are rejected:
/// beyond those limits one of the two logarithms is undefined or infinite.
pub const DEGENERACY_EPS: f64 = 1e-12;

/// Ordered grid of evaluation points 0 < t_1 < ... < t_K, K >= 2.
#[derive(Debug, Clone, PartialEq)]
pub struct TGrid {
    points: Vec<f64>,
}

impl TGrid {
    pub fn new(points: Vec<f64>) -> Result<Self> {
        if points.len() < 2 {
            return Err(Error::InvalidGrid {
                reason: format!("need at least 2 points, got {}", points.len()),
            });
        }
        for (i, &t) in points.iter().enumerate() {
            if !t.is_finite() || t <= 0.0 {
                return Err(Error::InvalidGrid {
                    reason: format!("point {i} is {t}; all points must be finite and > 0"),
                });
            }
            if i > 0 && points[i - 1] >= t {
                return Err(Error::InvalidGrid {
                    reason: format!(
                        "points must be strictly increasing, but point {i} = {t} follows {}",
                        points[i - 1]
                    ),
                });
            }
        }
        Ok(Self { points })
    }

    /// `k` evenly spaced points from `lo` to `hi` inclusive.
    pub fn uniform(lo: f64, hi: f64, k: usize) -> Result<Self> {
        if k < 2 {
            return Err(Error::InvalidGrid {
                reason: format!("need at least 2 points, got {k}"),
            });
        }
        let step = (hi - lo) / (k - 1) as f64;
        Self::new((0..k).map(|i| lo + step * i as f64).collect())
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// Transformed regression inputs: `y[k]` paired with `omega[k] = log t_k`.
#[derive(Debug, Clone, PartialEq)]
pub struct RegressionData {
    y: Vec<f64>,
    omega: Vec<f64>,
}

impl RegressionData {
    pub fn new(y: Vec<f64>, omega: Vec<f64>) -> Result<Self> {
        if y.len() != omega.len() || y.len() < 2 {
            return Err(Error::InvalidGrid {
                reason: format!(
                    "regression data needs matching lengths >= 2, got y: {}, omega: {}",
                    y.len(),
                    omega.len()
                ),
            });
        }
        for (i, v) in y.iter().chain(omega.iter()).enumerate() {
            if !v.is_finite() {
                return Err(Error::NonFiniteSample { index: i % y.len() });
            }
        }
        Ok(Self { y, omega })
    }

    pub fn y(&self) -> &[f64] {
        &self.y
    }

    pub fn omega(&self) -> &[f64] {
        &self.omega
    }

    pub fn len(&self) -> usize {
        self.y.len()
    }

    pub fn is_empty(&self) -> bool {
        self.y.is_empty()
    }
}

/// Empirical characteristic function `(1/n) sum_j exp(i t x_j)`.
pub fn ecf_at(sample: &Sample, t: f64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &x in sample.values() {
        let (sin, cos) = (t * x).sin_cos();
        acc += Complex64::new(cos, sin);
    }
    acc / sample.len() as f64
}

/// Double-log transform of the squared ECF modulus over a grid.
///
/// Fails with [`Error::DegenerateEcf`] naming the offending grid point
/// whenever `|phi_hat(t)|^2` is too close to 0 or 1.
pub fn transform_grid(sample: &Sample, grid: &TGrid) -> Result<RegressionData> {
    let moduli: Vec<f64> = grid
        .points()
        .iter()
        .map(|&t| ecf_at(sample, t).norm_sqr())
        .collect();
    transform_moduli_sq(&moduli, grid)
}

/// Transform already-computed `|phi(t)|^2` values over a grid.
///
/// This is the injection point for noiseless checks: feeding theoretical
/// moduli must reproduce the underlying line exactly.
pub fn transform_moduli_sq(moduli_sq: &[f64], grid: &TGrid) -> Result<RegressionData> {
    assert_eq!(moduli_sq.len(), grid.len(), "one modulus per grid point");
    let mut y = Vec::with_capacity(grid.len());
    let mut omega = Vec::with_capacity(grid.len());
    for (&m2, &t) in moduli_sq.iter().zip(grid.points()) {
        if !(DEGENERACY_EPS..=1.0 - DEGENERACY_EPS).contains(&m2) {
            return Err(Error::DegenerateEcf { t, modulus_sq: m2 });
        }
        y.push((-m2.ln()).ln());
        omega.push(t.ln());
    }
    RegressionData::new(y, omega)
}

/// Transform of the theoretical squared CF modulus of `params`.
pub fn theoretical_regression_data(params: &StableParams, grid: &TGrid) -> Result<RegressionData> {
    let moduli: Vec<f64> = grid.points().iter().map(|&t| params.cf_modulus_sq(t)).collect();
    transform_moduli_sq(&moduli, grid)
}
