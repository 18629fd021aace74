//! Two-parameter line fits of (omega, y): ordinary least squares and
//! least absolute deviation via iteratively reweighted least squares.
//!
//! The IRLS weights are `w_i = 1 / (1 + |e_i|)` with `e_i` the residuals
//! of the previous iterate. The +1 keeps the weights finite at zero
//! residual, so the fixed point approximates (rather than equals) the
//! exact L1 minimizer; the iteration starts from the OLS fit and the
//! iterate with the smallest L1 objective seen is returned.

use crate::ecf::RegressionData;
use crate::error::{Error, Result};

/// Convergence threshold on the maximum absolute coefficient change.
pub const IRLS_TOL: f64 = 1e-8;

/// Iteration cap for the reweighting loop.
pub const IRLS_MAX_ITER: usize = 200;

/// A fitted line `y = m + slope * omega` with fit diagnostics.
///
/// `objective` is the sum of squared residuals for an OLS fit and the
/// sum of absolute residuals for a LAD fit.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LineFit {
    pub m: f64,
    pub slope: f64,
    pub iterations: usize,
    pub converged: bool,
    pub objective: f64,
}

fn weighted_ols(data: &RegressionData, weights: Option<&[f64]>) -> Result<(f64, f64)> {
    let omega = data.omega();
    let y = data.y();
    let mut sw = 0.0;
    let mut sx = 0.0;
    let mut sy = 0.0;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for i in 0..omega.len() {
        let w = weights.map_or(1.0, |ws| ws[i]);
        sw += w;
        sx += w * omega[i];
        sy += w * y[i];
        sxx += w * omega[i] * omega[i];
        sxy += w * omega[i] * y[i];
    }
    let det = sw * sxx - sx * sx;
    // det = sw^2 * weighted variance of omega; zero iff all omega equal.
    let scale = (sw * sxx).abs().max(sx * sx).max(f64::MIN_POSITIVE);
    if det.abs() <= 1e-12 * scale {
        return Err(Error::SingularDesign);
    }
    let slope = (sw * sxy - sx * sy) / det;
    let m = (sy - slope * sx) / sw;
    Ok((m, slope))
}

/// Sum of absolute residuals of `fit` on `data`.
pub fn lad_objective(data: &RegressionData, fit: &LineFit) -> f64 {
    data.y()
        .iter()
        .zip(data.omega())
        .map(|(y, om)| (y - fit.m - fit.slope * om).abs())
        .sum()
}

/// Closed-form least squares fit.
pub fn ols_fit(data: &RegressionData) -> Result<LineFit> {
    let (m, slope) = weighted_ols(data, None)?;
    let sq = data
        .y()
        .iter()
        .zip(data.omega())
        .map(|(y, om)| (y - m - slope * om).powi(2))
        .sum();
    Ok(LineFit { m, slope, iterations: 0, converged: true, objective: sq })
}

/// Least absolute deviation fit by iteratively reweighted least squares.
///
/// Starts from OLS, reweights with `1 / (1 + |residual|)`, stops when the
/// largest coefficient change drops below `tol` or after `max_iter`
/// passes. The returned fit is the iterate with the smallest L1 objective
/// encountered (never worse than the OLS start); `converged` is false if
/// the iteration cap was reached.
pub fn lad_fit_irls(data: &RegressionData, tol: f64, max_iter: usize) -> Result<LineFit> {
    assert!(tol > 0.0, "tolerance must be positive");
    let start = ols_fit(data)?;
    let (mut m, mut slope) = (start.m, start.slope);
    let mut best = LineFit {
        m,
        slope,
        iterations: 0,
        converged: false,
        objective: lad_objective(data, &start),
    };

    let k = data.len();
    let mut weights = vec![1.0; k];
    let mut iterations = 0;
    let mut converged = false;
    while iterations < max_iter {
        iterations += 1;
        for i in 0..k {
            let e = data.y()[i] - m - slope * data.omega()[i];
            weights[i] = 1.0 / (1.0 + e.abs());
        }
        let (m_next, slope_next) = weighted_ols(data, Some(&weights))?;
        let candidate = LineFit {
            m: m_next,
            slope: slope_next,
            iterations,
            converged: false,
            objective: 0.0,
        };
        let obj = lad_objective(data, &candidate);
        if obj < best.objective {
            best = LineFit { objective: obj, ..candidate };
        }
        let delta = (m_next - m).abs().max((slope_next - slope).abs());
        m = m_next;
        slope = slope_next;
        if delta < tol {
            converged = true;
            break;
        }
    }

    Ok(LineFit { iterations, converged, ..best })
}

/// [`lad_fit_irls`] with the crate's default tolerance and iteration cap.
pub fn lad_fit(data: &RegressionData) -> Result<LineFit> {
    lad_fit_irls(data, IRLS_TOL, IRLS_MAX_ITER)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ecf::RegressionData;
    use approx::assert_relative_eq;

    fn data(omega: &[f64], y: &[f64]) -> RegressionData {
        RegressionData::new(y.to_vec(), omega.to_vec()).unwrap()
    }

    #[test]
    fn ols_recovers_exact_line() {
        let omega: Vec<f64> = (0..20).map(|k| (0.1 + 0.05 * k as f64).ln()).collect();
        let y: Vec<f64> = omega.iter().map(|om| 2.0f64.ln() + 1.5 * om).collect();
        let fit = ols_fit(&data(&omega, &y)).unwrap();
        assert_relative_eq!(fit.m, 2.0f64.ln(), max_relative = 1e-10);
        assert_relative_eq!(fit.slope, 1.5, max_relative = 1e-10);
        assert!(fit.objective < 1e-16);
    }

    #[test]
    fn ols_flat_and_hand_solved_cases() {
        let fit = ols_fit(&data(&[0.0, 1.0], &[0.0, 0.0])).unwrap();
        assert_relative_eq!(fit.m, 0.0);
        assert_relative_eq!(fit.slope, 0.0);

        // Normal equations by hand: slope = 5, intercept = 10/3.
        let fit = ols_fit(&data(&[-1.0, 0.0, 1.0], &[0.0, 0.0, 10.0])).unwrap();
        assert_relative_eq!(fit.slope, 5.0, max_relative = 1e-12);
        assert_relative_eq!(fit.m, 10.0 / 3.0, max_relative = 1e-12);
    }

    #[test]
    fn ols_rejects_constant_abscissa() {
        assert!(matches!(
            ols_fit(&data(&[0.3, 0.3, 0.3], &[1.0, 2.0, 3.0])),
            Err(Error::SingularDesign)
        ));
    }

    #[test]
    fn ols_residual_orthogonality() {
        let omega = [-0.9, -0.3, 0.2, 0.8, 1.4];
        let y = [1.2, 0.4, -0.5, 2.2, 1.9];
        let fit = ols_fit(&data(&omega, &y)).unwrap();
        let res: Vec<f64> = y
            .iter()
            .zip(&omega)
            .map(|(yi, om)| yi - fit.m - fit.slope * om)
            .collect();
        let sum: f64 = res.iter().sum();
        let dot: f64 = res.iter().zip(&omega).map(|(e, om)| e * om).sum();
        assert!(sum.abs() < 1e-10, "sum of residuals = {sum}");
        assert!(dot.abs() < 1e-10, "residual-abscissa dot = {dot}");
    }

    #[test]
    fn lad_is_a_fixed_point_on_exact_data() {
        let omega: Vec<f64> = (0..10).map(|k| 0.1 * k as f64).collect();
        let y: Vec<f64> = omega.iter().map(|om| 0.7 - 0.4 * om).collect();
        let d = data(&omega, &y);
        let ols = ols_fit(&d).unwrap();
        let lad = lad_fit(&d).unwrap();
        assert_relative_eq!(lad.m, ols.m, max_relative = 1e-9);
        assert_relative_eq!(lad.slope, ols.slope, max_relative = 1e-9);
        assert!(lad.converged);
        assert!(lad.objective < 1e-12);
    }

    #[test]
    fn lad_moves_toward_the_l1_optimum_on_three_points() {
        // L1 optimum passes through (-1, 0) and (1, 10): m = 5, slope = 5,
        // objective 5. The damped weights land at slope = 5 exactly (the
        // two outer weights agree by symmetry) with m between the OLS
        // start (10/3) and the optimum.
        let d = data(&[-1.0, 0.0, 1.0], &[0.0, 0.0, 10.0]);
        let fit = lad_fit(&d).unwrap();
        assert!(fit.converged);
        assert_relative_eq!(fit.slope, 5.0, max_relative = 1e-9);
        assert!(fit.m > 10.0 / 3.0 && fit.m < 5.0, "m = {}", fit.m);
        assert!(fit.objective >= 5.0 && fit.objective < 5.7, "objective = {}", fit.objective);
        let ols = ols_fit(&d).unwrap();
        assert!(fit.objective < lad_objective(&d, &ols));
    }

    #[test]
    fn lad_resists_a_gross_outlier() {
        // 20 points on a line, one wrecked; LAD stays near the line while
        // OLS is dragged away by an order of magnitude more.
        let omega: Vec<f64> = (0..20).map(|k| -100.0 + 10.0 * k as f64).collect();
        let mut y: Vec<f64> = omega.iter().map(|om| 1.0 + 2.0 * om).collect();
        y[7] += 50.0;
        let d = data(&omega, &y);
        let lad = lad_fit(&d).unwrap();
        let ols = ols_fit(&d).unwrap();
        assert!(
            (lad.slope - 2.0).abs() < 1e-3,
            "lad slope = {} (should hug the line)",
            lad.slope
        );
        assert!((ols.slope - 2.0).abs() > 0.01, "ols slope = {}", ols.slope);
        assert!(lad.objective < ols_l1(&d, &ols), "lad must not be worse than the OLS start");
    }

    fn ols_l1(d: &RegressionData, fit: &LineFit) -> f64 {
        lad_objective(d, fit)
    }

    #[test]
    fn lad_objective_values() {
        let d = data(&[-1.0, 0.0, 1.0], &[0.0, 0.0, 10.0]);
        let exact = LineFit { m: 5.0, slope: 5.0, iterations: 0, converged: true, objective: 0.0 };
        assert_relative_eq!(lad_objective(&d, &exact), 5.0);
        let zero = LineFit { m: 0.0, slope: 0.0, iterations: 0, converged: true, objective: 0.0 };
        assert_relative_eq!(lad_objective(&d, &zero), 10.0);
    }

    #[test]
    fn shift_equivariance_of_both_fits() {
        let omega = [-0.7, -0.1, 0.4, 0.9, 1.3, 2.0];
        let y = [0.3, 1.9, -0.2, 0.8, 2.5, 1.1];
        let shifted: Vec<f64> = y.iter().map(|v| v + 3.25).collect();
        let d0 = data(&omega, &y);
        let d1 = data(&omega, &shifted);

        let (a, b) = (ols_fit(&d0).unwrap(), ols_fit(&d1).unwrap());
        assert_relative_eq!(a.slope, b.slope, max_relative = 1e-12);
        assert_relative_eq!(a.m + 3.25, b.m, max_relative = 1e-12);

        let (a, b) = (lad_fit(&d0).unwrap(), lad_fit(&d1).unwrap());
        assert_relative_eq!(a.slope, b.slope, max_relative = 1e-7, epsilon = 1e-9);
        assert_relative_eq!(a.m + 3.25, b.m, max_relative = 1e-7, epsilon = 1e-9);
    }
}
