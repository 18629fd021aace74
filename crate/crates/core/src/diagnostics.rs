//! Simulation diagnostics for the double-log ECF regression: the
//! residual-variance profile in t, the residual autocorrelation
//! function, and the sensitivity of the fitted index to the grid
//! length K.

use crate::ecf::{ecf_at, transform_grid, TGrid};
use crate::error::{Error, Result};
use crate::exec::map_indexed;
use crate::regression::{lad_fit, ols_fit};
use crate::rng::stream_rng;
use crate::stable::{sample_stable_with, StableParams};
use crate::standardize::standardize;

/// One point of a residual-variance profile.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VariancePoint {
    pub t: f64,
    /// Unbiased sample variance of the residuals across replications.
    pub variance: f64,
    /// Replications dropped at this t (degenerate ECF or failed fit).
    pub dropped: usize,
}

/// Which line the profile residuals are taken against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ResidualLine {
    /// Residuals against the line of the true parameters, on raw data.
    True,
    /// Residuals against a per-sample fitted line, on standardized data.
    Estimated,
}

/// Variance of the regression residual at each grid point, over `m`
/// simulated samples of size `n`.
///
/// The same `m` samples are evaluated at every t. In `True` mode the
/// residual at t is `y(t) - (log(2 sigma^alpha) + alpha log t)` on the
/// raw sample; in `Estimated` mode each sample is standardized, a line
/// is fitted by OLS over the whole grid, and its residuals are used.
pub fn residual_variance_profile(
    params: &StableParams,
    n: usize,
    m: usize,
    grid: &TGrid,
    line: ResidualLine,
    seed: u64,
) -> Result<Vec<VariancePoint>> {
    if m < 2 {
        return Err(Error::SampleTooSmall { n: m, min: 2 });
    }
    let k = grid.len();

    // Residuals per replication, one Option per grid point.
    let residuals: Vec<Vec<Option<f64>>> = map_indexed(m, |rep| {
        let mut rng = stream_rng(seed, 0, rep as u64);
        let sample = match sample_stable_with(params, n, &mut rng) {
            Ok(s) => s,
            Err(_) => return vec![None; k],
        };
        match line {
            ResidualLine::True => {
                let intercept = (2.0 * params.sigma().powf(params.alpha())).ln();
                grid.points()
                    .iter()
                    .map(|&t| {
                        let m2 = ecf_at(&sample, t).norm_sqr();
                        if !(crate::ecf::DEGENERACY_EPS..=1.0 - crate::ecf::DEGENERACY_EPS)
                            .contains(&m2)
                        {
                            return None;
                        }
                        let y = (-m2.ln()).ln();
                        Some(y - (intercept + params.alpha() * t.ln()))
                    })
                    .collect()
            }
            ResidualLine::Estimated => {
                let run = || -> Result<Vec<f64>> {
                    let (z, _) = standardize(&sample)?;
                    let data = transform_grid(&z, grid)?;
                    let fit = ols_fit(&data)?;
                    Ok(data
                        .y()
                        .iter()
                        .zip(data.omega())
                        .map(|(y, om)| y - fit.m - fit.slope * om)
                        .collect())
                };
                match run() {
                    Ok(res) => res.into_iter().map(Some).collect(),
                    Err(_) => vec![None; k],
                }
            }
        }
    });

    let mut profile = Vec::with_capacity(k);
    for (i, &t) in grid.points().iter().enumerate() {
        let values: Vec<f64> = residuals.iter().filter_map(|rep| rep[i]).collect();
        let dropped = m - values.len();
        if values.len() < 2 {
            profile.push(VariancePoint { t, variance: f64::NAN, dropped });
            continue;
        }
        let mean = values.iter().sum::<f64>() / values.len() as f64;
        let variance = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>()
            / (values.len() - 1) as f64;
        profile.push(VariancePoint { t, variance, dropped });
    }
    Ok(profile)
}

/// Sample autocorrelation r(h) for h = 0..=max_lag; r(0) = 1.
pub fn residual_acf(residuals: &[f64], max_lag: usize) -> Result<Vec<f64>> {
    let len = residuals.len();
    if len <= max_lag {
        return Err(Error::LagTooLarge { max_lag, len });
    }
    let mean = residuals.iter().sum::<f64>() / len as f64;
    let denom: f64 = residuals.iter().map(|e| (e - mean).powi(2)).sum();
    if denom <= 0.0 {
        return Err(Error::ZeroVariance);
    }
    let mut acf = Vec::with_capacity(max_lag + 1);
    for h in 0..=max_lag {
        let num: f64 = (0..len - h)
            .map(|i| (residuals[i] - mean) * (residuals[i + h] - mean))
            .sum();
        acf.push(num / denom);
    }
    Ok(acf)
}

/// Mean fitted index as a function of the grid length K, for the
/// Koutrouvelis-grid OLS estimator and the uniform-grid LAD estimator.
#[derive(Debug, Clone, PartialEq)]
pub struct KSensitivity {
    pub k_values: Vec<usize>,
    /// Mean index from OLS on `t_k = pi k / 25`, k = 1..K.
    pub koutrouvelis_mean: Vec<f64>,
    /// Mean index from LAD on K uniform points over [0.1, 1.0].
    pub lad_mean: Vec<f64>,
    pub koutrouvelis_failures: Vec<usize>,
    pub lad_failures: Vec<usize>,
}

/// Sweeps K over `k_values`, estimating the index of `m` standardized
/// samples of size `n` drawn at the given parameters. The same samples
/// are reused across every K and both methods.
pub fn k_sensitivity_curve(
    params: &StableParams,
    n: usize,
    m: usize,
    k_values: &[usize],
    seed: u64,
) -> Result<KSensitivity> {
    if let Some(&bad) = k_values.iter().find(|&&k| k < 2) {
        return Err(Error::InvalidGrid { reason: format!("K values must be >= 2, got {bad}") });
    }
    if m == 0 {
        return Err(Error::SampleTooSmall { n: 0, min: 1 });
    }

    let grids: Vec<(TGrid, TGrid)> = k_values
        .iter()
        .map(|&k| {
            Ok((
                crate::estimators::koutrouvelis_grid(k)?,
                TGrid::uniform(0.1, 1.0, k)?,
            ))
        })
        .collect::<Result<_>>()?;

    // Per replication: (koutrouvelis slope, lad slope) per K.
    let outcomes: Vec<Vec<(Option<f64>, Option<f64>)>> = map_indexed(m, |rep| {
        let mut rng = stream_rng(seed, 0, rep as u64);
        let standardized = sample_stable_with(params, n, &mut rng)
            .ok()
            .and_then(|s| standardize(&s).ok().map(|(z, _)| z));
        grids
            .iter()
            .map(|(kout_grid, lad_grid)| match &standardized {
                None => (None, None),
                Some(z) => {
                    let kout = transform_grid(z, kout_grid)
                        .and_then(|d| ols_fit(&d))
                        .ok()
                        .map(|f| f.slope);
                    let lad = transform_grid(z, lad_grid)
                        .and_then(|d| lad_fit(&d))
                        .ok()
                        .map(|f| f.slope);
                    (kout, lad)
                }
            })
            .collect()
    });

    let mut result = KSensitivity {
        k_values: k_values.to_vec(),
        koutrouvelis_mean: Vec::with_capacity(k_values.len()),
        lad_mean: Vec::with_capacity(k_values.len()),
        koutrouvelis_failures: Vec::with_capacity(k_values.len()),
        lad_failures: Vec::with_capacity(k_values.len()),
    };
    for ki in 0..k_values.len() {
        let kout: Vec<f64> = outcomes.iter().filter_map(|rep| rep[ki].0).collect();
        let lad: Vec<f64> = outcomes.iter().filter_map(|rep| rep[ki].1).collect();
        result.koutrouvelis_failures.push(m - kout.len());
        result.lad_failures.push(m - lad.len());
        result
            .koutrouvelis_mean
            .push(kout.iter().sum::<f64>() / kout.len().max(1) as f64);
        result.lad_mean.push(lad.iter().sum::<f64>() / lad.len().max(1) as f64);
    }
    Ok(result)
}
