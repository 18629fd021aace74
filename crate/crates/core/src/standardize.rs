//! Robust location/scale standardization of samples.
//!
//! The default standardization subtracts a 25% trimmed mean and divides
//! by the quantile-spread scale `(q(0.72) - q(0.28)) / 1.654`, whose
//! divisor calibrates the estimate to equal sigma for the Cauchy law.
//! An alternative standardization takes location and scale from the
//! quantile-table initializer in [`crate::mcculloch`].
//!
//! Quantile convention: order statistic j (1-based) sits at probability
//! (j - 0.5)/n, with linear interpolation in between and clamping at the
//! extremes. The same convention is used everywhere in this crate.

use crate::error::{Error, Result};
use crate::stable::Sample;

/// Denominator calibrating the 0.72/0.28 quantile spread to the Cauchy
/// scale.
pub const FAMA_ROLL_DIVISOR: f64 = 1.654;

/// Trim fraction used by the default standardization.
pub const DEFAULT_TRIM: f64 = 0.25;

/// Which statistics produced a [`Standardization`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum StandardizeMethod {
    /// 25% trimmed mean location, quantile-spread scale.
    TrimmedMeanFamaRoll,
    /// Location and scale from the McCulloch quantile initializer.
    McCulloch,
}

impl StandardizeMethod {
    pub fn name(&self) -> &'static str {
        match self {
            StandardizeMethod::TrimmedMeanFamaRoll => "trimmed-mean+fama-roll",
            StandardizeMethod::McCulloch => "mcculloch",
        }
    }
}

/// Location/scale pair removed from a sample, with the method that
/// produced it. Round-trip `x = z * scale + location` holds exactly.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Standardization {
    pub location: f64,
    pub scale: f64,
    pub method: StandardizeMethod,
}

/// Sample quantile at probability `p` of pre-sorted data, using the
/// (j - 0.5)/n convention with linear interpolation.
pub fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    debug_assert!(!sorted.is_empty());
    debug_assert!((0.0..=1.0).contains(&p));
    let n = sorted.len();
    let h = p * n as f64 - 0.5;
    if h <= 0.0 {
        return sorted[0];
    }
    if h >= (n - 1) as f64 {
        return sorted[n - 1];
    }
    let i = h.floor() as usize;
    let frac = h - i as f64;
    sorted[i] * (1.0 - frac) + sorted[i + 1] * frac
}

/// Sample quantile at probability `p`.
pub fn quantile(sample: &Sample, p: f64) -> f64 {
    quantile_sorted(&sample.sorted(), p)
}

fn trimmed_mean_sorted(sorted: &[f64], trim: f64) -> Result<f64> {
    if !(0.0..0.5).contains(&trim) {
        return Err(Error::InvalidTrim { trim });
    }
    let n = sorted.len();
    let drop = (trim * n as f64).floor() as usize;
    let kept = &sorted[drop..n - drop];
    if kept.is_empty() {
        return Err(Error::EmptyAfterTrim { n, trim });
    }
    Ok(kept.iter().sum::<f64>() / kept.len() as f64)
}

/// Mean of the observations left after dropping `floor(trim * n)` from
/// each tail.
pub fn trimmed_mean(sample: &Sample, trim: f64) -> Result<f64> {
    trimmed_mean_sorted(&sample.sorted(), trim)
}

fn fama_roll_scale_sorted(sorted: &[f64]) -> Result<f64> {
    if sorted.len() < 2 {
        return Err(Error::SampleTooSmall { n: sorted.len(), min: 2 });
    }
    let hi = quantile_sorted(sorted, 0.72);
    let lo = quantile_sorted(sorted, 0.28);
    if hi <= lo {
        return Err(Error::ZeroSpread { lower_p: 0.28, upper_p: 0.72 });
    }
    Ok((hi - lo) / FAMA_ROLL_DIVISOR)
}

/// Quantile-spread scale estimate `(q(0.72) - q(0.28)) / 1.654`.
pub fn fama_roll_scale(sample: &Sample) -> Result<f64> {
    fama_roll_scale_sorted(&sample.sorted())
}

fn apply(sample: &Sample, location: f64, scale: f64) -> Sample {
    Sample::new(
        sample
            .values()
            .iter()
            .map(|x| (x - location) / scale)
            .collect(),
    )
    .expect("finite inputs stay finite under a finite affine map")
}

/// Standardizes with the 25% trimmed mean and the quantile-spread scale.
pub fn standardize(sample: &Sample) -> Result<(Sample, Standardization)> {
    let sorted = sample.sorted();
    let location = trimmed_mean_sorted(&sorted, DEFAULT_TRIM)?;
    let scale = fama_roll_scale_sorted(&sorted)?;
    let std = Standardization {
        location,
        scale,
        method: StandardizeMethod::TrimmedMeanFamaRoll,
    };
    Ok((apply(sample, location, scale), std))
}

/// Standardizes with the requested method.
pub fn standardize_with(
    sample: &Sample,
    method: StandardizeMethod,
) -> Result<(Sample, Standardization)> {
    match method {
        StandardizeMethod::TrimmedMeanFamaRoll => standardize(sample),
        StandardizeMethod::McCulloch => {
            let est = crate::mcculloch::mcculloch_initial(sample)?;
            let std = Standardization {
                location: est.params.mu(),
                scale: est.params.sigma(),
                method: StandardizeMethod::McCulloch,
            };
            Ok((apply(sample, std.location, std.scale), std))
        }
    }
}
