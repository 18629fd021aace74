use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Errors raised by sampling, transformation and estimation routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A distribution parameter is outside its admissible range.
    #[error("{field} must be {requirement}, got {value}")]
    InvalidParameter {
        field: &'static str,
        requirement: &'static str,
        value: f64,
    },

    /// The sample is shorter than an operation requires.
    #[error("sample must contain at least {min} values, got {n}")]
    SampleTooSmall { n: usize, min: usize },

    /// A sample entry is NaN or infinite.
    #[error("sample contains a non-finite value at index {index}")]
    NonFiniteSample { index: usize },

    /// A t-grid violates 0 < t_1 < ... < t_K with K >= 2.
    #[error("invalid t-grid: {reason}")]
    InvalidGrid { reason: String },

    /// |phi_hat(t)|^2 left the open interval where the double-log
    /// transform is defined. Constant samples hit the upper end.
    #[error("degenerate empirical characteristic function at t = {t}: |phi|^2 = {modulus_sq}")]
    DegenerateEcf { t: f64, modulus_sq: f64 },

    /// Two quantiles that must differ coincide (e.g. a constant sample).
    #[error("quantile spread between p = {lower_p} and p = {upper_p} is zero")]
    ZeroSpread { lower_p: f64, upper_p: f64 },

    /// Trimming removed every observation.
    #[error("trimming removed every observation (n = {n}, trim = {trim})")]
    EmptyAfterTrim { n: usize, trim: f64 },

    /// Trim fraction outside [0, 0.5).
    #[error("trim fraction must lie in [0, 0.5), got {trim}")]
    InvalidTrim { trim: f64 },

    /// All abscissae equal; the two-parameter line fit is underdetermined.
    #[error("regression design is singular: all grid points share one abscissa")]
    SingularDesign,

    /// The intercept cannot be inverted into a scale for alpha <= 0.
    #[error("cannot recover scale from intercept: alpha must be positive, got {alpha}")]
    NonPositiveAlpha { alpha: f64 },

    /// The stable sampler produced NaN or an infinity.
    #[error("stable sampler produced a non-finite variate")]
    NonFiniteVariate,

    /// A residual series is constant, so autocorrelations are undefined.
    #[error("residual series has zero variance")]
    ZeroVariance,

    /// Autocorrelation requested past the end of the series.
    #[error("autocorrelation at lag {max_lag} requires a series longer than {len} points")]
    LagTooLarge { max_lag: usize, len: usize },

    /// Benchmark configuration rejected; lists every violated constraint.
    #[error("invalid benchmark configuration: {}", violations.join("; "))]
    ConfigInvalid { violations: Vec<String> },
}
