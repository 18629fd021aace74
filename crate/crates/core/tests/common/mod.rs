//! Shared test helpers, including an exact LAD reference solver that is
//! independent of the IRLS implementation it checks.

use stable_ecf::RegressionData;

/// Exact least-absolute-deviation line fit by pair enumeration.
///
/// For a two-parameter L1 regression an optimal line passes through at
/// least two data points, so trying every pair with distinct abscissae
/// and keeping the smallest objective is exact. O(K^2) in the number of
/// points; intended for small instances only.
pub fn lad_brute_force(data: &RegressionData) -> (f64, f64, f64) {
    let omega = data.omega();
    let y = data.y();
    let k = omega.len();
    let mut best = (f64::NAN, f64::NAN, f64::INFINITY);
    for a in 0..k {
        for b in (a + 1)..k {
            if (omega[b] - omega[a]).abs() < 1e-9 {
                continue;
            }
            let slope = (y[b] - y[a]) / (omega[b] - omega[a]);
            let m = y[a] - slope * omega[a];
            let objective: f64 = y
                .iter()
                .zip(omega)
                .map(|(yi, om)| (yi - m - slope * om).abs())
                .sum();
            if objective < best.2 {
                best = (m, slope, objective);
            }
        }
    }
    assert!(best.2.is_finite(), "no pair with distinct abscissae");
    best
}

#[allow(dead_code)]
pub fn mean(xs: &[f64]) -> f64 {
    xs.iter().sum::<f64>() / xs.len() as f64
}
