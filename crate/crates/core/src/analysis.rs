//! Ordinary least-squares lines relating spreading lengths to the standard
//! deviation.
//!
//! Sums are accumulated with the two-pass centered formulas in 128-bit binary
//! arithmetic, so the correlation coefficient keeps its trailing nines.

use alloc::vec::Vec;

use crate::entropic::onicescu_heller_length;
use crate::error::{Error, Result};
use crate::hermite::standard_deviation;
use crate::mp::Real;
use crate::quadrature::QuadratureConfig;
use crate::shannon::shannon_length;

const FIT_BITS: usize = 128;

#[derive(Clone, Debug, PartialEq)]
pub struct FitResult {
    pub slope: f64,
    pub intercept: f64,
    /// Pearson correlation coefficient; 0 when the `y` values are constant.
    pub correlation: f64,
    /// Degree range the points were taken from, or the index range for fits of
    /// arbitrary points.
    pub n_range: (usize, usize),
    pub points: Vec<(f64, f64)>,
}

/// OLS fit `y ≈ slope·x + intercept`.
///
/// Needs at least three points and `x` values that are not all equal.
pub fn linear_fit(points: &[(f64, f64)]) -> Result<FitResult> {
    linear_fit_over(points, (0, points.len().saturating_sub(1)))
}

/// [`linear_fit`] labelled with the degree range the points come from.
pub fn linear_fit_over(points: &[(f64, f64)], n_range: (usize, usize)) -> Result<FitResult> {
    if points.len() < 3 {
        return Err(Error::DegenerateInput("a fit needs at least three points"));
    }
    if points.iter().any(|(x, y)| !x.is_finite() || !y.is_finite()) {
        return Err(Error::DegenerateInput("fit points must be finite"));
    }
    let count = Real::from_u64(points.len() as u64, FIT_BITS);
    let xs: Vec<Real> = points.iter().map(|p| Real::from_f64(p.0, FIT_BITS)).collect();
    let ys: Vec<Real> = points.iter().map(|p| Real::from_f64(p.1, FIT_BITS)).collect();
    let mean = |v: &[Real]| v.iter().fold(Real::zero(FIT_BITS), |acc, x| acc + x) / &count;
    let (mx, my) = (mean(&xs), mean(&ys));
    let mut sxx = Real::zero(FIT_BITS);
    let mut syy = Real::zero(FIT_BITS);
    let mut sxy = Real::zero(FIT_BITS);
    for (x, y) in xs.iter().zip(&ys) {
        let dx = x - &mx;
        let dy = y - &my;
        sxx = sxx + &dx * &dx;
        syy = syy + &dy * &dy;
        sxy = sxy + dx * dy;
    }
    if sxx.is_zero() {
        return Err(Error::DegenerateInput("x values have zero variance"));
    }
    let slope = &sxy / &sxx;
    let intercept = &my - &slope * &mx;
    let correlation = if syy.is_zero() {
        0.0
    } else {
        (&sxy / (&sxx * &syy).sqrt()).to_f64().clamp(-1.0, 1.0)
    };
    Ok(FitResult {
        slope: slope.to_f64(),
        intercept: intercept.to_f64(),
        correlation,
        n_range,
        points: points.to_vec(),
    })
}

fn check_range(n_lo: usize, n_hi: usize) -> Result<()> {
    if n_hi < n_lo + 2 {
        return Err(Error::DegenerateInput("degree range must span at least three values"));
    }
    Ok(())
}

/// `((Δx)_n, N[ρ_n])`.
pub fn shannon_fit_point(n: usize, cfg: &QuadratureConfig) -> Result<(f64, f64)> {
    let length = shannon_length(n, cfg)?.length.to_f64();
    Ok((standard_deviation(n).to_f64(), length))
}

/// `((Δx)_n, L[ρ_n])`.
pub fn heller_fit_point(n: usize) -> (f64, f64) {
    let length = onicescu_heller_length(n, FIT_BITS).value.to_f64();
    (standard_deviation(n).to_f64(), length)
}

/// Shannon length against standard deviation for `n ∈ [n_lo, n_hi]`.
pub fn shannon_vs_std_fit(n_lo: usize, n_hi: usize, cfg: &QuadratureConfig) -> Result<FitResult> {
    check_range(n_lo, n_hi)?;
    let points = (n_lo..=n_hi)
        .map(|n| shannon_fit_point(n, cfg))
        .collect::<Result<Vec<_>>>()?;
    linear_fit_over(&points, (n_lo, n_hi))
}

/// Onicescu–Heller length against standard deviation for `n ∈ [n_lo, n_hi]`.
pub fn heller_vs_std_fit(n_lo: usize, n_hi: usize) -> Result<FitResult> {
    check_range(n_lo, n_hi)?;
    let points: Vec<_> = (n_lo..=n_hi).map(heller_fit_point).collect();
    linear_fit_over(&points, (n_lo, n_hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_line() {
        let pts: Vec<_> = (0..5).map(|i| (i as f64, 2.0 * i as f64 + 1.0)).collect();
        let f = linear_fit(&pts).unwrap();
        assert_eq!((f.slope, f.intercept, f.correlation), (2.0, 1.0, 1.0));
        assert_eq!(f.n_range, (0, 4));
    }

    #[test]
    fn v_shape_has_no_correlation() {
        let pts: Vec<_> = (-3..=3).map(|i| (i as f64, (i as f64).abs())).collect();
        let f = linear_fit(&pts).unwrap();
        assert!(f.correlation.abs() < 1e-15);
        assert!(f.slope.abs() < 1e-15);
    }

    #[test]
    fn degenerate_inputs() {
        assert!(matches!(
            linear_fit(&[(1.0, 1.0), (1.0, 2.0), (1.0, 3.0)]),
            Err(Error::DegenerateInput(_))
        ));
        assert!(linear_fit(&[(0.0, 1.0), (1.0, 2.0)]).is_err());
        assert!(linear_fit(&[(0.0, 1.0), (1.0, f64::NAN), (2.0, 0.0)]).is_err());
        let flat = linear_fit(&[(0.0, 1.0), (1.0, 1.0), (2.0, 1.0)]).unwrap();
        assert_eq!((flat.slope, flat.correlation), (0.0, 0.0));
        assert!(heller_vs_std_fit(3, 4).is_err());
    }

    #[test]
    fn heller_fit_is_nearly_linear() {
        let f = heller_vs_std_fit(0, 20).unwrap();
        assert!(f.correlation > 0.99 && f.correlation <= 1.0);
        assert_eq!(f.points.len(), 21);
        assert_eq!(f.n_range, (0, 20));
    }
}
