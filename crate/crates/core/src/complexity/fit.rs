//! Least-squares fit of `count ≈ a · e^(b·n) · n!`.
//!
//! Taking logs gives the line `ln(count / n!) = ln a + b·n`, fitted by
//! ordinary least squares.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitConstants {
    pub a: f64,
    pub b: f64,
}

/// Published constants for the standard-delete table.
pub const STANDARD_REFERENCE_FIT: FitConstants = FitConstants { a: 1.021, b: 0.135 };
/// Published constants for the modified-delete table.
pub const MODIFIED_REFERENCE_FIT: FitConstants = FitConstants {
    a: 1.109,
    b: 0.09822,
};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FitResult {
    pub a: f64,
    pub b: f64,
    /// Sum of squared residuals of the log-linear fit.
    pub residual: f64,
}

impl FitResult {
    pub fn constants(&self) -> FitConstants {
        FitConstants {
            a: self.a,
            b: self.b,
        }
    }

    pub fn eval(&self, n: usize) -> f64 {
        eval_approx(self.constants(), n)
    }
}

pub fn ln_factorial(n: usize) -> f64 {
    (2..=n).map(|i| (i as f64).ln()).sum()
}

/// `a · e^(b·n) · n!`
pub fn eval_approx(fit: FitConstants, n: usize) -> f64 {
    (fit.a.ln() + fit.b * n as f64 + ln_factorial(n)).exp()
}

/// Fits `(n, count)` points. Needs two distinct `n` and positive counts.
pub fn fit_factorial_exponential(points: &[(usize, f64)]) -> Result<FitResult> {
    if points.len() < 2
        || points
            .iter()
            .any(|&(_, v)| v.is_nan() || v <= 0.0 || !v.is_finite())
    {
        return Err(Error::DegenerateFit);
    }
    let xs: Vec<f64> = points.iter().map(|&(n, _)| n as f64).collect();
    let ys: Vec<f64> = points
        .iter()
        .map(|&(n, v)| v.ln() - ln_factorial(n))
        .collect();
    let len = xs.len() as f64;
    let mean_x = xs.iter().sum::<f64>() / len;
    let mean_y = ys.iter().sum::<f64>() / len;
    let sxx: f64 = xs.iter().map(|x| (x - mean_x).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::DegenerateFit);
    }
    let sxy: f64 = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (x - mean_x) * (y - mean_y))
        .sum();
    let b = sxy / sxx;
    let intercept = mean_y - b * mean_x;
    let residual = xs
        .iter()
        .zip(&ys)
        .map(|(x, y)| (y - intercept - b * x).powi(2))
        .sum();
    Ok(FitResult {
        a: intercept.exp(),
        b,
        residual,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_model_is_recovered() {
        let model = FitConstants { a: 1.7, b: 0.25 };
        let points: Vec<_> = (1..=10).map(|n| (n, eval_approx(model, n))).collect();
        let fit = fit_factorial_exponential(&points).unwrap();
        assert!((fit.a - 1.7).abs() < 1e-12);
        assert!((fit.b - 0.25).abs() < 1e-12);
        assert!(fit.residual < 1e-20);
    }

    #[test]
    fn degenerate_inputs() {
        assert_eq!(
            fit_factorial_exponential(&[(1, 1.0)]),
            Err(Error::DegenerateFit)
        );
        assert_eq!(
            fit_factorial_exponential(&[(1, 1.0), (2, 0.0)]),
            Err(Error::DegenerateFit)
        );
        assert_eq!(
            fit_factorial_exponential(&[(3, 1.0), (3, 2.0)]),
            Err(Error::DegenerateFit)
        );
        assert_eq!(
            fit_factorial_exponential(&[(1, 1.0), (2, f64::NAN)]),
            Err(Error::DegenerateFit)
        );
    }

    #[test]
    fn reference_constants() {
        assert_eq!(eval_approx(STANDARD_REFERENCE_FIT, 6).round(), 1652.0);
        let rel = |v: f64, t: f64| (v - t).abs() / t;
        assert!(rel(eval_approx(STANDARD_REFERENCE_FIT, 10), 14_291_780.0) < 1e-3);
        assert!(rel(eval_approx(MODIFIED_REFERENCE_FIT, 10), 10_746_292.0) < 1e-3);
    }
}
