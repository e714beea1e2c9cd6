use serde::{Deserialize, Serialize};

use super::dataset::{require_rows, SignatureDataset};
use super::linalg::{dot, solve_min_norm, solve_pivoted, Matrix};
use crate::error::{Error, Result};

/// Least-squares fit of `num_ideals` on `(n, g, entropy)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RegressionResult {
    /// `(α, β, γ)` for `n`, `g` and entropy.
    pub coefficients: [f64; 3],
    /// Zero for the through-origin fit.
    pub intercept: f64,
    pub with_intercept: bool,
    /// `1 − SS_res / SS_tot`, with `SS_tot` centered when an intercept is
    /// fitted and uncentered otherwise; 0 when `SS_tot = 0`.
    pub r_squared: f64,
    /// `√R²`.
    pub r: f64,
    /// The normal equations were singular; the minimum-norm solution is used.
    pub singular: bool,
    pub rows: usize,
    /// `max_j |x_jᵀ r|` over design columns, the normal-equation residual.
    pub max_column_residual_dot: f64,
}

/// General OLS on an explicit design. `design[i]` holds the regressors of
/// observation `i`; a leading column of ones is added when `intercept` is set.
/// Returns the coefficient vector (intercept first, if any) and the fit.
pub fn ols(design: &[Vec<f64>], y: &[f64], intercept: bool) -> Result<(Vec<f64>, f64, bool, f64)> {
    let rows: Vec<Vec<f64>> = design
        .iter()
        .map(|x| {
            let mut r = Vec::with_capacity(x.len() + 1);
            if intercept {
                r.push(1.0);
            }
            r.extend_from_slice(x);
            r
        })
        .collect();
    let p = rows.first().map_or(0, Vec::len);
    if rows.len() <= p || p == 0 {
        return Err(Error::Contract(format!(
            "regression needs more observations ({}) than parameters ({p})",
            rows.len()
        )));
    }
    let mut xtx: Matrix = vec![vec![0.0; p]; p];
    let mut xty = vec![0.0; p];
    for (x, &yi) in rows.iter().zip(y) {
        for i in 0..p {
            xty[i] += x[i] * yi;
            for j in 0..p {
                xtx[i][j] += x[i] * x[j];
            }
        }
    }
    let (beta, singular) = match solve_pivoted(&xtx, &xty) {
        Some(b) => (b, false),
        None => (solve_min_norm(&xtx, &xty), true),
    };
    let residuals: Vec<f64> = rows.iter().zip(y).map(|(x, &yi)| yi - dot(x, &beta)).collect();
    let ss_res: f64 = residuals.iter().map(|r| r * r).sum();
    let ss_tot: f64 = if intercept {
        let mean = y.iter().sum::<f64>() / y.len() as f64;
        y.iter().map(|v| (v - mean).powi(2)).sum()
    } else {
        y.iter().map(|v| v * v).sum()
    };
    let r_squared = if ss_tot == 0.0 { 0.0 } else { (1.0 - ss_res / ss_tot).clamp(0.0, 1.0) };
    let max_dot = (0..p)
        .map(|j| rows.iter().zip(&residuals).map(|(x, r)| x[j] * r).sum::<f64>().abs())
        .fold(0.0, f64::max);
    Ok((beta, r_squared, singular, max_dot))
}

fn fit(ds: &SignatureDataset, intercept: bool) -> Result<RegressionResult> {
    require_rows(ds, if intercept { 4 } else { 3 }, "regression")?;
    let design: Vec<Vec<f64>> = ds
        .rows
        .iter()
        .map(|r| vec![r.signature.n as f64, r.signature.g as f64, r.signature.entropy])
        .collect();
    let y: Vec<f64> = ds.rows.iter().map(|r| r.signature.num_ideals as f64).collect();
    let (beta, r_squared, singular, max_dot) = ols(&design, &y, intercept)?;
    let (intercept_value, coef) = if intercept { (beta[0], &beta[1..]) } else { (0.0, &beta[..]) };
    Ok(RegressionResult {
        coefficients: [coef[0], coef[1], coef[2]],
        intercept: intercept_value,
        with_intercept: intercept,
        r_squared,
        r: r_squared.sqrt(),
        singular,
        rows: ds.rows.len(),
        max_column_residual_dot: max_dot,
    })
}

/// Fit with an intercept; needs at least 4 rows.
pub fn regression_fit(ds: &SignatureDataset) -> Result<RegressionResult> {
    fit(ds, true)
}

/// Fit through the origin; needs at least 3 rows.
pub fn regression_fit_through_origin(ds: &SignatureDataset) -> Result<RegressionResult> {
    fit(ds, false)
}
