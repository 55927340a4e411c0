//! Error curves and log–log rate fits.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::kernels::DensityKernel;
use crate::operators::KantorovichEval;
use crate::orlicz::{luxemburg_norm, modular, ModularValue, PhiFunction};

/// Default smallest `n` used by rate fits.
pub const N_MIN: usize = 8;

/// Least-squares line through `(ln x, ln y)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RateFit {
    pub slope: f64,
    pub intercept: f64,
    pub r2: f64,
    pub points: usize,
}

/// Fits `ln y = intercept + slope ln x` over pairs with finite positive `x`, `y`.
pub fn log_log_fit(xs: &[f64], ys: &[f64]) -> Result<RateFit> {
    let pts: Vec<(f64, f64)> = xs
        .iter()
        .zip(ys)
        .filter(|(x, y)| x.is_finite() && y.is_finite() && **x > 0.0 && **y > 0.0)
        .map(|(x, y)| (x.ln(), y.ln()))
        .collect();
    if pts.len() < 4 {
        return Err(Error::TooFewPoints(pts.len()));
    }
    let m = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / m;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / m;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    if sxx == 0.0 {
        return Err(Error::InvalidArgument("abscissae must not all coincide".into()));
    }
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ss_res: f64 = pts.iter().map(|p| (p.1 - intercept - slope * p.0).powi(2)).sum();
    let ss_tot: f64 = pts.iter().map(|p| (p.1 - my).powi(2)).sum();
    let r2 = if ss_tot <= 1e-300 || ss_res <= 1e-24 * ss_tot {
        1.0
    } else {
        1.0 - ss_res / ss_tot
    };
    Ok(RateFit {
        slope,
        intercept,
        r2,
        points: pts.len(),
    })
}

/// Fits `ln e_n` against `ln n`, ignoring `n < n_min`.
pub fn rate_fit(ns: &[usize], errors: &[f64], n_min: usize) -> Result<RateFit> {
    if ns.len() != errors.len() {
        return Err(Error::InvalidArgument("ns and errors differ in length".into()));
    }
    let (xs, ys): (Vec<f64>, Vec<f64>) = ns
        .iter()
        .zip(errors)
        .filter(|(n, _)| **n >= n_min)
        .map(|(n, e)| (*n as f64, *e))
        .unzip();
    log_log_fit(&xs, &ys)
}

/// Approximation errors of `K_n f` over a list of `n`.
#[derive(Debug, Clone, PartialEq)]
pub struct ErrorCurve {
    pub phi: String,
    pub kernel: String,
    pub f: String,
    pub ns: Vec<usize>,
    /// `‖K_n f − f‖_φ`, infinite when the bracket expansion fails.
    pub lux_errors: Vec<f64>,
    /// `I^φ[λ (K_n f − f)]`.
    pub modular_errors: Vec<ModularValue>,
    pub lambda: f64,
    /// Fit of the Luxemburg errors over `n >= N_MIN`, when possible.
    pub fit: Option<RateFit>,
}

pub(crate) fn check_ns(ns: &[usize]) -> Result<()> {
    if ns.is_empty() {
        return Err(Error::InvalidArgument("ns must not be empty".into()));
    }
    if ns.windows(2).any(|w| w[1] <= w[0]) || ns[0] == 0 {
        return Err(Error::InvalidArgument(
            "ns must be positive and strictly increasing".into(),
        ));
    }
    Ok(())
}

/// Luxemburg norm with a failed bracket expansion mapped to `+∞`.
pub fn norm_or_inf(phi: &PhiFunction, f: &IntervalFunction) -> Result<f64> {
    match luxemburg_norm(phi, f) {
        Err(Error::BracketExpansion { .. }) => Ok(f64::INFINITY),
        other => other,
    }
}

/// `K_n f − f` with derivative when both parts have one.
pub fn error_function(kernel: &DensityKernel, f: &IntervalFunction, n: usize) -> Result<IntervalFunction> {
    KantorovichEval::new(kernel, f, n)?.into_function().minus(f)
}

pub fn error_curve(
    f: &IntervalFunction,
    phi: &PhiFunction,
    kernel: &DensityKernel,
    ns: &[usize],
    lambda: f64,
) -> Result<ErrorCurve> {
    check_ns(ns)?;
    let rows: Vec<(f64, ModularValue)> = ns
        .par_iter()
        .map(|&n| {
            let e = error_function(kernel, f, n)?;
            Ok((norm_or_inf(phi, &e)?, modular(phi, &e, lambda)?))
        })
        .collect::<Result<_>>()?;
    let (lux_errors, modular_errors): (Vec<f64>, Vec<ModularValue>) = rows.into_iter().unzip();
    let fit = rate_fit(ns, &lux_errors, N_MIN).ok();
    Ok(ErrorCurve {
        phi: phi.to_string(),
        kernel: kernel.to_string(),
        f: f.label().to_string(),
        ns: ns.to_vec(),
        lux_errors,
        modular_errors,
        lambda,
        fit,
    })
}
