//! Lipschitz-class exponents, K-functional upper bounds and inverse checks.

use rayon::prelude::*;

use crate::analysis::bounds::lambda_grid;
use crate::analysis::curve::{error_curve, log_log_fit, norm_or_inf, ErrorCurve};
use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::kernels::{moment, DensityKernel};
use crate::operators::steklov;
use crate::orlicz::{probe_conditions, strong_modulus, weak_modulus, PhiFunction};

/// Which modulus a Lipschitz fit uses.
#[derive(Debug, Clone, PartialEq)]
pub enum ModulusKind {
    /// `ω(f, δ)_φ`.
    Strong,
    /// `ω̃(λ f, δ)_φ`, trying each λ in order until every value is finite.
    Weak { lambdas: Vec<f64> },
}

impl ModulusKind {
    /// Weak modulus over the default λ grid `2^0 … 2^-20`.
    pub fn weak() -> Self {
        ModulusKind::Weak { lambdas: lambda_grid() }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzFit {
    /// Fitted exponent; `+∞` when every modulus vanishes.
    pub nu_hat: f64,
    pub r2: f64,
    /// λ used by a weak fit.
    pub lambda: Option<f64>,
    pub deltas: Vec<f64>,
    pub moduli: Vec<f64>,
}

fn check_deltas(deltas: &[f64]) -> Result<()> {
    if deltas.is_empty() || deltas.iter().any(|d| !(*d > 0.0)) || deltas.windows(2).any(|w| w[1] >= w[0]) {
        return Err(Error::InvalidArgument(
            "deltas must be positive and strictly decreasing".into(),
        ));
    }
    Ok(())
}

fn fit(deltas: &[f64], moduli: Vec<f64>, lambda: Option<f64>) -> Result<LipschitzFit> {
    if moduli.iter().all(|m| *m == 0.0) {
        return Ok(LipschitzFit {
            nu_hat: f64::INFINITY,
            r2: 1.0,
            lambda,
            deltas: deltas.to_vec(),
            moduli,
        });
    }
    let rf = log_log_fit(deltas, &moduli)?;
    Ok(LipschitzFit {
        nu_hat: rf.slope,
        r2: rf.r2,
        lambda,
        deltas: deltas.to_vec(),
        moduli,
    })
}

/// Fits the exponent of `ω(f, δ)_φ` (or `ω̃(λ f, δ)_φ`) against `δ`.
pub fn lipschitz_fit(
    f: &IntervalFunction,
    phi: &PhiFunction,
    kind: &ModulusKind,
    deltas: &[f64],
) -> Result<LipschitzFit> {
    check_deltas(deltas)?;
    match kind {
        ModulusKind::Strong => {
            let moduli: Vec<f64> = deltas
                .par_iter()
                .map(|&d| match strong_modulus(phi, f, d, 1) {
                    Err(Error::BracketExpansion { .. }) => Ok(f64::INFINITY),
                    other => other,
                })
                .collect::<Result<_>>()?;
            fit(deltas, moduli, None)
        }
        ModulusKind::Weak { lambdas } => {
            for &lambda in lambdas {
                let moduli: Vec<f64> = deltas
                    .par_iter()
                    .map(|&d| Ok(weak_modulus(phi, f, d, lambda)?.value()))
                    .collect::<Result<_>>()?;
                if moduli.iter().all(|m| m.is_finite()) {
                    return fit(deltas, moduli, Some(lambda));
                }
            }
            Err(Error::NotInWeakClass)
        }
    }
}

/// Upper bound for the K-functional and the step achieving it.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct KFunctional {
    pub value: f64,
    pub h: f64,
}

/// `min_h ‖f − f_{1,h}‖_φ + δ ‖f'_{1,h}‖_φ`, an upper bound for `K(f, δ)_φ`.
pub fn k_functional_upper(f: &IntervalFunction, phi: &PhiFunction, delta: f64, h_grid: &[f64]) -> Result<KFunctional> {
    if h_grid.is_empty() || h_grid.iter().any(|h| !(*h > 0.0 && *h <= f.period())) {
        return Err(Error::InvalidArgument(
            "h_grid must be nonempty and within (0, b - a]".into(),
        ));
    }
    if !(delta >= 0.0) {
        return Err(Error::InvalidArgument(format!(
            "delta must be nonnegative, got {delta}"
        )));
    }
    let values: Vec<(f64, f64)> = h_grid
        .par_iter()
        .map(|&h| {
            let g = steklov(f, 1, h)?;
            let dist = norm_or_inf(phi, &f.minus(&g)?)?;
            let slope = norm_or_inf(phi, g.derivative().expect("first-order Steklov carries a derivative"))?;
            Ok((dist + delta * slope, h))
        })
        .collect::<Result<_>>()?;
    let (value, h) = values
        .into_iter()
        .fold((f64::INFINITY, h_grid[0]), |acc, v| if v.0 < acc.0 { v } else { acc });
    Ok(KFunctional { value, h })
}

/// Direct rate versus Lipschitz exponent.
#[derive(Debug, Clone, PartialEq)]
pub struct InverseReport {
    pub curve: ErrorCurve,
    pub lipschitz: LipschitzFit,
    /// Fitted slope of `‖K_n f − f‖_φ`; `None` when all errors vanish.
    pub error_slope: Option<f64>,
    pub error_r2: Option<f64>,
    pub nu_hat: f64,
    /// `|slope + ν̂|`.
    pub gap: f64,
    pub pass: bool,
    /// Errors vanish identically.
    pub degenerate: bool,
    /// `ν̂` near 1, outside the open range `0 < ν < 1`; informational.
    pub boundary: bool,
}

/// Agreement window between the direct rate and the modulus exponent.
pub const INVERSE_TOLERANCE: f64 = 0.15;

pub fn inverse_consistency(
    f: &IntervalFunction,
    phi: &PhiFunction,
    kernel: &DensityKernel,
    ns: &[usize],
    deltas: &[f64],
) -> Result<InverseReport> {
    let probe = probe_conditions(phi);
    if !phi.convex || !probe.beta.holds() {
        return Err(Error::HypothesisNotMet(format!(
            "no beta > 1 makes u^-beta {phi}(u) increasing"
        )));
    }
    if !kernel.has_derivative() {
        return Err(Error::HypothesisNotMet(format!("{kernel} has no derivative")));
    }
    match moment(kernel, 1.0) {
        Ok(m) if m.value.is_finite() => {}
        Ok(_) | Err(Error::PotentiallyInfinite(_)) => {
            return Err(Error::HypothesisNotMet(format!(
                "first moment of {kernel} is not finite"
            )))
        }
        Err(e) => return Err(e),
    }
    let curve = error_curve(f, phi, kernel, ns, 1.0)?;
    let lipschitz = lipschitz_fit(f, phi, &ModulusKind::Strong, deltas)?;
    let degenerate = curve.lux_errors.iter().all(|e| *e < 1e-12);
    if degenerate {
        return Ok(InverseReport {
            curve,
            nu_hat: lipschitz.nu_hat,
            lipschitz,
            error_slope: None,
            error_r2: None,
            gap: 0.0,
            pass: true,
            degenerate: true,
            boundary: false,
        });
    }
    let fit = curve.fit.ok_or(Error::TooFewPoints(0))?;
    let nu_hat = lipschitz.nu_hat;
    let gap = (fit.slope + nu_hat).abs();
    Ok(InverseReport {
        error_slope: Some(fit.slope),
        error_r2: Some(fit.r2),
        nu_hat,
        gap,
        pass: gap <= INVERSE_TOLERANCE,
        degenerate: false,
        boundary: nu_hat >= 0.95,
        curve,
        lipschitz,
    })
}
