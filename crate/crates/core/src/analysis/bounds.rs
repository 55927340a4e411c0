//! Numerical checks of the direct, quantitative and Bernstein-type estimates.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;

use crate::analysis::curve::{check_ns, error_function, norm_or_inf};
use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::kernels::{hybrid_moment, moment, DensityKernel};
use crate::operators::{steklov, KantorovichEval};
use crate::orlicz::{modular, probe_conditions, strong_modulus, weak_modulus, ConditionReport, PhiFunction};
use crate::quadrature::gauss_legendre;

/// Geometric λ grid `2^0, 2^-1, …, 2^-20` for statements with an existential λ.
pub fn lambda_grid() -> Vec<f64> {
    (0..=20).map(|i| 0.5f64.powi(i)).collect()
}

/// Spread allowed for ratio sequences of estimates with unknown constants.
pub const SPREAD_LIMIT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundKind {
    CompactDirect,
    OperatorNorm,
    WeakDirect,
    DeltaPrimeDirect,
    GeneralModular,
    Quantitative,
    WeakQuantitative,
    WeakQuantitativeFitted,
    SteklovDirect,
    Bernstein,
    DerivativeBound,
    Minkowski,
    WeakMinkowski,
}

impl BoundKind {
    pub const ALL: [BoundKind; 13] = [
        BoundKind::CompactDirect,
        BoundKind::OperatorNorm,
        BoundKind::WeakDirect,
        BoundKind::DeltaPrimeDirect,
        BoundKind::GeneralModular,
        BoundKind::Quantitative,
        BoundKind::WeakQuantitative,
        BoundKind::WeakQuantitativeFitted,
        BoundKind::SteklovDirect,
        BoundKind::Bernstein,
        BoundKind::DerivativeBound,
        BoundKind::Minkowski,
        BoundKind::WeakMinkowski,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundKind::CompactDirect => "compact_direct",
            BoundKind::OperatorNorm => "operator_norm",
            BoundKind::WeakDirect => "weak_direct",
            BoundKind::DeltaPrimeDirect => "delta_prime_direct",
            BoundKind::GeneralModular => "general_modular",
            BoundKind::Quantitative => "quantitative",
            BoundKind::WeakQuantitative => "weak_quantitative",
            BoundKind::WeakQuantitativeFitted => "weak_quantitative_fitted",
            BoundKind::SteklovDirect => "steklov_direct",
            BoundKind::Bernstein => "bernstein",
            BoundKind::DerivativeBound => "derivative_bound",
            BoundKind::Minkowski => "minkowski",
            BoundKind::WeakMinkowski => "weak_minkowski",
        }
    }

    /// Whether the estimate carries an explicit constant.
    pub fn explicit(&self) -> bool {
        matches!(
            self,
            BoundKind::CompactDirect
                | BoundKind::OperatorNorm
                | BoundKind::WeakDirect
                | BoundKind::WeakQuantitative
                | BoundKind::SteklovDirect
                | BoundKind::Minkowski
                | BoundKind::WeakMinkowski
        )
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for BoundKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BoundKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| Error::UnknownName {
                kind: "bound kind",
                name: s.to_string(),
            })
    }
}

/// Inputs recorded with a report.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundParams {
    pub f: String,
    pub phi: String,
    pub kernel: String,
    pub n: Option<usize>,
    pub h: Option<f64>,
    pub lambda: Option<f64>,
    /// Which side of the statement was checked, e.g. `norm` or `modular`.
    pub form: &'static str,
}

impl fmt::Display for BoundParams {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            out,
            "f={};phi={};kernel={};form={}",
            self.f, self.phi, self.kernel, self.form
        )?;
        if let Some(n) = self.n {
            write!(out, ";n={n}")?;
        }
        if let Some(h) = self.h {
            write!(out, ";h={h}")?;
        }
        if let Some(l) = self.lambda {
            write!(out, ";lambda={l}")?;
        }
        Ok(())
    }
}

/// One checked inequality. For kinds without explicit constants, `lhs` is
/// the largest measured ratio, `rhs` is four times the smallest, and
/// `ratio` is the spread divided by four.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundReport {
    pub kind: BoundKind,
    pub lhs: f64,
    pub rhs: f64,
    pub ratio: f64,
    pub pass: bool,
    pub params: BoundParams,
}

/// Inputs for [`verify_bound`].
#[derive(Debug, Clone)]
pub struct BoundSetup<'a> {
    pub f: &'a IntervalFunction,
    pub phi: &'a PhiFunction,
    pub kernel: &'a DensityKernel,
    pub ns: Vec<usize>,
    /// Steklov step sizes.
    pub hs: Vec<f64>,
    /// Steklov order, 1 or 2.
    pub steklov_order: u32,
    /// Length of the parameter interval `J = [0, window]` for the Minkowski checks.
    pub window: f64,
    /// Slack for explicit-constant checks.
    pub tol: f64,
}

impl<'a> BoundSetup<'a> {
    pub fn new(f: &'a IntervalFunction, phi: &'a PhiFunction, kernel: &'a DensityKernel) -> Self {
        Self {
            f,
            phi,
            kernel,
            ns: vec![8, 16, 32, 64],
            hs: vec![0.2, 0.1, 0.05],
            steklov_order: 1,
            window: 0.1,
            tol: 1e-6,
        }
    }

    pub fn with_ns(mut self, ns: impl Into<Vec<usize>>) -> Self {
        self.ns = ns.into();
        self
    }

    pub fn with_hs(mut self, hs: impl Into<Vec<f64>>) -> Self {
        self.hs = hs.into();
        self
    }

    pub fn with_steklov_order(mut self, k: u32) -> Self {
        self.steklov_order = k;
        self
    }

    pub fn with_window(mut self, window: f64) -> Self {
        self.window = window;
        self
    }

    pub fn with_tol(mut self, tol: f64) -> Self {
        self.tol = tol;
        self
    }

    fn params(&self, n: Option<usize>, h: Option<f64>, lambda: Option<f64>, form: &'static str) -> BoundParams {
        BoundParams {
            f: self.f.label().to_string(),
            phi: self.phi.to_string(),
            kernel: self.kernel.to_string(),
            n,
            h,
            lambda,
            form,
        }
    }

    fn explicit(&self, kind: BoundKind, lhs: f64, rhs: f64, params: BoundParams) -> BoundReport {
        let ratio = quotient(lhs, rhs);
        BoundReport {
            kind,
            lhs,
            rhs,
            ratio,
            pass: ratio <= 1.0 + self.tol,
            params,
        }
    }

    fn fitted(&self, kind: BoundKind, ratios: &[f64], lambda: Option<f64>, form: &'static str) -> BoundReport {
        let params = self.params(None, None, lambda, form);
        let (lhs, rhs, ratio) = spread(ratios);
        BoundReport {
            kind,
            lhs,
            rhs,
            ratio,
            pass: ratio <= 1.0 + self.tol,
            params,
        }
    }
}

/// `lhs / rhs` with `0 / 0 = 0`.
fn quotient(lhs: f64, rhs: f64) -> f64 {
    if lhs == 0.0 {
        0.0
    } else if rhs == 0.0 || !rhs.is_finite() && !lhs.is_finite() {
        f64::INFINITY
    } else {
        lhs / rhs
    }
}

/// `(max, 4 min, max / (4 min))` over the nonzero ratios; all-zero sequences give zeros.
fn spread(ratios: &[f64]) -> (f64, f64, f64) {
    if ratios.iter().any(|r| !r.is_finite()) {
        return (f64::INFINITY, f64::NAN, f64::INFINITY);
    }
    let live: Vec<f64> = ratios.iter().copied().filter(|r| *r > 0.0).collect();
    if live.is_empty() {
        return (0.0, 0.0, 0.0);
    }
    let hi = live.iter().copied().fold(0.0, f64::max);
    let lo = live.iter().copied().fold(f64::INFINITY, f64::min);
    let rhs = SPREAD_LIMIT * lo;
    (hi, rhs, hi / rhs)
}

fn not_met(msg: impl Into<String>) -> Error {
    Error::HypothesisNotMet(msg.into())
}

fn require_compact(kernel: &DensityKernel) -> Result<f64> {
    kernel
        .compact_radius()
        .ok_or_else(|| not_met(format!("{kernel} is not compactly supported")))
}

fn require_convex(phi: &PhiFunction) -> Result<()> {
    if phi.convex {
        Ok(())
    } else {
        Err(not_met(format!("{phi} is not convex")))
    }
}

fn require_n_function(phi: &PhiFunction, probe: &ConditionReport) -> Result<()> {
    require_convex(phi)?;
    if probe.n_function.holds {
        Ok(())
    } else {
        Err(not_met(format!("{phi} is not an N-function")))
    }
}

fn require_beta(phi: &PhiFunction, probe: &ConditionReport) -> Result<()> {
    require_convex(phi)?;
    if probe.beta.holds() {
        Ok(())
    } else {
        Err(not_met(format!("no beta > 1 makes u^-beta {phi}(u) increasing")))
    }
}

fn require_delta_prime(phi: &PhiFunction, probe: &ConditionReport) -> Result<()> {
    if probe.delta_prime.holds {
        Ok(())
    } else {
        Err(not_met(format!("{phi} fails the delta-prime probe")))
    }
}

fn require_hybrid(kernel: &DensityKernel, phi: &PhiFunction, mu: f64) -> Result<()> {
    match hybrid_moment(kernel, phi, 0.0, mu) {
        Ok(m) if m.value.is_finite() => Ok(()),
        Ok(_) | Err(Error::PotentiallyInfinite(_)) => Err(not_met(format!(
            "phi-moment of order (0, {mu}) of {kernel} under {phi} is not finite"
        ))),
        Err(e) => Err(e),
    }
}

fn require_derivative(f: &IntervalFunction) -> Result<&IntervalFunction> {
    f.derivative()
        .ok_or_else(|| not_met(format!("{} has no derivative", f.label())))
}

fn require_member(phi: &PhiFunction, f: &IntervalFunction, what: &str) -> Result<f64> {
    let v = norm_or_inf(phi, f)?;
    if v.is_finite() {
        Ok(v)
    } else {
        Err(not_met(format!("{what} is not in the Orlicz space of {phi}")))
    }
}

fn norms_per_n<F>(ns: &[usize], g: F) -> Result<Vec<f64>>
where
    F: Fn(usize) -> Result<f64> + Sync,
{
    ns.par_iter().map(|&n| g(n)).collect()
}

/// First λ on the grid for which every quantity returned by `eval` is finite.
fn search_lambda<T, F>(eval: F) -> Result<(f64, T)>
where
    F: Fn(f64) -> Result<Option<T>>,
{
    for lambda in lambda_grid() {
        if let Some(v) = eval(lambda)? {
            return Ok((lambda, v));
        }
    }
    Err(not_met("no lambda in 2^0 .. 2^-20 makes every modular finite"))
}

fn squared(d: &IntervalFunction) -> IntervalFunction {
    d.map_values(|v| v * v)
}

/// `K'_n f` as an interval function.
fn derivative_of_operator(kernel: &DensityKernel, f: &IntervalFunction, n: usize) -> Result<IntervalFunction> {
    if !kernel.has_derivative() {
        return Err(not_met(format!("{kernel} has no derivative")));
    }
    let g = KantorovichEval::new(kernel, f, n)?.into_function();
    Ok(g.derivative().cloned().expect("operator view carries its derivative"))
}

/// Checks one estimate, returning one report per `n` (or `h`) for explicit
/// constants and one spread report per form otherwise.
pub fn verify_bound(kind: BoundKind, s: &BoundSetup<'_>) -> Result<Vec<BoundReport>> {
    let (f, phi, kernel) = (s.f, s.phi, s.kernel);
    let needs_ns = !matches!(
        kind,
        BoundKind::SteklovDirect | BoundKind::Minkowski | BoundKind::WeakMinkowski
    );
    if needs_ns {
        check_ns(&s.ns)?;
    }
    let probe = probe_conditions(phi);
    let ns = &s.ns;
    match kind {
        BoundKind::CompactDirect => {
            let upsilon = require_compact(kernel)?;
            require_n_function(phi, &probe)?;
            let d = require_derivative(f)?;
            let dnorm = require_member(phi, d, "f'")?;
            let lhs = norms_per_n(ns, |n| norm_or_inf(phi, &error_function(kernel, f, n)?))?;
            Ok(ns
                .iter()
                .zip(lhs)
                .map(|(&n, l)| {
                    let rhs = 4.0 * (1.0 + upsilon) * dnorm / n as f64;
                    s.explicit(kind, l, rhs, s.params(Some(n), None, None, "norm"))
                })
                .collect())
        }
        BoundKind::OperatorNorm => {
            require_convex(phi)?;
            let fnorm = require_member(phi, f, "f")?;
            let inv = 1.0 / kernel.phi_at_2;
            let lambda = if fnorm > 0.0 { 1.0 / fnorm } else { 1.0 };
            let base = modular(phi, f, lambda)?.value();
            let rows: Vec<(f64, f64)> = ns
                .par_iter()
                .map(|&n| {
                    let g = KantorovichEval::new(kernel, f, n)?.into_function();
                    Ok((norm_or_inf(phi, &g)?, modular(phi, &g, lambda)?.value()))
                })
                .collect::<Result<_>>()?;
            let mut out = Vec::new();
            for (&n, (norm, m)) in ns.iter().zip(rows) {
                out.push(s.explicit(kind, norm, inv * fnorm, s.params(Some(n), None, None, "norm")));
                out.push(s.explicit(kind, m, inv * base, s.params(Some(n), None, Some(lambda), "modular")));
            }
            Ok(out)
        }
        BoundKind::WeakDirect => {
            let upsilon = require_compact(kernel)?;
            require_convex(phi)?;
            let d = require_derivative(f)?;
            let errors: Vec<IntervalFunction> = ns
                .iter()
                .map(|&n| error_function(kernel, f, n))
                .collect::<Result<_>>()?;
            let (lambda, rows) = search_lambda(|lambda| {
                let rows: Vec<(f64, f64)> = ns
                    .par_iter()
                    .zip(&errors)
                    .map(|(&n, e)| {
                        let lhs = modular(phi, e, lambda)?.value();
                        let rhs = modular(phi, d, 2.0 * lambda * (1.0 + upsilon) / n as f64)?.value();
                        Ok((lhs, rhs))
                    })
                    .collect::<Result<_>>()?;
                Ok(rows.iter().all(|(l, r)| l.is_finite() && r.is_finite()).then_some(rows))
            })?;
            Ok(ns
                .iter()
                .zip(rows)
                .map(|(&n, (l, r))| s.explicit(kind, l, r, s.params(Some(n), None, Some(lambda), "modular")))
                .collect())
        }
        BoundKind::DeltaPrimeDirect => {
            require_beta(phi, &probe)?;
            require_delta_prime(phi, &probe)?;
            require_hybrid(kernel, phi, 1.0)?;
            let d = require_derivative(f)?;
            let dnorm = require_member(phi, d, "f'")?;
            let rows: Vec<(f64, f64)> = ns
                .par_iter()
                .map(|&n| {
                    let e = error_function(kernel, f, n)?;
                    let nf = n as f64;
                    let modular_ratio = quotient(modular(phi, &e, 1.0)?.value(), modular(phi, d, 2.0 / nf)?.value());
                    let norm_ratio = quotient(norm_or_inf(phi, &e)?, 2.0 * dnorm / nf);
                    Ok((modular_ratio, norm_ratio))
                })
                .collect::<Result<_>>()?;
            let (m, l): (Vec<f64>, Vec<f64>) = rows.into_iter().unzip();
            Ok(vec![
                s.fitted(kind, &m, Some(1.0), "modular"),
                s.fitted(kind, &l, None, "norm"),
            ])
        }
        BoundKind::GeneralModular => {
            require_beta(phi, &probe)?;
            require_hybrid(kernel, phi, 2.0)?;
            let d = require_derivative(f)?;
            let d2 = squared(d);
            let (lambda_bar, _) = search_lambda(|l| Ok(modular(phi, &d2, l)?.is_finite().then_some(())))
                .map_err(|_| not_met(format!("(f')^2 is not in the Orlicz space of {phi}")))?;
            let cap = lambda_bar.min(1.0);
            let errors: Vec<IntervalFunction> = ns
                .iter()
                .map(|&n| error_function(kernel, f, n))
                .collect::<Result<_>>()?;
            let (lambda, ratios) = search_lambda(|lambda| {
                if 4.0 * lambda >= cap {
                    return Ok(None);
                }
                let ratios: Vec<f64> = ns
                    .par_iter()
                    .zip(&errors)
                    .map(|(&n, e)| {
                        let nf = n as f64;
                        let lhs = modular(phi, e, lambda)?.value();
                        let rhs = lambda / nf + modular(phi, &d2, 4.0 * lambda / nf)?.value();
                        Ok(quotient(lhs, rhs))
                    })
                    .collect::<Result<_>>()?;
                Ok(ratios.iter().all(|r| r.is_finite()).then_some(ratios))
            })?;
            Ok(vec![s.fitted(kind, &ratios, Some(lambda), "modular")])
        }
        BoundKind::Quantitative => {
            let compact = kernel.compact_radius().is_some() && probe.n_function.holds && phi.convex;
            if !compact {
                require_beta(phi, &probe)?;
                require_delta_prime(phi, &probe)?;
                require_hybrid(kernel, phi, 1.0)?;
            }
            require_member(phi, f, "f")?;
            let ratios = norms_per_n(ns, |n| {
                let lhs = norm_or_inf(phi, &error_function(kernel, f, n)?)?;
                let w = strong_modulus(phi, f, 1.0 / n as f64, 1)?;
                Ok(quotient(lhs, w))
            })?;
            Ok(vec![s.fitted(kind, &ratios, None, "norm")])
        }
        BoundKind::WeakQuantitative => {
            if kernel.compact_radius().is_none() {
                return verify_bound(BoundKind::WeakQuantitativeFitted, s);
            }
            let upsilon = require_compact(kernel)?;
            require_convex(phi)?;
            let factor = 2.0 + 1.0 / kernel.phi_at_2;
            let errors: Vec<IntervalFunction> = ns
                .iter()
                .map(|&n| error_function(kernel, f, n))
                .collect::<Result<_>>()?;
            let (lambda, rows) = search_lambda(|lambda| {
                let rows: Vec<(f64, f64)> = ns
                    .par_iter()
                    .zip(&errors)
                    .map(|(&n, e)| {
                        let lhs = modular(phi, e, lambda)?.value();
                        let w = weak_modulus(phi, f, 1.0 / n as f64, 6.0 * lambda * (1.0 + upsilon))?;
                        Ok((lhs, factor * w.value()))
                    })
                    .collect::<Result<_>>()?;
                Ok(rows.iter().all(|(l, r)| l.is_finite() && r.is_finite()).then_some(rows))
            })?;
            Ok(ns
                .iter()
                .zip(rows)
                .map(|(&n, (l, r))| s.explicit(kind, l, r, s.params(Some(n), None, Some(lambda), "modular")))
                .collect())
        }
        BoundKind::WeakQuantitativeFitted => {
            require_beta(phi, &probe)?;
            require_hybrid(kernel, phi, 2.0)?;
            let errors: Vec<IntervalFunction> = ns
                .iter()
                .map(|&n| error_function(kernel, f, n))
                .collect::<Result<_>>()?;
            let (lambda, ratios) = search_lambda(|lambda| {
                let ratios: Vec<f64> = ns
                    .par_iter()
                    .zip(&errors)
                    .map(|(&n, e)| {
                        let nf = n as f64;
                        let lhs = modular(phi, e, lambda)?.value();
                        let w = weak_modulus(phi, f, nf.sqrt().recip(), 12.0 * lambda)?.value();
                        Ok(quotient(lhs, w + 3.0 * lambda / nf))
                    })
                    .collect::<Result<_>>()?;
                Ok(ratios.iter().all(|r| r.is_finite()).then_some(ratios))
            })?;
            Ok(vec![s.fitted(kind, &ratios, Some(lambda), "modular")])
        }
        BoundKind::SteklovDirect => {
            require_n_function(phi, &probe)?;
            require_member(phi, f, "f")?;
            let k = s.steklov_order;
            if s.hs.is_empty() {
                return Err(Error::InvalidArgument("hs must not be empty".into()));
            }
            let rows: Vec<Vec<BoundReport>> =
                s.hs.par_iter()
                    .map(|&h| {
                        let fk = steklov(f, k, h)?;
                        let wk = strong_modulus(phi, f, h, k)?;
                        let dist = norm_or_inf(phi, &f.minus(&fk)?)?;
                        let mut out = vec![s.explicit(kind, dist, 2.0 * wk, s.params(None, Some(h), None, "distance"))];
                        if let Some(d) = fk.derivative() {
                            let w1 = strong_modulus(phi, f, h, 1)?;
                            let c = 2.0 * ((2 * k) as f64).powi(k as i32) / h;
                            let dn = norm_or_inf(phi, d)?;
                            out.push(s.explicit(kind, dn, c * w1, s.params(None, Some(h), None, "derivative")));
                        }
                        Ok(out)
                    })
                    .collect::<Result<_>>()?;
            Ok(rows.into_iter().flatten().collect())
        }
        BoundKind::Bernstein => {
            require_convex(phi)?;
            let fnorm = require_member(phi, f, "f")?;
            let ratios = norms_per_n(ns, |n| {
                let d = derivative_of_operator(kernel, f, n)?;
                Ok(quotient(norm_or_inf(phi, &d)?, n as f64 * fnorm))
            })?;
            Ok(vec![s.fitted(kind, &ratios, None, "norm")])
        }
        BoundKind::DerivativeBound => {
            require_beta(phi, &probe)?;
            match moment(kernel, 1.0) {
                Ok(m) if m.value.is_finite() => {}
                Ok(_) | Err(Error::PotentiallyInfinite(_)) => {
                    return Err(not_met(format!("first moment of {kernel} is not finite")))
                }
                Err(e) => return Err(e),
            }
            let d = require_derivative(f)?;
            let dnorm = require_member(phi, d, "f'")?;
            let ratios = norms_per_n(ns, |n| {
                let dk = derivative_of_operator(kernel, f, n)?;
                Ok(quotient(norm_or_inf(phi, &dk)?, dnorm))
            })?;
            Ok(vec![s.fitted(kind, &ratios, None, "norm")])
        }
        BoundKind::Minkowski => {
            require_n_function(phi, &probe)?;
            let j = check_window(s)?;
            let (t, w) = window_rule(j);
            let lhs = norm_or_inf(phi, &window_integral(f, j))?;
            let shifted: Vec<f64> = t
                .par_iter()
                .map(|&ti| norm_or_inf(phi, &f.shifted(ti)))
                .collect::<Result<_>>()?;
            let rhs = 2.0 * shifted.iter().zip(&w).map(|(v, wi)| v * wi).sum::<f64>();
            Ok(vec![s.explicit(kind, lhs, rhs, s.params(None, Some(j), None, "norm"))])
        }
        BoundKind::WeakMinkowski => {
            require_convex(phi)?;
            let j = check_window(s)?;
            let (t, w) = window_rule(j);
            let inner = window_integral(f, j);
            let (lambda, (lhs, rhs)) = search_lambda(|lambda| {
                let parts: Vec<f64> = t
                    .par_iter()
                    .map(|&ti| Ok(modular(phi, &f.shifted(ti), lambda * j)?.value()))
                    .collect::<Result<_>>()?;
                let rhs = parts.iter().zip(&w).map(|(v, wi)| v * wi).sum::<f64>() / j;
                if !rhs.is_finite() {
                    return Ok(None);
                }
                let lhs = modular(phi, &inner, lambda)?.value();
                Ok(Some((lhs, rhs)))
            })?;
            Ok(vec![s.explicit(
                kind,
                lhs,
                rhs,
                s.params(None, Some(j), Some(lambda), "modular"),
            )])
        }
    }
}

fn check_window(s: &BoundSetup<'_>) -> Result<f64> {
    let j = s.window;
    if j > 0.0 && j <= s.f.period() {
        Ok(j)
    } else {
        Err(Error::InvalidArgument(format!(
            "window must lie in (0, b - a], got {j}"
        )))
    }
}

/// Gauss–Legendre nodes and weights on `[0, j]`.
fn window_rule(j: f64) -> (Vec<f64>, Vec<f64>) {
    let (x, w) = gauss_legendre(8);
    (
        x.iter().map(|z| 0.5 * j * (z + 1.0)).collect(),
        w.iter().map(|v| 0.5 * j * v).collect(),
    )
}

/// `x -> ∫_0^j |f(x + t)| dt`.
fn window_integral(f: &IntervalFunction, j: f64) -> IntervalFunction {
    let abs = f.map_values(f64::abs);
    steklov(&abs, 1, j)
        .map(|g| g.scaled(j))
        .unwrap_or_else(|_| unreachable!("window already validated"))
        .with_label(format!("int_0^{j} |{}(.+t)| dt", f.label()))
}
