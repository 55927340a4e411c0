//! The two worked examples: a weak-but-not-strong Lipschitz function and a
//! Sobolev–Orlicz function outside `W^{1,p}`.

use std::f64::consts::E;

use crate::corpus::corpus;
use crate::error::{Error, Result};
use crate::orlicz::{make_phi, PhiFunction};
use crate::quadrature::{integrate, integrate_with_points, QuadOptions};

/// One cutoff of the λ = 2 divergence probe.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DivergenceRow {
    /// The integral runs over `z ∈ [t + e^{-level}, 1]`.
    pub level: f64,
    pub quadrature: f64,
    /// `t (level + ln(1 − t))`.
    pub closed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct InclusionReport {
    pub t: f64,
    pub t1_quadrature: f64,
    pub t1_closed: f64,
    pub t2_quadrature: f64,
    pub t2_closed: f64,
    pub divergence: Vec<DivergenceRow>,
}

impl InclusionReport {
    /// Largest deviation between quadrature and closed forms.
    pub fn max_deviation(&self) -> f64 {
        let mut d = (self.t1_quadrature - self.t1_closed)
            .abs()
            .max((self.t2_quadrature - self.t2_closed).abs());
        for r in &self.divergence {
            d = d.max((r.quadrature - r.closed).abs() / r.closed.abs().max(1.0));
        }
        d
    }

    /// Divergence probe values strictly increase and the last one exceeds `threshold`.
    pub fn diverges_past(&self, threshold: f64) -> bool {
        self.divergence.windows(2).all(|w| w[1].quadrature > w[0].quadrature)
            && self.divergence.last().is_some_and(|r| r.quadrature > threshold)
    }
}

/// Default log-cutoffs of the divergence probe.
pub const DIVERGENCE_LEVELS: [f64; 5] = [10.0, 100.0, 1000.0, 1e4, 1e5];

/// `√(1−t) − (t/2) ln((1 − √(1−t)) / (√(1−t) + 1)) − 1 + t`.
pub fn t1_closed(t: f64) -> f64 {
    let r = (1.0 - t).sqrt();
    r - 0.5 * t * ((1.0 - r) / (r + 1.0)).ln() - 1.0 + t
}

/// The antiderivative bracket for `T₂` evaluated at `z = t`; it vanishes as `z → 0`.
pub fn t2_closed(t: f64) -> f64 {
    let z = t;
    let q = (-(-1.0 + t - z) / z).sqrt();
    let head = (-1.0 + q) * z;
    let tail =
        (1.0 - t).sqrt() * q * z.sqrt() * (z.sqrt() / (1.0 - t).sqrt()).asinh() / ((-1.0 + t - z) / (-1.0 + t)).sqrt();
    head + tail
}

/// Quadrature of `T₁(t)`, `T₂(t)` for `f = ln(x^{-1/2})` under `φ(u) = e^u − 1`
/// with λ = 1, and the λ = 2 integral over shrinking cutoffs.
pub fn inclusion_example(t: f64, levels: &[f64]) -> Result<InclusionReport> {
    if !(t > 0.0 && t <= 0.5) {
        return Err(Error::InvalidArgument(format!("t must lie in (0, 1/2], got {t}")));
    }
    let f = corpus("shifted_log")?;
    let phi = make_phi("exp", &[("rho", 1.0)])?;
    let opts = QuadOptions::default();
    let mut g1 = |z: f64| phi.eval((f.eval(z) - f.eval(z - t)).abs());
    let t1 = integrate_with_points(&mut g1, &[t, 1.0], &[t], &opts);
    let mut g2 = |z: f64| phi.eval((f.eval(z) - f.eval(z - t + 1.0)).abs());
    let t2 = integrate_with_points(&mut g2, &[0.0, t], &[0.0], &opts);
    let mut divergence = Vec::with_capacity(levels.len());
    for &level in levels {
        divergence.push(DivergenceRow {
            level,
            quadrature: lambda_two_integral(t, level, &opts),
            closed: t * (level + (1.0 - t).ln()),
        });
    }
    Ok(InclusionReport {
        t,
        t1_quadrature: t1.value,
        t1_closed: t1_closed(t),
        t2_quadrature: t2.value,
        t2_closed: t2_closed(t),
        divergence,
    })
}

/// `∫_{t+e^{-L}}^1 φ(2 |f(z) − f(z − t)|) dz` after `z = t + e^{-s}`.
///
/// With `2|f(z) − f(z − t)| = ln z − ln(z − t) = ln(t + e^{-s}) + s`, the
/// integrand `φ(·) e^{-s}` is evaluated as `exp(ln(t + e^{-s})) − e^{-s}`
/// so that large `s` does not overflow.
fn lambda_two_integral(t: f64, level: f64, opts: &QuadOptions) -> f64 {
    let s0 = -(1.0 - t).ln();
    if level <= s0 {
        return 0.0;
    }
    let g = |s: f64| {
        let e = (-s).exp();
        let u = (t + e).ln() + s;
        (u - s).exp() - e
    };
    let panels = ((level - s0) / 10.0).ceil() as usize;
    integrate(g, s0, level, &opts.with_min_panels(opts.min_panels.max(panels))).value
}

/// One cutoff of the Sobolev–Orlicz counterexample.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SobolevRow {
    /// `s = ln ln(1/ε)` for the cutoff `ε`.
    pub level: f64,
    /// `log10 ε = −e^s / ln 10`.
    pub log10_eps: f64,
    /// `∫_ε^{1/2} φ̃(u'(x)) dx`.
    pub modular: f64,
    /// `∫_ε^{1/2} u'(x)^p dx`.
    pub lp: f64,
    /// `ln ln(1/ε) − ln ln 2`.
    pub lp_closed: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SobolevReport {
    pub p: f64,
    pub phi: PhiFunction,
    pub rows: Vec<SobolevRow>,
}

impl SobolevReport {
    /// Change of the modular across the last two cutoffs.
    pub fn last_change(&self) -> f64 {
        match self.rows.as_slice() {
            [.., a, b] => (b.modular - a.modular).abs(),
            _ => f64::INFINITY,
        }
    }

    pub fn last_lp(&self) -> f64 {
        self.rows.last().map_or(0.0, |r| r.lp)
    }
}

/// Default log-cutoffs `s = ln ln(1/ε)`.
pub const SOBOLEV_LEVELS: [f64; 5] = [2.0, 5.0, 10.0, 50.0, 101.0];

/// `s = ln ln(1/ε)`.
pub fn level_of_cutoff(eps: f64) -> f64 {
    (-eps.ln()).ln()
}

/// `ln(e + y)` from `ln y`, safe for huge `y`.
fn ln_e_plus(ln_y: f64) -> f64 {
    if ln_y > 700.0 {
        ln_y + (E * (-ln_y).exp()).ln_1p()
    } else {
        (E + ln_y.exp()).ln()
    }
}

/// Integrals of `φ̃(u')` and `(u')^p` over `[ε, 1/2]` for each log-cutoff, with
/// `u'(x) = (x ln(1/x))^{-1/p}` and `φ̃(t) = t^p / ln(e + t)`.
///
/// The substitution `x = exp(−e^s)` turns `(u')^p dx` into `ds` and
/// `φ̃(u') dx` into `ds / ln(e + u')` with `ln u' = (e^s − s)/p`, which
/// reaches cutoffs far below the smallest positive double.
pub fn sobolev_counterexample(p: f64, levels: &[f64]) -> Result<SobolevReport> {
    if !(p > 1.0 && p.is_finite()) {
        return Err(Error::InvalidParameter {
            name: "p".into(),
            value: p,
            reason: "must exceed 1",
        });
    }
    let s_half = level_of_cutoff(0.5);
    if levels.is_empty() || levels.iter().any(|s| *s <= s_half) || levels.windows(2).any(|w| w[1] <= w[0]) {
        return Err(Error::InvalidArgument(format!(
            "levels must be increasing and above ln ln 2 = {s_half}"
        )));
    }
    let phi = make_phi("plog_quotient", &[("p", p)])?;
    let opts = QuadOptions::default();
    let modular_density = |s: f64| 1.0 / ln_e_plus((s.exp() - s) / p);
    let lp_density = |_: f64| 1.0;
    let mut rows = Vec::with_capacity(levels.len());
    let (mut modular, mut lp, mut from) = (0.0, 0.0, s_half);
    for &level in levels {
        let panels = ((level - from) / 5.0).ceil() as usize;
        let o = opts.with_min_panels(panels.max(1));
        modular += integrate(modular_density, from, level, &o).value;
        lp += integrate(lp_density, from, level, &o).value;
        from = level;
        rows.push(SobolevRow {
            level,
            log10_eps: -level.exp() / std::f64::consts::LN_10,
            modular,
            lp,
            lp_closed: level - s_half,
        });
    }
    Ok(SobolevReport { p, phi, rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::sobolev_derivative;
    use crate::orlicz::probe_conditions;

    #[test]
    fn inclusion_closed_forms_match() {
        for t in [0.1, 0.25, 0.4] {
            let r = inclusion_example(t, &DIVERGENCE_LEVELS).unwrap();
            assert!((r.t1_quadrature - r.t1_closed).abs() < 1e-6, "{r:?}");
            assert!((r.t2_quadrature - r.t2_closed).abs() < 1e-6, "{r:?}");
            assert!(r.diverges_past(1e3));
        }
        assert!(inclusion_example(0.0, &[]).is_err());
        assert!(inclusion_example(0.6, &[]).is_err());
    }

    #[test]
    fn t2_matches_simplified_antiderivative() {
        // √(z(1−t+z)) − z + (1−t) asinh(√(z/(1−t))) at z = t.
        for t in [0.05, 0.2, 0.5] {
            let simple = (t * 1.0f64).sqrt() - t + (1.0 - t) * (t / (1.0 - t)).sqrt().asinh();
            assert!((t2_closed(t) - simple).abs() < 1e-14);
        }
    }

    #[test]
    fn sobolev_integrals_in_x_variables() {
        // ∫_ε^{1/2} dx / (x ln(1/x)) = ln ln(1/ε) − ln ln 2 at ε = 1e-3.
        let eps = 1e-3;
        let opts = QuadOptions::default();
        let direct = integrate(|x: f64| sobolev_derivative(2.0, x).powi(2), eps, 0.5, &opts).value;
        let closed = (-eps.ln()).ln() - (2f64.ln()).ln();
        assert!((direct - closed).abs() < 1e-9);
        let r = sobolev_counterexample(2.0, &[level_of_cutoff(eps)]).unwrap();
        assert!((r.rows[0].lp - closed).abs() < 1e-9);
        let phi = make_phi("plog_quotient", &[("p", 2.0)]).unwrap();
        let m = integrate(|x: f64| phi.eval(sobolev_derivative(2.0, x)), eps, 0.5, &opts).value;
        assert!((r.rows[0].modular - m).abs() < 1e-9, "{} vs {m}", r.rows[0].modular);
    }

    #[test]
    fn sobolev_modular_settles_while_lp_grows() {
        let r = sobolev_counterexample(2.0, &SOBOLEV_LEVELS).unwrap();
        assert!(r.last_change() < 1e-6);
        assert!(r.last_lp() > 100.0);
        assert!(r.rows.windows(2).all(|w| w[1].lp > w[0].lp));
    }

    #[test]
    fn counterexample_phi_passes_convexity_probes() {
        let phi = make_phi("plog_quotient", &[("p", 2.0)]).unwrap();
        let c = probe_conditions(&phi);
        assert!(c.axioms && c.midpoint_convex);
    }
}
