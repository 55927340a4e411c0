//! Modular functional and Luxemburg norm.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::orlicz::phi::PhiFunction;
use crate::quadrature::{integrate_with_points, QuadOptions};

/// Value of a modular integral.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ModularValue {
    Finite {
        value: f64,
        converged: bool,
        refinements: u32,
    },
    Infinite {
        refinements: u32,
    },
}

impl ModularValue {
    pub fn finite(value: f64) -> Self {
        ModularValue::Finite {
            value,
            converged: true,
            refinements: 0,
        }
    }

    /// The value, with `Infinite` mapped to `f64::INFINITY`.
    pub fn value(&self) -> f64 {
        match *self {
            ModularValue::Finite { value, .. } => value,
            ModularValue::Infinite { .. } => f64::INFINITY,
        }
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ModularValue::Finite { .. })
    }

    pub fn converged(&self) -> bool {
        matches!(self, ModularValue::Finite { converged: true, .. })
    }

    pub fn refinements(&self) -> u32 {
        match *self {
            ModularValue::Finite { refinements, .. } | ModularValue::Infinite { refinements } => refinements,
        }
    }

    /// The larger of two modular values.
    pub fn max(self, other: ModularValue) -> ModularValue {
        match (self, other) {
            (ModularValue::Infinite { .. }, _) => self,
            (_, ModularValue::Infinite { .. }) => other,
            _ if other.value() > self.value() => other,
            _ => self,
        }
    }
}

impl fmt::Display for ModularValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModularValue::Finite { value, .. } => write!(f, "{value}"),
            ModularValue::Infinite { .. } => write!(f, "inf"),
        }
    }
}

/// Memoized `|f(x)|` so repeated quadratures over the same node tree are cheap.
struct AbsCache<'a> {
    f: &'a IntervalFunction,
    values: HashMap<u64, f64>,
}

impl<'a> AbsCache<'a> {
    fn new(f: &'a IntervalFunction) -> Self {
        Self {
            f,
            values: HashMap::new(),
        }
    }

    fn get(&mut self, x: f64) -> f64 {
        let f = self.f;
        *self.values.entry(x.to_bits()).or_insert_with(|| f.eval(x).abs())
    }
}

fn modular_cached(phi: &PhiFunction, cache: &mut AbsCache<'_>, scale: f64, opts: &QuadOptions) -> Result<ModularValue> {
    let f = cache.f;
    let (points, sing) = f.points_in(f.a(), f.b());
    let opts = opts.with_min_panels(opts.min_panels.max(f.resolution()));
    let mut nan_at = None;
    let mut g = |x: f64| {
        let v = phi.eval(scale * cache.get(x));
        if v.is_nan() && nan_at.is_none() {
            nan_at = Some(x);
        }
        v
    };
    let est = integrate_with_points(&mut g, &points, &sing, &opts);
    if let Some(x) = nan_at {
        return Err(Error::NotANumber { x });
    }
    if est.value.is_nan() {
        return Err(Error::NotANumber { x: f.a() });
    }
    if est.divergent || !est.value.is_finite() {
        return Ok(ModularValue::Infinite { refinements: est.depth });
    }
    Ok(ModularValue::Finite {
        value: est.value.max(0.0),
        converged: est.converged,
        refinements: est.depth,
    })
}

/// `I^φ[λ f] = ∫_a^b φ(λ |f(x)|) dx`.
pub fn modular(phi: &PhiFunction, f: &IntervalFunction, lambda: f64) -> Result<ModularValue> {
    modular_with(phi, f, lambda, &QuadOptions::default())
}

pub fn modular_with(phi: &PhiFunction, f: &IntervalFunction, lambda: f64, opts: &QuadOptions) -> Result<ModularValue> {
    if !(lambda > 0.0 && lambda.is_finite()) {
        return Err(Error::InvalidArgument(format!("lambda must be positive, got {lambda}")));
    }
    let mut cache = AbsCache::new(f);
    modular_cached(phi, &mut cache, lambda, opts)
}

const REL_WIDTH: f64 = 1e-10;
const MAX_DOUBLINGS: u32 = 200;

/// Luxemburg norm `inf { u > 0 : I^φ[f/u] <= 1 }`.
///
/// The returned value is the upper end of the final bisection bracket, so
/// `I^φ[f/u*] <= 1` always holds.
pub fn luxemburg_norm(phi: &PhiFunction, f: &IntervalFunction) -> Result<f64> {
    luxemburg_norm_with(phi, f, &QuadOptions::default())
}

pub fn luxemburg_norm_with(phi: &PhiFunction, f: &IntervalFunction, opts: &QuadOptions) -> Result<f64> {
    if !phi.convex {
        return Err(Error::InvalidArgument(format!("{phi} is not convex")));
    }
    let mut cache = AbsCache::new(f);
    let mut level = |u: f64| -> Result<f64> { Ok(modular_cached(phi, &mut cache, 1.0 / u, opts)?.value()) };
    let u0 = f.sup_estimate(1025).max(1e-12);
    let m0 = level(u0)?;
    let (mut lo, mut m_lo, mut hi, mut m_hi);
    if m0 <= 1.0 {
        (hi, m_hi) = (u0, m0);
        lo = 0.5 * u0;
        m_lo = level(lo)?;
        let mut steps = 0;
        while m_lo <= 1.0 {
            (hi, m_hi) = (lo, m_lo);
            lo *= 0.5;
            steps += 1;
            if lo < 1e-250 || steps > 4 * MAX_DOUBLINGS {
                return Ok(0.0);
            }
            m_lo = level(lo)?;
        }
    } else {
        (lo, m_lo) = (u0, m0);
        hi = 2.0 * u0;
        m_hi = level(hi)?;
        let mut steps = 0;
        while m_hi > 1.0 {
            (lo, m_lo) = (hi, m_hi);
            hi *= 2.0;
            steps += 1;
            if steps >= MAX_DOUBLINGS || !hi.is_finite() {
                return Err(Error::BracketExpansion { doublings: steps });
            }
            m_hi = level(hi)?;
        }
    }
    // Regula falsi on ln I[f/u] against ln u, falling back to bisection
    // whenever a step fails to halve the bracket.
    let mut bisect = false;
    while (hi - lo) > REL_WIDTH * hi {
        let width = hi - lo;
        let interpolated = m_lo.is_finite() && m_hi > 0.0 && !bisect;
        let x = if interpolated {
            let (a, b) = (m_lo.ln(), m_hi.ln());
            let t = lo.ln() + (hi.ln() - lo.ln()) * a / (a - b);
            t.exp().clamp(lo + 1e-3 * width, hi - 1e-3 * width)
        } else {
            0.5 * (lo + hi)
        };
        let m = level(x)?;
        if m <= 1.0 {
            (hi, m_hi) = (x, m);
            if interpolated {
                let y = x * (1.0 - 0.5 * REL_WIDTH);
                if y > lo {
                    let my = level(y)?;
                    if my <= 1.0 {
                        (hi, m_hi) = (y, my);
                    } else {
                        (lo, m_lo) = (y, my);
                    }
                }
            }
        } else {
            (lo, m_lo) = (x, m);
            if interpolated {
                let y = x * (1.0 + 0.5 * REL_WIDTH);
                if y < hi {
                    let my = level(y)?;
                    if my <= 1.0 {
                        (hi, m_hi) = (y, my);
                    } else {
                        (lo, m_lo) = (y, my);
                    }
                }
            }
        }
        bisect = hi - lo > 0.5 * width;
    }
    Ok(hi)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::phi::make_phi;

    fn fun(g: impl Fn(f64) -> f64 + Send + Sync + 'static) -> IntervalFunction {
        IntervalFunction::new(0.0, 1.0, g).unwrap()
    }

    #[test]
    fn modular_examples() {
        let id = make_phi("power", &[("p", 1.0)]).unwrap();
        let sq = make_phi("power", &[("p", 2.0)]).unwrap();
        let ex = make_phi("exp", &[("rho", 1.0)]).unwrap();
        assert!((modular(&id, &fun(|_| 1.0), 1.0).unwrap().value() - 1.0).abs() < 1e-14);
        assert!((modular(&sq, &fun(|x| x), 1.0).unwrap().value() - 1.0 / 3.0).abs() < 1e-14);
        let l2 = 2f64.ln();
        assert!((modular(&ex, &fun(move |_| l2), 2.0).unwrap().value() - 3.0).abs() < 1e-13);
    }

    #[test]
    fn modular_rejects_nonpositive_lambda() {
        let sq = make_phi("power", &[("p", 2.0)]).unwrap();
        assert!(modular(&sq, &fun(|x| x), 0.0).is_err());
        assert!(modular(&sq, &fun(|x| x), f64::NAN).is_err());
    }

    #[test]
    fn modular_detects_divergence() {
        let sq = make_phi("power", &[("p", 2.0)]).unwrap();
        let f = fun(|x| x.powf(-0.5)).with_singularities([0.0]);
        assert!(!modular(&sq, &f, 1.0).unwrap().is_finite());
        let id = make_phi("power", &[("p", 1.0)]).unwrap();
        let m = modular(&id, &f, 1.0).unwrap();
        assert!((m.value() - 2.0).abs() < 1e-8, "{m:?}");
    }

    #[test]
    fn luxemburg_examples() {
        let sq = make_phi("power", &[("p", 2.0)]).unwrap();
        let ex = make_phi("exp", &[("rho", 1.0)]).unwrap();
        assert_eq!(luxemburg_norm(&sq, &fun(|_| 0.0)).unwrap(), 0.0);
        let s = fun(|x| (2.0 * std::f64::consts::PI * x).sin());
        assert!((luxemburg_norm(&sq, &s).unwrap() - 0.5f64.sqrt()).abs() < 1e-8);
        let two = luxemburg_norm(&ex, &fun(|_| 2.0)).unwrap();
        assert!((two - 2.0 / 2f64.ln()).abs() < 1e-8 * two);
    }

    #[test]
    fn luxemburg_of_shifted_log_under_exp_is_one() {
        // I[f/u] = a / (1 - a) with a = 1 / (2u), so the norm is exactly 1.
        let ex = make_phi("exp", &[("rho", 1.0)]).unwrap();
        let f = fun(|x| if x > 0.0 { -0.5 * x.ln() } else { 0.0 }).with_singularities([0.0]);
        let u = luxemburg_norm(&ex, &f).unwrap();
        assert!((u - 1.0).abs() < 1e-7, "{u}");
        let m = modular(&ex, &f, 1.0 / 1.5).unwrap().value();
        let a = 1.0 / 3.0;
        assert!((m - a / (1.0 - a)).abs() < 1e-8, "{m}");
    }

    #[test]
    fn luxemburg_upper_endpoint_guarantee() {
        let z = make_phi("zygmund", &[("beta", 2.0), ("gamma", 1.0)]).unwrap();
        let f = fun(|x| 3.0 * x - 1.0).with_kinks([1.0 / 3.0]);
        let u = luxemburg_norm(&z, &f).unwrap();
        let m = modular(&z, &f, 1.0 / u).unwrap().value();
        assert!((1.0 - 1e-4..=1.0).contains(&m), "{m}");
    }

    #[test]
    fn luxemburg_requires_convexity() {
        let ex = make_phi("exp", &[("rho", 0.5)]).unwrap();
        assert!(luxemburg_norm(&ex, &fun(|x| x)).is_err());
    }

    #[test]
    fn luxemburg_bracket_cap_for_non_members() {
        let sq = make_phi("power", &[("p", 2.0)]).unwrap();
        let f = fun(|x| x.powf(-0.5)).with_singularities([0.0]);
        assert!(matches!(luxemburg_norm(&sq, &f), Err(Error::BracketExpansion { .. })));
    }
}
