//! Catalog of φ-functions.

use std::f64::consts::E;
use std::fmt;

use crate::error::{Error, Result};

/// Three-valued hint for properties that are only known for some parameters.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tri {
    Yes,
    No,
    Unknown,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum PhiKind {
    /// `u^p`
    Power { p: f64 },
    /// `u^beta log^gamma(u + e)`
    Zygmund { beta: f64, gamma: f64 },
    /// `exp(u^rho) - 1`
    Exp { rho: f64 },
    /// `exp(u) - u - 1`
    ExpTaylor,
    /// `cosh(u) - 1`
    Cosh,
    /// `u log(u + 1)`
    LLogL,
    /// `u^p / log(e + u)`
    PLogQuotient { p: f64 },
}

/// A φ-function with its catalog identity and condition metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct PhiFunction {
    kind: PhiKind,
    pub convex: bool,
    pub n_function_hint: Tri,
    pub delta2_constant: Option<f64>,
    pub delta_prime_constant: Option<f64>,
    pub beta_hint: Option<f64>,
}

/// Stable catalog names.
pub const PHI_CATALOG: [&str; 7] = [
    "power",
    "zygmund",
    "exp",
    "exp_taylor",
    "cosh",
    "llogl",
    "plog_quotient",
];

fn param(params: &[(&str, f64)], allowed: &[&str], name: &str, default: f64) -> Result<f64> {
    for (k, _) in params {
        if !allowed.contains(k) {
            return Err(Error::UnknownName {
                kind: "phi parameter",
                name: (*k).to_string(),
            });
        }
    }
    Ok(params
        .iter()
        .rev()
        .find(|(k, _)| *k == name)
        .map_or(default, |(_, v)| *v))
}

fn require(name: &str, value: f64, ok: bool, reason: &'static str) -> Result<()> {
    if ok && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name: name.to_string(),
            value,
            reason,
        })
    }
}

/// Builds a catalog φ-function from `name=value` parameters.
pub fn make_phi(name: &str, params: &[(&str, f64)]) -> Result<PhiFunction> {
    let kind = match name {
        "power" => {
            let p = param(params, &["p"], "p", 2.0)?;
            require("p", p, p >= 1.0, "must be at least 1")?;
            PhiKind::Power { p }
        }
        "zygmund" => {
            let beta = param(params, &["beta", "gamma"], "beta", 1.0)?;
            let gamma = param(params, &["beta", "gamma"], "gamma", 1.0)?;
            require("beta", beta, beta >= 1.0, "must be at least 1")?;
            require("gamma", gamma, gamma > 0.0, "must be positive")?;
            PhiKind::Zygmund { beta, gamma }
        }
        "exp" => {
            let rho = param(params, &["rho"], "rho", 1.0)?;
            require("rho", rho, rho > 0.0, "must be positive")?;
            PhiKind::Exp { rho }
        }
        "exp_taylor" => {
            param(params, &[], "", 0.0)?;
            PhiKind::ExpTaylor
        }
        "cosh" => {
            param(params, &[], "", 0.0)?;
            PhiKind::Cosh
        }
        "llogl" => {
            param(params, &[], "", 0.0)?;
            PhiKind::LLogL
        }
        "plog_quotient" => {
            let p = param(params, &["p"], "p", 2.0)?;
            require("p", p, p > 1.0, "must exceed 1")?;
            PhiKind::PLogQuotient { p }
        }
        other => {
            return Err(Error::UnknownName {
                kind: "phi-function",
                name: other.to_string(),
            })
        }
    };
    Ok(PhiFunction::from_kind(kind))
}

impl PhiFunction {
    pub fn from_kind(kind: PhiKind) -> Self {
        use PhiKind::*;
        let (convex, n_fn, d2, dp, beta) = match kind {
            Power { p } => (
                true,
                if p > 1.0 { Tri::Yes } else { Tri::No },
                Some(2f64.powf(p)),
                Some(1.0),
                (p > 1.0).then_some(p),
            ),
            Zygmund { beta, .. } => (
                true,
                if beta > 1.0 { Tri::Yes } else { Tri::No },
                None,
                None,
                (beta > 1.0).then_some(beta),
            ),
            Exp { rho } => (
                rho >= 1.0,
                if rho > 1.0 { Tri::Yes } else { Tri::No },
                None,
                None,
                (rho > 1.0).then_some(rho),
            ),
            ExpTaylor | Cosh => (true, Tri::Yes, None, None, Some(2.0)),
            LLogL => (true, Tri::Yes, None, None, None),
            PLogQuotient { .. } => (true, Tri::Yes, None, None, None),
        };
        Self {
            kind,
            convex,
            n_function_hint: n_fn,
            delta2_constant: d2,
            delta_prime_constant: dp,
            beta_hint: beta,
        }
    }

    /// Parses `name` or `name:key=value,key=value`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let params = parse_params(rest)?;
        let borrowed: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        make_phi(name.trim(), &borrowed)
    }

    pub fn kind(&self) -> PhiKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            PhiKind::Power { .. } => "power",
            PhiKind::Zygmund { .. } => "zygmund",
            PhiKind::Exp { .. } => "exp",
            PhiKind::ExpTaylor => "exp_taylor",
            PhiKind::Cosh => "cosh",
            PhiKind::LLogL => "llogl",
            PhiKind::PLogQuotient { .. } => "plog_quotient",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self.kind {
            PhiKind::Power { p } | PhiKind::PLogQuotient { p } => vec![("p", p)],
            PhiKind::Zygmund { beta, gamma } => vec![("beta", beta), ("gamma", gamma)],
            PhiKind::Exp { rho } => vec![("rho", rho)],
            _ => Vec::new(),
        }
    }

    /// Evaluates φ at `u >= 0`.
    pub fn eval(&self, u: f64) -> f64 {
        if u <= 0.0 {
            return 0.0;
        }
        match self.kind {
            PhiKind::Power { p } => {
                if p == 2.0 {
                    u * u
                } else if p == 1.0 {
                    u
                } else {
                    u.powf(p)
                }
            }
            PhiKind::Zygmund { beta, gamma } => u.powf(beta) * (u + E).ln().powf(gamma),
            PhiKind::Exp { rho } => {
                let t = if rho == 1.0 { u } else { u.powf(rho) };
                t.exp_m1()
            }
            PhiKind::ExpTaylor => {
                if u < 1e-3 {
                    // Series avoids cancellation near zero.
                    u * u * (0.5 + u * (1.0 / 6.0 + u * (1.0 / 24.0 + u / 120.0)))
                } else {
                    u.exp_m1() - u
                }
            }
            PhiKind::Cosh => {
                let s = (0.5 * u).sinh();
                2.0 * s * s
            }
            PhiKind::LLogL => u * u.ln_1p(),
            PhiKind::PLogQuotient { p } => u.powf(p) / (E + u).ln(),
        }
    }
}

impl fmt::Display for PhiFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        let params = self.params();
        for (i, (k, v)) in params.iter().enumerate() {
            let sep = if i == 0 { ':' } else { ',' };
            write!(f, "{sep}{k}={v}")?;
        }
        Ok(())
    }
}

/// Parses `key=value,key=value` into pairs.
pub fn parse_params(text: &str) -> Result<Vec<(String, f64)>> {
    let mut out = Vec::new();
    for item in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let (k, v) = item
            .split_once('=')
            .ok_or_else(|| Error::InvalidArgument(format!("expected key=value, got `{item}`")))?;
        let value: f64 = v
            .trim()
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("malformed number `{}`", v.trim())))?;
        out.push((k.trim().to_string(), value));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_examples() {
        let p2 = make_phi("power", &[("p", 2.0)]).unwrap();
        assert_eq!(p2.eval(3.0), 9.0);
        let z = make_phi("zygmund", &[("beta", 1.0), ("gamma", 1.0)]).unwrap();
        assert_eq!(z.eval(0.0), 0.0);
        let ex = make_phi("exp", &[("rho", 1.0)]).unwrap();
        assert!((ex.eval(2f64.ln()) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn formulas_match_direct_evaluation() {
        let u = 1.7f64;
        let cases = [
            ("exp_taylor", u.exp() - u - 1.0),
            ("cosh", u.cosh() - 1.0),
            ("llogl", u * (u + 1.0).ln()),
        ];
        for (name, expect) in cases {
            let phi = make_phi(name, &[]).unwrap();
            assert!((phi.eval(u) - expect).abs() < 1e-13, "{name}");
        }
        let z = make_phi("zygmund", &[("beta", 2.0), ("gamma", 1.5)]).unwrap();
        assert!((z.eval(u) - u * u * (u + E).ln().powf(1.5)).abs() < 1e-13);
        let q = make_phi("plog_quotient", &[("p", 2.0)]).unwrap();
        assert!((q.eval(u) - u * u / (E + u).ln()).abs() < 1e-13);
        let e = make_phi("exp", &[("rho", 2.0)]).unwrap();
        assert!((e.eval(u) - ((u * u).exp() - 1.0)).abs() < 1e-12);
    }

    #[test]
    fn exp_taylor_series_branch_is_continuous() {
        let phi = make_phi("exp_taylor", &[]).unwrap();
        let below = phi.eval(1e-3 - 1e-12);
        let above = phi.eval(1e-3);
        assert!((below - above).abs() < 1e-14);
        assert!(phi.eval(1e-8) > 0.0);
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(make_phi("power", &[("p", 0.5)]).is_err());
        assert!(make_phi("zygmund", &[("beta", 2.0), ("gamma", 0.0)]).is_err());
        assert!(make_phi("exp", &[("rho", -1.0)]).is_err());
        assert!(make_phi("power", &[("q", 2.0)]).is_err());
        assert!(make_phi("cosh", &[("p", 2.0)]).is_err());
        assert!(matches!(make_phi("gauss", &[]), Err(Error::UnknownName { .. })));
    }

    #[test]
    fn parse_round_trips_display() {
        let phi = PhiFunction::parse("zygmund:beta=2,gamma=1").unwrap();
        assert_eq!(phi.to_string(), "zygmund:beta=2,gamma=1");
        assert_eq!(PhiFunction::parse(&phi.to_string()).unwrap(), phi);
        assert!(PhiFunction::parse("power:p").is_err());
        assert!(PhiFunction::parse("power:p=x").is_err());
    }

    #[test]
    fn convexity_flags() {
        assert!(!make_phi("exp", &[("rho", 0.5)]).unwrap().convex);
        assert!(make_phi("exp", &[("rho", 1.0)]).unwrap().convex);
        assert_eq!(make_phi("power", &[("p", 1.0)]).unwrap().n_function_hint, Tri::No);
    }
}
