//! Sigmoidal activation functions.

use std::fmt;

use crate::error::{Error, Result};
use crate::orlicz::phi::parse_params;

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SigmoidKind {
    /// `1 / (1 + e^{-x})`
    Logistic,
    /// `(tanh x + 1) / 2`
    Tanh,
    /// `clamp(x/3 + 1/2, 0, 1)`
    Ramp,
    /// Algebraic tails `2^{-θ}/4 |x|^{-θ}` joined by a linear middle piece.
    SigmaTheta { theta: f64 },
    /// Integral of the central B-spline of order `s`.
    BSpline { order: u32 },
}

/// Stable catalog names.
pub const KERNEL_CATALOG: [&str; 5] = ["logistic", "tanh", "ramp", "sigma_theta", "bspline"];

/// A sigmoidal function with its decay metadata.
#[derive(Debug, Clone, PartialEq)]
pub struct Sigmoidal {
    kind: SigmoidKind,
    /// Decay exponent of `σ(x)` as `x → -∞`; infinite for exponential or
    /// compact decay.
    pub alpha: f64,
    pub sigma_at_one_lt_one: bool,
    /// Set for activations that are not twice continuously differentiable.
    pub relaxed_smoothness: bool,
}

fn factorial(n: u32) -> f64 {
    (1..=n).map(f64::from).product()
}

fn binomial(n: u32, k: u32) -> f64 {
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(1/(m)!) Σ_j (-1)^j C(s, j) (s/2 + x - j)_+^m`, valid for `x <= 0`.
fn spline_sum(s: u32, m: u32, x: f64) -> f64 {
    let half = f64::from(s) / 2.0;
    let mut acc = 0.0;
    for j in 0..=s {
        let t = half + x - f64::from(j);
        if t <= 0.0 {
            break;
        }
        let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
        acc += sign * binomial(s, j) * t.powi(m as i32);
    }
    acc / factorial(m)
}

impl Sigmoidal {
    pub fn new(kind: SigmoidKind) -> Result<Self> {
        let (alpha, relaxed) = match kind {
            SigmoidKind::Logistic | SigmoidKind::Tanh => (f64::INFINITY, false),
            SigmoidKind::Ramp => (f64::INFINITY, true),
            SigmoidKind::SigmaTheta { theta } => {
                if !(theta > 0.0 && theta.is_finite()) {
                    return Err(Error::InvalidParameter {
                        name: "theta".into(),
                        value: theta,
                        reason: "must be positive",
                    });
                }
                (theta, true)
            }
            SigmoidKind::BSpline { order } => (f64::INFINITY, order < 4),
        };
        let mut s = Self {
            kind,
            alpha,
            sigma_at_one_lt_one: true,
            relaxed_smoothness: relaxed,
        };
        s.sigma_at_one_lt_one = s.eval(1.0) < 1.0;
        Ok(s)
    }

    /// Catalog constructor from a name and `name=value` parameters.
    pub fn from_name(name: &str, params: &[(&str, f64)]) -> Result<Self> {
        let get = |allowed: &[&str], key: &str, default: f64| -> Result<f64> {
            for (k, _) in params {
                if !allowed.contains(k) {
                    return Err(Error::UnknownName {
                        kind: "kernel parameter",
                        name: (*k).to_string(),
                    });
                }
            }
            Ok(params
                .iter()
                .rev()
                .find(|(k, _)| *k == key)
                .map_or(default, |(_, v)| *v))
        };
        let kind = match name {
            "logistic" => {
                get(&[], "", 0.0)?;
                SigmoidKind::Logistic
            }
            "tanh" => {
                get(&[], "", 0.0)?;
                SigmoidKind::Tanh
            }
            "ramp" => {
                get(&[], "", 0.0)?;
                SigmoidKind::Ramp
            }
            "sigma_theta" => SigmoidKind::SigmaTheta {
                theta: get(&["theta"], "theta", 5.0)?,
            },
            "bspline" => {
                let s = get(&["s"], "s", 4.0)?;
                if s.fract() != 0.0 || !(1.0..=20.0).contains(&s) {
                    return Err(Error::InvalidParameter {
                        name: "s".into(),
                        value: s,
                        reason: "must be an integer in 1..=20",
                    });
                }
                SigmoidKind::BSpline { order: s as u32 }
            }
            other => {
                return Err(Error::UnknownName {
                    kind: "kernel",
                    name: other.to_string(),
                })
            }
        };
        Self::new(kind)
    }

    /// Parses `name` or `name:key=value`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
        let params = parse_params(rest)?;
        let borrowed: Vec<(&str, f64)> = params.iter().map(|(k, v)| (k.as_str(), *v)).collect();
        Self::from_name(name.trim(), &borrowed)
    }

    pub fn kind(&self) -> SigmoidKind {
        self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            SigmoidKind::Logistic => "logistic",
            SigmoidKind::Tanh => "tanh",
            SigmoidKind::Ramp => "ramp",
            SigmoidKind::SigmaTheta { .. } => "sigma_theta",
            SigmoidKind::BSpline { .. } => "bspline",
        }
    }

    pub fn params(&self) -> Vec<(&'static str, f64)> {
        match self.kind {
            SigmoidKind::SigmaTheta { theta } => vec![("theta", theta)],
            SigmoidKind::BSpline { order } => vec![("s", f64::from(order))],
            _ => Vec::new(),
        }
    }

    /// Evaluates `σ(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        if x > 0.0 {
            return 1.0 - self.eval(-x);
        }
        match self.kind {
            SigmoidKind::Logistic => 1.0 / (1.0 + (-x).exp()),
            SigmoidKind::Tanh => 0.5 * (x.tanh() + 1.0),
            SigmoidKind::Ramp => (x / 3.0 + 0.5).max(0.0),
            SigmoidKind::SigmaTheta { theta } => {
                if x <= -0.5 {
                    2f64.powf(-theta) / 4.0 * (-x).powf(-theta)
                } else {
                    0.5 * x + 0.5
                }
            }
            SigmoidKind::BSpline { order } => spline_sum(order, order, x),
        }
    }

    /// Evaluates `σ'(x)`; every catalog entry has an a.e. derivative.
    pub fn derivative(&self, x: f64) -> f64 {
        let y = x.abs();
        match self.kind {
            SigmoidKind::Logistic => {
                let e = (-y).exp();
                e / ((1.0 + e) * (1.0 + e))
            }
            SigmoidKind::Tanh => {
                let c = y.cosh();
                0.5 / (c * c)
            }
            SigmoidKind::Ramp => {
                if y < 1.5 {
                    1.0 / 3.0
                } else {
                    0.0
                }
            }
            SigmoidKind::SigmaTheta { theta } => {
                if y <= 0.5 {
                    0.5
                } else {
                    theta * 2f64.powf(-theta) / 4.0 * y.powf(-theta - 1.0)
                }
            }
            SigmoidKind::BSpline { order } => spline_sum(order, order - 1, -y),
        }
    }

    /// Interior non-smooth points of `σ`.
    pub fn corners(&self) -> Vec<f64> {
        match self.kind {
            SigmoidKind::Logistic | SigmoidKind::Tanh => Vec::new(),
            SigmoidKind::Ramp => vec![-1.5, 1.5],
            SigmoidKind::SigmaTheta { .. } => vec![-0.5, 0.5],
            SigmoidKind::BSpline { order } => (0..=order).map(|j| f64::from(order) / 2.0 - f64::from(j)).collect(),
        }
    }

    /// Half-width of the set where `σ` is not locally constant, if bounded.
    pub fn transition_radius(&self) -> Option<f64> {
        match self.kind {
            SigmoidKind::Ramp => Some(1.5),
            SigmoidKind::BSpline { order } => Some(f64::from(order) / 2.0),
            _ => None,
        }
    }
}

impl fmt::Display for Sigmoidal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.name())?;
        for (i, (k, v)) in self.params().iter().enumerate() {
            write!(f, "{}{k}={v}", if i == 0 { ':' } else { ',' })?;
        }
        Ok(())
    }
}
