//! Named test functions on `[0, 1]`.

use std::f64::consts::PI;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::orlicz::parse_params;
use crate::quadrature::{fixed_rule, gauss_legendre};

pub const CORPUS: [&str; 7] = ["const", "linear", "sin", "abs_pow", "step", "shifted_log", "sobolev_u"];

fn param(params: &[(String, f64)], allowed: &[&str], name: &str, default: f64) -> Result<f64> {
    for (k, _) in params {
        if !allowed.contains(&k.as_str()) {
            return Err(Error::UnknownName {
                kind: "corpus parameter",
                name: k.clone(),
            });
        }
    }
    Ok(params
        .iter()
        .rev()
        .find(|(k, _)| k == name)
        .map_or(default, |(_, v)| *v))
}

fn unit<F: Fn(f64) -> f64 + Send + Sync + 'static>(map: F) -> IntervalFunction {
    IntervalFunction::new(0.0, 1.0, map).expect("unit interval")
}

/// Builds a corpus function from `name` or `name:key=value`.
///
/// | name | map | parameters |
/// |---|---|---|
/// | `const` | `c` | `c = 1` |
/// | `linear` | `x` | |
/// | `sin` | `sin 2πx` | |
/// | `abs_pow` | `\|x − 1/2\|^ν` | `nu = 0.5` |
/// | `step` | `1` on `[0, 1/2]`, else `0` | |
/// | `shifted_log` | `ln(x^{-1/2})`, `0` at `0` | |
/// | `sobolev_u` | `∫_0^x (t ln(1/t))^{-1/p} 1_{(0,1/2)}(t) dt` | `p = 2` |
pub fn corpus(spec: &str) -> Result<IntervalFunction> {
    let (name, rest) = spec.split_once(':').unwrap_or((spec, ""));
    let name = name.trim();
    let params = parse_params(rest)?;
    let f = match name {
        "const" => {
            let c = param(&params, &["c"], "c", 1.0)?;
            unit(move |_| c).with_derivative(unit(|_| 0.0))
        }
        "linear" => {
            param(&params, &[], "", 0.0)?;
            unit(|x| x).with_derivative(unit(|_| 1.0))
        }
        "sin" => {
            param(&params, &[], "", 0.0)?;
            unit(|x| (2.0 * PI * x).sin()).with_derivative(unit(|x| 2.0 * PI * (2.0 * PI * x).cos()))
        }
        "abs_pow" => {
            let nu = param(&params, &["nu"], "nu", 0.5)?;
            if !(nu > 0.0 && nu.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "nu".into(),
                    value: nu,
                    reason: "must be positive",
                });
            }
            let d = unit(move |x| {
                let t = x - 0.5;
                if t == 0.0 {
                    0.0
                } else {
                    nu * t.signum() * t.abs().powf(nu - 1.0)
                }
            })
            .with_kinks([0.5]);
            let d = if nu < 1.0 { d.with_singularities([0.5]) } else { d };
            unit(move |x| (x - 0.5).abs().powf(nu))
                .with_kinks([0.5])
                .with_derivative(d)
        }
        "step" => {
            param(&params, &[], "", 0.0)?;
            unit(|x| if x <= 0.5 { 1.0 } else { 0.0 }).with_kinks([0.5])
        }
        "shifted_log" => {
            param(&params, &[], "", 0.0)?;
            unit(|x| if x > 0.0 { -0.5 * x.ln() } else { 0.0 }).with_singularities([0.0])
        }
        "sobolev_u" => {
            let p = param(&params, &["p"], "p", 2.0)?;
            if !(p > 1.0 && p.is_finite()) {
                return Err(Error::InvalidParameter {
                    name: "p".into(),
                    value: p,
                    reason: "must exceed 1",
                });
            }
            sobolev_u(p)
        }
        other => {
            return Err(Error::UnknownName {
                kind: "corpus function",
                name: other.to_string(),
            })
        }
    };
    Ok(f.with_label(spec.trim()))
}

/// `(x ln(1/x))^{-1/p}` on `(0, 1/2)`, zero elsewhere.
pub fn sobolev_derivative(p: f64, x: f64) -> f64 {
    if x > 0.0 && x < 0.5 {
        (x * (-x.ln())).powf(-1.0 / p)
    } else {
        0.0
    }
}

/// Cumulative integrals of the `sobolev_u` derivative on a geometric grid.
struct PrimitiveTable {
    p: f64,
    x0: f64,
    log_ratio: f64,
    nodes: Vec<f64>,
    values: Vec<f64>,
    gl: (Vec<f64>, Vec<f64>),
}

impl PrimitiveTable {
    const X0: f64 = 1e-300;
    const RATIO: f64 = 1.02;

    fn new(p: f64) -> Self {
        let gl = gauss_legendre(10);
        let log_ratio = Self::RATIO.ln();
        let mut nodes = vec![Self::X0];
        while *nodes.last().unwrap_or(&0.5) < 0.5 {
            let next = (nodes[nodes.len() - 1] * Self::RATIO).min(0.5);
            nodes.push(next);
        }
        let mut values = Vec::with_capacity(nodes.len());
        values.push(Self::head(p, Self::X0));
        for w in nodes.windows(2) {
            let mut f = |t: f64| sobolev_derivative(p, t);
            let last = values[values.len() - 1];
            values.push(last + fixed_rule(&mut f, w[0], w[1], &gl.0, &gl.1));
        }
        Self {
            p,
            x0: Self::X0,
            log_ratio,
            nodes,
            values,
            gl,
        }
    }

    /// Leading-order primitive near zero: `p/(p-1) x^{1-1/p} ln(1/x)^{-1/p}`.
    fn head(p: f64, x: f64) -> f64 {
        p / (p - 1.0) * x.powf(1.0 - 1.0 / p) * (-x.ln()).powf(-1.0 / p)
    }

    fn eval(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        if x < self.x0 {
            return Self::head(self.p, x);
        }
        if x >= 0.5 {
            return self.values[self.values.len() - 1];
        }
        let i = (((x / self.x0).ln() / self.log_ratio).floor() as usize).min(self.nodes.len() - 2);
        let i = if self.nodes[i] > x { i - 1 } else { i };
        let mut f = |t: f64| sobolev_derivative(self.p, t);
        self.values[i] + fixed_rule(&mut f, self.nodes[i], x, &self.gl.0, &self.gl.1)
    }
}

fn sobolev_u(p: f64) -> IntervalFunction {
    let table = Arc::new(PrimitiveTable::new(p));
    let derivative = unit(move |x| sobolev_derivative(p, x))
        .with_kinks([0.5])
        .with_singularities([0.0]);
    unit(move |x| table.eval(x))
        .with_kinks([0.5])
        .with_derivative(derivative)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_builds() {
        for name in CORPUS {
            let f = corpus(name).unwrap();
            assert!(f.eval(0.3).is_finite(), "{name}");
            assert_eq!(f.label(), name);
        }
        assert!(corpus("gauss").is_err());
        assert!(corpus("abs_pow:nu=-1").is_err());
        assert!(corpus("step:c=1").is_err());
        assert_eq!(corpus("const:c=2.5").unwrap().eval(0.9), 2.5);
    }

    #[test]
    fn derivatives_match_finite_differences() {
        for name in ["linear", "sin", "abs_pow:nu=0.5", "abs_pow:nu=1.5", "sobolev_u"] {
            let f = corpus(name).unwrap();
            let d = f.derivative().unwrap();
            for x in [0.1, 0.3, 0.7] {
                let h = 1e-6;
                let fd = (f.eval(x + h) - f.eval(x - h)) / (2.0 * h);
                assert!(
                    (fd - d.eval(x)).abs() < 1e-5 * d.eval(x).abs().max(1.0),
                    "{name} at {x}"
                );
            }
        }
        assert!(corpus("step").unwrap().derivative().is_none());
        assert!(corpus("shifted_log").unwrap().derivative().is_none());
    }

    #[test]
    fn sobolev_primitive_against_adaptive_quadrature() {
        let f = corpus("sobolev_u:p=3").unwrap();
        let d = f.derivative().unwrap().clone();
        for x in [1e-6, 0.01, 0.25, 0.5] {
            let direct = d.integrate(0.0, x).value;
            assert!((f.eval(x) - direct).abs() < 1e-9, "{x}");
        }
        assert_eq!(f.eval(0.8), f.eval(0.5));
    }

    #[test]
    fn sobolev_table_is_monotone() {
        let f = corpus("sobolev_u").unwrap();
        let mut last = 0.0;
        for i in 1..=1000 {
            let x = 0.5 * (i as f64 / 1000.0).powi(4);
            let v = f.eval(x);
            assert!(v >= last);
            last = v;
        }
    }
}
