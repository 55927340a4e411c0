//! Steklov averages of order 1 and 2.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::quadrature::gauss_legendre;

const TENSOR_ORDER: usize = 32;

/// Steklov function `f_{k,h}` for `k ∈ {1, 2}`.
///
/// For `k = 1` this is `(1/h) ∫_0^h f(x + t) dt` with the derivative
/// `(f(x + h) − f(x)) / h` attached. For `k = 2` it is
/// `h^{-2} ∫∫_{[0,h]²} [2 f(x + (t₁+t₂)/2) − f(x + t₁ + t₂)] dt₁ dt₂`,
/// evaluated with a fixed tensor Gauss–Legendre rule.
pub fn steklov(f: &IntervalFunction, k: u32, h: f64) -> Result<IntervalFunction> {
    let len = f.b() - f.a();
    if !(h > 0.0 && h <= len / k.max(1) as f64) {
        return Err(Error::InvalidParameter {
            name: "h".into(),
            value: h,
            reason: "must lie in (0, (b - a) / k]",
        });
    }
    match k {
        1 => Ok(first_order(f, h)),
        2 => Ok(second_order(f, h)),
        _ => Err(Error::InvalidParameter {
            name: "k".into(),
            value: k as f64,
            reason: "only orders 1 and 2 are supported",
        }),
    }
}

fn shifted_points(f: &IntervalFunction, shifts: &[f64]) -> (Vec<f64>, Vec<f64>) {
    let mut kinks = Vec::new();
    for &s in shifts {
        kinks.extend(f.kinks().iter().map(|c| c - s));
        kinks.extend(f.singularities().iter().map(|c| c - s));
        kinks.push(f.a() - s);
    }
    (kinks, Vec::new())
}

fn first_order(f: &IntervalFunction, h: f64) -> IntervalFunction {
    let inner = Arc::new(f.clone());
    let (kinks, _) = shifted_points(f, &[0.0, h]);
    let derivative = f
        .finite_difference(1, h)
        .scaled(1.0 / h)
        .with_label(format!("d/dx {}_(1,{h})", f.label()));
    let g = inner.clone();
    IntervalFunction::new(f.a(), f.b(), move |x| g.integrate(x, x + h).value / h)
        .expect("domain already validated")
        .with_kinks(kinks)
        .with_resolution(f.resolution())
        .with_label(format!("{}_(1,{h})", f.label()))
        .with_derivative(derivative)
}

fn second_order(f: &IntervalFunction, h: f64) -> IntervalFunction {
    let (nodes, weights) = gauss_legendre(TENSOR_ORDER);
    let t: Vec<f64> = nodes.iter().map(|z| 0.5 * h * (z + 1.0)).collect();
    let w: Vec<f64> = weights.iter().map(|w| 0.5 * w).collect();
    let inner = f.clone();
    let (kinks, _) = shifted_points(f, &[0.0, h, 2.0 * h]);
    IntervalFunction::new(f.a(), f.b(), move |x| {
        let mut acc = 0.0;
        for (i, ti) in t.iter().enumerate() {
            for (j, tj) in t.iter().enumerate() {
                let s = ti + tj;
                acc += w[i] * w[j] * (2.0 * inner.eval(x + 0.5 * s) - inner.eval(x + s));
            }
        }
        acc
    })
    .expect("domain already validated")
    .with_kinks(kinks)
    .with_resolution(f.resolution())
    .with_label(format!("{}_(2,{h})", f.label()))
}
