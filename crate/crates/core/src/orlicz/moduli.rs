//! Strong and weak moduli of smoothness.
//!
//! Both suprema over `|h| <= delta` are approximated from below on a
//! log-spaced grid of step sizes of both signs. The grid starts with 33
//! magnitudes in `[delta / 1024, delta]` and is doubled until the supremum
//! changes by less than 1%.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::orlicz::modular::{luxemburg_norm, modular, ModularValue};
use crate::orlicz::phi::PhiFunction;

const BASE_POINTS: usize = 33;
const SPAN: f64 = 1024.0;
const MAX_REFINEMENTS: usize = 3;
const REL_CHANGE: f64 = 0.01;

/// Step magnitudes of refinement level `level`; each level contains the
/// previous one.
pub fn step_grid(delta: f64, level: usize) -> Vec<f64> {
    let m = (BASE_POINTS - 1) * (1 << level) + 1;
    (0..m)
        .map(|i| {
            let t = i as f64 / (m - 1) as f64;
            if i + 1 == m {
                delta
            } else {
                delta * SPAN.powf(t - 1.0)
            }
        })
        .collect()
}

fn check_delta(f: &IntervalFunction, delta: f64) -> Result<()> {
    if !(delta > 0.0 && delta <= f.period() * (1.0 + 1e-12)) {
        return Err(Error::InvalidArgument(format!(
            "delta must lie in (0, {}], got {delta}",
            f.period()
        )));
    }
    Ok(())
}

/// Supremum of `eval(h)` over the refining grid, with values combined by `max`.
fn grid_sup<T, F>(delta: f64, eval: F, zero: T, max: fn(T, T) -> T, size: fn(&T) -> f64) -> Result<T>
where
    T: Copy + Send,
    F: Fn(f64) -> Result<T> + Sync,
{
    let mut best = zero;
    let mut seen: Vec<u64> = Vec::new();
    let mut previous = f64::NAN;
    for level in 0..=MAX_REFINEMENTS {
        let mags = step_grid(delta, level);
        let fresh: Vec<f64> = mags
            .iter()
            .copied()
            .filter(|h| !seen.contains(&h.to_bits()))
            .flat_map(|h| [h, -h])
            .collect();
        seen.extend(mags.iter().map(|h| h.to_bits()));
        let values: Vec<Result<T>> = fresh.par_iter().map(|&h| eval(h)).collect();
        for v in values {
            best = max(best, v?);
        }
        let current = size(&best);
        if level > 0 {
            let change = (current - previous).abs();
            if !current.is_finite() || change <= REL_CHANGE * current.abs() {
                break;
            }
        }
        previous = current;
    }
    Ok(best)
}

/// `ω_k(f, δ)_φ = sup_{|h| <= δ} ‖Δ^k_h f‖_φ`.
pub fn strong_modulus(phi: &PhiFunction, f: &IntervalFunction, delta: f64, k: u32) -> Result<f64> {
    check_delta(f, delta)?;
    if k == 0 {
        return Err(Error::InvalidArgument("order k must be positive".into()));
    }
    grid_sup(
        delta,
        |h| luxemburg_norm(phi, &f.finite_difference(k, h)),
        0.0,
        f64::max,
        |v| *v,
    )
}

/// `ω̃(λ f, δ)_φ = sup_{|h| <= δ} I^φ[λ (f(· + h) - f)]`.
pub fn weak_modulus(phi: &PhiFunction, f: &IntervalFunction, delta: f64, lambda: f64) -> Result<ModularValue> {
    check_delta(f, delta)?;
    grid_sup(
        delta,
        |h| modular(phi, &f.finite_difference(1, h), lambda),
        ModularValue::finite(0.0),
        ModularValue::max,
        |v| v.value(),
    )
}
