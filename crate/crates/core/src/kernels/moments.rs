//! Discrete absolute moments of density kernels.

use crate::error::{Error, Result};
use crate::kernels::density::DensityKernel;
use crate::orlicz::phi::PhiFunction;

const GRID: usize = 1024;
const TAIL_EPS: f64 = 1e-12;
const MAX_RADIUS: f64 = 16_384.0;
const GOLDEN_STEPS: usize = 80;

/// A moment value with its truncation record.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MomentEstimate {
    pub value: f64,
    /// Maximizing `u ∈ [0, 1)`.
    pub argmax: f64,
    /// Truncation radius of the k-sum.
    pub radius: f64,
    /// Whether the analytic tail bound is below `1e-12` at `radius`.
    pub tail_bound_met: bool,
}

/// `Σ_k φ_σ(u − k) w(|u − k|)` over `|u − k| < radius`.
fn weighted_sum(kernel: &DensityKernel, u: f64, radius: f64, weight: &dyn Fn(f64) -> f64) -> f64 {
    let (k0, k1) = ((u - radius).ceil() as i64, (u + radius).floor() as i64);
    let mut s = 0.0;
    for k in k0..=k1 {
        let d = u - k as f64;
        let p = kernel.eval(d);
        if p != 0.0 {
            s += p * weight(d.abs());
        }
    }
    s
}

/// Supremum over `u ∈ [0, 1)` of the weighted shift sum: a 1024-point grid
/// followed by golden-section refinement around the best cell.
fn sup_over_period(kernel: &DensityKernel, radius: f64, weight: &dyn Fn(f64) -> f64) -> (f64, f64) {
    let f = |u: f64| weighted_sum(kernel, u, radius, weight);
    let mut best = (f64::NEG_INFINITY, 0.0);
    for i in 0..GRID {
        let u = i as f64 / GRID as f64;
        let v = f(u);
        if v > best.0 || v.is_nan() {
            best = (v, u);
        }
    }
    if !best.0.is_finite() {
        return best;
    }
    let h = 1.0 / GRID as f64;
    let (mut lo, mut hi) = (best.1 - h, best.1 + h);
    let g = 0.5 * (5f64.sqrt() - 1.0);
    let mut x1 = hi - g * (hi - lo);
    let mut x2 = lo + g * (hi - lo);
    let (mut f1, mut f2) = (f(x1), f(x2));
    for _ in 0..GOLDEN_STEPS {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - g * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + g * (hi - lo);
            f2 = f(x2);
        }
        if f1.max(f2) > best.0 {
            best = if f1 >= f2 { (f1, x1) } else { (f2, x2) };
        }
    }
    (best.0, best.1.rem_euclid(1.0))
}

fn radius_for(kernel: &DensityKernel, nu: f64) -> Result<(f64, bool)> {
    match kernel.moment_radius(nu, TAIL_EPS) {
        None => Err(Error::PotentiallyInfinite(format!(
            "moment of order {nu} for {kernel}: order reaches the decay exponent"
        ))),
        Some(r) if r > MAX_RADIUS => Ok((MAX_RADIUS, false)),
        Some(r) => Ok((r, true)),
    }
}

/// `M_ν(φ_σ) = sup_u Σ_k φ_σ(u − k) |u − k|^ν`.
pub fn moment(kernel: &DensityKernel, nu: f64) -> Result<MomentEstimate> {
    if !(nu >= 0.0 && nu.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "moment order must be nonnegative, got {nu}"
        )));
    }
    let (radius, met) = radius_for(kernel, nu)?;
    let weight = move |d: f64| if nu == 0.0 { 1.0 } else { d.powf(nu) };
    let (value, argmax) = sup_over_period(kernel, radius, &weight);
    Ok(MomentEstimate {
        value,
        argmax,
        radius,
        tail_bound_met: met,
    })
}

/// `M^φ_{ν,μ}(φ_σ) = sup_u Σ_k φ_σ(u − k) |u − k|^ν φ(|u − k|^μ)`.
///
/// The truncation radius starts from the classical bound for order `ν` and
/// doubles until the sum at the maximizer changes by less than `1e-9`
/// relative; a sum that never settles is reported as potentially infinite.
pub fn hybrid_moment(kernel: &DensityKernel, phi: &PhiFunction, nu: f64, mu: f64) -> Result<MomentEstimate> {
    if !(nu >= 0.0 && mu >= 0.0 && nu.is_finite() && mu.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "orders must be nonnegative, got ({nu}, {mu})"
        )));
    }
    let (mut radius, _) = radius_for(kernel, nu)?;
    let weight = move |d: f64| {
        let p = if nu == 0.0 { 1.0 } else { d.powf(nu) };
        let v = if mu == 1.0 { d } else { d.powf(mu) };
        p * phi.eval(v)
    };
    let unstable = || {
        Error::PotentiallyInfinite(format!(
            "phi-moment ({nu}, {mu}) of {kernel} under {phi} is not truncation-stable"
        ))
    };
    if kernel.compact_radius().is_some() {
        let (value, argmax) = sup_over_period(kernel, radius, &weight);
        return Ok(MomentEstimate {
            value,
            argmax,
            radius,
            tail_bound_met: true,
        });
    }
    let (first, u_star) = sup_over_period(kernel, radius, &weight);
    if !first.is_finite() {
        return Err(unstable());
    }
    let mut current = weighted_sum(kernel, u_star, radius, &weight);
    loop {
        let next_radius = 2.0 * radius;
        if next_radius > MAX_RADIUS {
            return Err(unstable());
        }
        let next = weighted_sum(kernel, u_star, next_radius, &weight);
        if !next.is_finite() {
            return Err(unstable());
        }
        radius = next_radius;
        let settled = (next - current).abs() <= 1e-9 * next.abs().max(1.0);
        current = next;
        if settled {
            break;
        }
    }
    let (value, argmax) = sup_over_period(kernel, radius, &weight);
    Ok(MomentEstimate {
        value,
        argmax,
        radius,
        tail_bound_met: true,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::sigmoidal::KERNEL_CATALOG;
    use crate::orlicz::phi::make_phi;

    fn brute(kernel: &DensityKernel, weight: impl Fn(f64) -> f64, kmax: i64, points: usize) -> f64 {
        let mut best = 0.0f64;
        for i in 0..points {
            let u = i as f64 / points as f64;
            let s: f64 = (-kmax..=kmax)
                .map(|k| kernel.eval(u - k as f64) * weight((u - k as f64).abs()))
                .sum();
            best = best.max(s);
        }
        best
    }

    #[test]
    fn zeroth_moment_is_one() {
        for name in KERNEL_CATALOG {
            let k = DensityKernel::by_name(name).unwrap();
            let m = moment(&k, 0.0).unwrap();
            assert!((m.value - 1.0).abs() < 1e-8, "{name}: {}", m.value);
        }
    }

    #[test]
    fn ramp_first_moment_matches_brute_force() {
        let k = DensityKernel::by_name("ramp").unwrap();
        let m = moment(&k, 1.0).unwrap();
        let b = brute(&k, |d| d, 4, 100_000);
        assert!((m.value - b).abs() < 1e-8, "{} vs {b}", m.value);
    }

    #[test]
    fn hybrid_with_identity_reduces_to_classical() {
        let id = make_phi("power", &[("p", 1.0)]).unwrap();
        for name in KERNEL_CATALOG {
            let k = DensityKernel::by_name(name).unwrap();
            let h = hybrid_moment(&k, &id, 0.0, 1.0).unwrap().value;
            let m = moment(&k, 1.0).unwrap().value;
            assert!((h - m).abs() < 1e-10, "{name}: {h} vs {m}");
        }
    }

    #[test]
    fn ramp_hybrid_square_matches_brute_force() {
        let k = DensityKernel::by_name("ramp").unwrap();
        let sq = make_phi("power", &[("p", 2.0)]).unwrap();
        let h = hybrid_moment(&k, &sq, 0.0, 1.0).unwrap().value;
        let b = brute(&k, |d| d * d, 4, 100_000);
        assert!((h - b).abs() < 1e-8, "{h} vs {b}");
    }

    #[test]
    fn logistic_first_moment_is_truncation_stable() {
        let k = DensityKernel::by_name("logistic").unwrap();
        let m = moment(&k, 1.0).unwrap();
        let doubled = weighted_sum(&k, m.argmax, 2.0 * m.radius, &|d| d);
        let single = weighted_sum(&k, m.argmax, m.radius, &|d| d);
        assert!((doubled - single).abs() < 1e-8);
        assert!(m.value.is_finite() && m.tail_bound_met);
    }

    #[test]
    fn exp_phi_moment_of_logistic() {
        let k = DensityKernel::by_name("logistic").unwrap();
        let slow = make_phi("exp", &[("rho", 0.25)]).unwrap();
        let m = hybrid_moment(&k, &slow, 0.0, 2.0).unwrap();
        assert!(m.value.is_finite() && m.value > 0.0);
        let fast = make_phi("exp", &[("rho", 1.0)]).unwrap();
        assert!(matches!(
            hybrid_moment(&k, &fast, 0.0, 2.0),
            Err(Error::PotentiallyInfinite(_))
        ));
    }

    #[test]
    fn decay_kernel_order_limit() {
        let k = DensityKernel::parse("sigma_theta:theta=3").unwrap();
        assert!(moment(&k, 2.0).unwrap().value.is_finite());
        assert!(matches!(moment(&k, 3.0), Err(Error::PotentiallyInfinite(_))));
    }

    #[test]
    fn summand_is_one_periodic() {
        for name in KERNEL_CATALOG {
            let k = DensityKernel::by_name(name).unwrap();
            let r = k.moment_radius(1.0, 1e-12).unwrap();
            for u in [0.1, 0.37, 0.8] {
                let a = weighted_sum(&k, u, r, &|d| d);
                let b = weighted_sum(&k, u + 1.0, r, &|d| d);
                assert!((a - b).abs() < 1e-12, "{name}");
            }
        }
    }
}
