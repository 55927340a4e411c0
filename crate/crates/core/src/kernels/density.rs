//! Density kernels `φ_σ(x) = ½[σ(x+1) − σ(x−1)]`.

use std::f64::consts::E;
use std::fmt;

use crate::error::{Error, Result};
use crate::kernels::sigmoidal::{SigmoidKind, Sigmoidal};

/// Support or decay descriptor of a density kernel.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Support {
    /// `φ_σ` vanishes outside `(-radius, radius)`.
    Compact { radius: f64 },
    /// `φ_σ(x) <= tail_constant · e^{-rate |x|}` for all `x`.
    Exponential { rate: f64, tail_constant: f64 },
    /// `φ_σ(x) <= tail_constant · |x|^{-alpha-1}` for `|x| >= 10`.
    Decay { alpha: f64, tail_constant: f64 },
}

/// A density kernel generated by a sigmoidal function.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityKernel {
    source: Sigmoidal,
    pub support: Support,
    pub phi_at_2: f64,
}

/// Builds `φ_σ`, rejecting activations with `σ(1) >= 1`.
pub fn build_density(sigma: Sigmoidal) -> Result<DensityKernel> {
    if !sigma.sigma_at_one_lt_one {
        return Err(Error::InvalidArgument(format!(
            "{sigma}: sigma(1) >= 1, so phi(2) would vanish"
        )));
    }
    let support = match (sigma.kind(), sigma.transition_radius()) {
        (_, Some(r)) => Support::Compact { radius: r + 1.0 },
        (SigmoidKind::Logistic, None) => Support::Exponential {
            rate: 1.0,
            tail_constant: 1f64.sinh(),
        },
        (SigmoidKind::Tanh, None) => Support::Exponential {
            rate: 2.0,
            tail_constant: 2f64.sinh(),
        },
        _ => Support::Decay {
            alpha: sigma.alpha,
            tail_constant: 0.0,
        },
    };
    let mut kernel = DensityKernel {
        source: sigma,
        support,
        phi_at_2: 0.0,
    };
    if let Support::Decay { alpha, .. } = kernel.support {
        let c = [10.0, 20.0, 40.0]
            .iter()
            .map(|&x| kernel.eval(x) * f64::powf(x, alpha + 1.0))
            .fold(0.0, f64::max);
        kernel.support = Support::Decay {
            alpha,
            tail_constant: c,
        };
    }
    kernel.phi_at_2 = kernel.eval(2.0);
    Ok(kernel)
}

impl DensityKernel {
    /// Catalog constructor, e.g. `logistic` or `sigma_theta:theta=5`.
    pub fn parse(spec: &str) -> Result<Self> {
        build_density(Sigmoidal::parse(spec)?)
    }

    pub fn by_name(name: &str) -> Result<Self> {
        build_density(Sigmoidal::from_name(name, &[])?)
    }

    pub fn source(&self) -> &Sigmoidal {
        &self.source
    }

    pub fn name(&self) -> &'static str {
        self.source.name()
    }

    pub fn has_derivative(&self) -> bool {
        true
    }

    /// `Υ` for compactly supported kernels.
    pub fn compact_radius(&self) -> Option<f64> {
        match self.support {
            Support::Compact { radius } => Some(radius),
            _ => None,
        }
    }

    /// Evaluates `φ_σ(x)`.
    pub fn eval(&self, x: f64) -> f64 {
        let y = x.abs();
        match self.source.kind() {
            SigmoidKind::Logistic => {
                if y > 700.0 {
                    return 0.0;
                }
                0.5 * (E * E - 1.0) / ((1.0 + (1.0 + y).exp()) * (1.0 + (1.0 - y).exp()))
            }
            SigmoidKind::Tanh => {
                if y > 350.0 {
                    return 0.0;
                }
                0.25 * 2f64.sinh() / ((y + 1.0).cosh() * (y - 1.0).cosh())
            }
            // σ(1 - y) - σ(-1 - y) only touches small values of σ in the tail.
            _ => 0.5 * (self.source.eval(1.0 - y) - self.source.eval(-1.0 - y)),
        }
    }

    /// Evaluates `φ'_σ(x)`.
    pub fn derivative(&self, x: f64) -> f64 {
        let y = x.abs();
        let sign = if x < 0.0 { -1.0 } else { 1.0 };
        let d = match self.source.kind() {
            SigmoidKind::Logistic => {
                if y > 300.0 {
                    return 0.0;
                }
                let num = E * (E * E - 1.0) / 2.0 * (y.exp() - (-y).exp());
                let a = 1.0 + (1.0 + y).exp();
                let b = 1.0 + (1.0 - y).exp();
                -num / (a * a * b * b)
            }
            SigmoidKind::Tanh => {
                if y > 170.0 {
                    return 0.0;
                }
                let (c1, c2) = ((y + 1.0).cosh(), (y - 1.0).cosh());
                -0.25 * 2f64.sinh() * (2.0 * y).sinh() / (c1 * c1 * c2 * c2)
            }
            _ => 0.5 * (self.source.derivative(y + 1.0) - self.source.derivative(y - 1.0)),
        };
        sign * d
    }

    /// Non-smooth points of `φ_σ`.
    pub fn breakpoints(&self) -> Vec<f64> {
        let mut pts: Vec<f64> = self.source.corners().iter().flat_map(|c| [c - 1.0, c + 1.0]).collect();
        pts.sort_by(f64::total_cmp);
        pts.dedup();
        pts
    }

    /// Radius beyond which the kernel sum tail is below `eps`.
    pub fn sum_radius(&self, eps: f64) -> f64 {
        self.moment_radius(0.0, eps).unwrap_or(f64::INFINITY)
    }

    /// Radius `R` with `Σ_{|x-k| > R} φ_σ(x-k) |x-k|^ν < eps` by the analytic
    /// tail bound; `None` when the bound diverges (`ν >= α`).
    pub fn moment_radius(&self, nu: f64, eps: f64) -> Option<f64> {
        match self.support {
            Support::Compact { radius } => Some(radius),
            Support::Exponential { rate, tail_constant } => {
                let tail = |r: f64| {
                    let mut s = 0.0;
                    let mut j = 0.0;
                    loop {
                        let t = (-rate * (r + j)).exp() * (r + j + 1.0).powf(nu);
                        s += t;
                        if t < 1e-6 * s || j > 1e5 {
                            break;
                        }
                        j += 1.0;
                    }
                    2.0 * tail_constant * s
                };
                let mut r = 1.0;
                while tail(r) >= eps {
                    r += 1.0;
                }
                Some(r)
            }
            Support::Decay { alpha, tail_constant } => {
                if nu >= alpha {
                    return None;
                }
                let gap = alpha - nu;
                let r = 1.0 + (2.0 * tail_constant / (eps * gap)).powf(1.0 / gap);
                Some(r.max(11.0))
            }
        }
    }

    /// `Σ_k φ_σ(x − k)` over all `k` within the truncation window.
    pub fn shift_sum(&self, x: f64) -> f64 {
        let r = self.sum_radius(1e-17).min(1e7);
        let (k0, k1) = ((x - r).ceil() as i64, (x + r).floor() as i64);
        let mut s = 0.0;
        for k in k0..=k1 {
            s += self.eval(x - k as f64);
        }
        s
    }
}

impl fmt::Display for DensityKernel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.source)
    }
}

/// `max |Σ_k φ_σ(x − k) − 1|` over `grid`.
pub fn partition_defect(kernel: &DensityKernel, grid: &[f64]) -> f64 {
    grid.iter()
        .map(|&x| (kernel.shift_sum(x) - 1.0).abs())
        .fold(0.0, f64::max)
}

/// Minimum over `grid` of `Σ_{k=⌈na⌉}^{⌊nb⌋−1} φ_σ(nx − k)`, with `φ_σ(2)`.
pub fn denominator_floor(kernel: &DensityKernel, a: f64, b: f64, n: usize, grid: &[f64]) -> Result<(f64, f64)> {
    let nf = n as f64;
    let (k0, k1) = ((nf * a).ceil() as i64, (nf * b).floor() as i64 - 1);
    if n == 0 || k0 > k1 {
        return Err(Error::EmptyRange { n, a, b });
    }
    let mut min = f64::INFINITY;
    for &x in grid {
        let s: f64 = (k0..=k1).map(|k| kernel.eval(nf * x - k as f64)).sum();
        min = min.min(s);
    }
    Ok((min, kernel.phi_at_2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernels::sigmoidal::KERNEL_CATALOG;

    fn catalog() -> Vec<DensityKernel> {
        KERNEL_CATALOG
            .iter()
            .map(|n| DensityKernel::by_name(n).unwrap())
            .collect()
    }

    #[test]
    fn ramp_values() {
        let k = DensityKernel::by_name("ramp").unwrap();
        assert_eq!(k.support, Support::Compact { radius: 2.5 });
        assert!((k.eval(0.0) - 1.0 / 3.0).abs() < 1e-15);
        assert!((k.phi_at_2 - 1.0 / 12.0).abs() < 1e-15);
        assert_eq!(k.eval(2.5), 0.0);
        assert_eq!(k.eval(-3.0), 0.0);
        assert_eq!(k.breakpoints(), vec![-2.5, -0.5, 0.5, 2.5]);
    }

    #[test]
    fn logistic_closed_form_matches_definition() {
        let k = DensityKernel::by_name("logistic").unwrap();
        let s = |x: f64| 1.0 / (1.0 + (-x).exp());
        for x in [0.0, 1.0, -1.0, 3.0, -3.0] {
            let def = 0.5 * (s(x + 1.0) - s(x - 1.0));
            assert!((k.eval(x) - def).abs() < 1e-12, "{x}");
        }
    }

    #[test]
    fn tanh_closed_form_matches_definition() {
        let k = DensityKernel::by_name("tanh").unwrap();
        for x in [0.0, 0.4, -2.2, 5.0] {
            let def = 0.25 * ((x + 1.0f64).tanh() - (x - 1.0f64).tanh());
            assert!((k.eval(x) - def).abs() < 1e-14, "{x}");
        }
    }

    #[test]
    fn exponential_tail_bounds_hold() {
        for name in ["logistic", "tanh"] {
            let k = DensityKernel::by_name(name).unwrap();
            let Support::Exponential { rate, tail_constant } = k.support else {
                panic!()
            };
            for i in 0..400 {
                let x = 0.1 * i as f64;
                assert!(
                    k.eval(x) <= tail_constant * (-rate * x).exp() * (1.0 + 1e-12),
                    "{name} {x}"
                );
            }
        }
    }

    #[test]
    fn decay_tail_bound_holds_beyond_ten() {
        let k = DensityKernel::parse("sigma_theta:theta=3").unwrap();
        let Support::Decay { alpha, tail_constant } = k.support else {
            panic!()
        };
        assert_eq!(alpha, 3.0);
        let theory = 3.0 * 2f64.powi(-3) / 4.0;
        assert!(tail_constant >= theory && tail_constant < 1.1 * theory);
        for x in [10.0, 15.0, 50.0, 1e3, 1e5] {
            assert!(k.eval(x) <= tail_constant * f64::powf(x, -4.0) * (1.0 + 1e-9), "{x}");
        }
        assert!(k.eval(1e3) > 0.0);
    }

    #[test]
    fn shape_invariants() {
        for k in catalog() {
            let grid: Vec<f64> = (0..4001).map(|i| -20.0 + 0.01 * i as f64).collect();
            for w in grid.windows(2) {
                let (x, y) = (w[0], w[1]);
                let (fx, fy) = (k.eval(x), k.eval(y));
                assert!(fx >= 0.0);
                assert_eq!(fx, k.eval(-x), "{k} not even at {x}");
                if y <= 0.0 {
                    assert!(fy >= fx - 1e-16, "{k} not increasing at {x}");
                } else if x >= 0.0 {
                    assert!(fy <= fx + 1e-16, "{k} not decreasing at {x}");
                }
            }
            assert!(k.phi_at_2 > 0.0 && k.phi_at_2 == k.eval(2.0));
        }
    }

    #[test]
    fn derivative_matches_finite_differences() {
        for k in catalog() {
            for x in [-4.2, -1.3, 0.3, 0.9, 2.2, 7.1] {
                let h = 1e-6;
                let fd = (k.eval(x + h) - k.eval(x - h)) / (2.0 * h);
                assert!(
                    (fd - k.derivative(x)).abs() < 1e-7,
                    "{k} {x}: {fd} vs {}",
                    k.derivative(x)
                );
            }
        }
    }

    #[test]
    fn partition_defects() {
        let grid: Vec<f64> = (0..1000).map(|i| i as f64 / 999.0).collect();
        let ramp = DensityKernel::by_name("ramp").unwrap();
        assert!(partition_defect(&ramp, &grid) < 1e-12);
        let logistic = DensityKernel::by_name("logistic").unwrap();
        assert!(partition_defect(&logistic, &grid) < 1e-8);
        for k in catalog() {
            let brute: f64 = (-2000..=2000).map(|j| k.eval(-(j as f64))).sum();
            assert!((partition_defect(&k, &[0.0]) - (brute - 1.0).abs()).abs() < 1e-9, "{k}");
        }
    }

    #[test]
    fn denominator_floor_examples() {
        let grid: Vec<f64> = (0..500).map(|i| i as f64 / 499.0).collect();
        let ramp = DensityKernel::by_name("ramp").unwrap();
        let (min, p2) = denominator_floor(&ramp, 0.0, 1.0, 10, &grid).unwrap();
        assert!((p2 - 1.0 / 12.0).abs() < 1e-15);
        assert!(min >= p2 - 1e-12);
        let logistic = DensityKernel::by_name("logistic").unwrap();
        let (min, p2) = denominator_floor(&logistic, 0.0, 1.0, 5, &grid).unwrap();
        assert!(p2 > 0.0 && min >= p2 - 1e-12);
        assert!(denominator_floor(&ramp, 0.0, 0.05, 10, &grid).is_err());
    }

    #[test]
    fn rejects_spline_of_order_two() {
        assert!(DensityKernel::parse("bspline:s=2").is_err());
        assert!(DensityKernel::parse("bspline:s=3").is_ok());
    }
}
