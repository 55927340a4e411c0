//! The Kantorovich neural-network operator `K_n` and its derivative.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::function::IntervalFunction;
use crate::kernels::{DensityKernel, Support};

/// Kernel tail below which terms are dropped for exponentially decaying kernels.
const SUM_EPS: f64 = 1e-17;

/// `k`-range `⌈na⌉ ..= ⌊nb⌋ − 1`.
pub fn index_range(a: f64, b: f64, n: usize) -> Result<(i64, i64)> {
    let nf = n as f64;
    let (k0, k1) = ((nf * a).ceil() as i64, (nf * b).floor() as i64 - 1);
    if n == 0 || k0 > k1 {
        return Err(Error::EmptyRange { n, a, b });
    }
    Ok((k0, k1))
}

/// Cell averages `n ∫_{k/n}^{(k+1)/n} f`, one per index in the k-range.
pub fn cell_averages(f: &IntervalFunction, n: usize) -> Result<Vec<f64>> {
    let (k0, k1) = index_range(f.a(), f.b(), n)?;
    let nf = n as f64;
    let out: Vec<f64> = (k0..=k1)
        .into_par_iter()
        .map(|k| {
            let lo = k as f64 / nf;
            let hi = (k + 1) as f64 / nf;
            nf * f.integrate(lo, hi).value
        })
        .collect();
    if let Some(pos) = out.iter().position(|v| !v.is_finite()) {
        return Err(Error::NotANumber {
            x: (k0 + pos as i64) as f64 / nf,
        });
    }
    Ok(out)
}

/// `K_n f` with precomputed cell averages.
#[derive(Debug, Clone)]
pub struct KantorovichEval {
    kernel: DensityKernel,
    n: usize,
    a: f64,
    b: f64,
    k0: i64,
    averages: Vec<f64>,
    radius: f64,
}

struct Sums {
    num: f64,
    den: f64,
    dnum: f64,
    dden: f64,
}

impl KantorovichEval {
    pub fn new(kernel: &DensityKernel, f: &IntervalFunction, n: usize) -> Result<Self> {
        let averages = cell_averages(f, n)?;
        Self::from_averages(kernel, f.a(), f.b(), n, averages)
    }

    pub fn from_averages(kernel: &DensityKernel, a: f64, b: f64, n: usize, averages: Vec<f64>) -> Result<Self> {
        let (k0, k1) = index_range(a, b, n)?;
        if averages.len() as i64 != k1 - k0 + 1 {
            return Err(Error::InvalidArgument(format!(
                "expected {} cell averages, got {}",
                k1 - k0 + 1,
                averages.len()
            )));
        }
        let radius = match kernel.support {
            Support::Compact { radius } => radius,
            Support::Exponential { .. } => kernel.sum_radius(SUM_EPS),
            Support::Decay { .. } => f64::INFINITY,
        };
        Ok(Self {
            kernel: kernel.clone(),
            n,
            a,
            b,
            k0,
            averages,
            radius,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn kernel(&self) -> &DensityKernel {
        &self.kernel
    }

    pub fn averages(&self) -> &[f64] {
        &self.averages
    }

    /// First index of the k-range.
    pub fn first_index(&self) -> i64 {
        self.k0
    }

    fn sums(&self, x: f64, derivative: bool) -> Sums {
        let t = self.n as f64 * x;
        let k1 = self.k0 + self.averages.len() as i64 - 1;
        let lo = if self.radius.is_finite() {
            ((t - self.radius).floor() as i64).max(self.k0)
        } else {
            self.k0
        };
        let hi = if self.radius.is_finite() {
            ((t + self.radius).ceil() as i64).min(k1)
        } else {
            k1
        };
        let mut s = Sums {
            num: 0.0,
            den: 0.0,
            dnum: 0.0,
            dden: 0.0,
        };
        for k in lo..=hi {
            let d = t - k as f64;
            let c = self.averages[(k - self.k0) as usize];
            let p = self.kernel.eval(d);
            s.num += c * p;
            s.den += p;
            if derivative {
                let q = self.kernel.derivative(d);
                s.dnum += c * q;
                s.dden += q;
            }
        }
        s
    }

    fn check_floor(&self, x: f64, den: f64) -> Result<()> {
        let floor = self.kernel.phi_at_2;
        if den < floor * (1.0 - 1e-12) {
            return Err(Error::DenominatorFloor { x, value: den, floor });
        }
        Ok(())
    }

    /// `(K_n f)(x)`.
    pub fn apply(&self, x: f64) -> Result<f64> {
        let s = self.sums(x, false);
        self.check_floor(x, s.den)?;
        Ok(s.num / s.den)
    }

    /// `(K_n f)'(x) = n [Σ φ' c_k / D − N Σ φ' / D²]`.
    pub fn apply_derivative(&self, x: f64) -> Result<f64> {
        if !self.kernel.has_derivative() {
            return Err(Error::MissingDerivative(self.kernel.to_string()));
        }
        let s = self.sums(x, true);
        self.check_floor(x, s.den)?;
        Ok(self.n as f64 * (s.dnum * s.den - s.num * s.dden) / (s.den * s.den))
    }

    /// Interior points where `K_n f` may fail to be smooth.
    pub fn kinks(&self) -> Vec<f64> {
        let nf = self.n as f64;
        let k1 = self.k0 + self.averages.len() as i64;
        let mut out = Vec::new();
        for beta in self.kernel.breakpoints() {
            for k in self.k0..=k1 {
                let x = (k as f64 + beta) / nf;
                if x > self.a && x < self.b {
                    out.push(x);
                }
            }
        }
        out
    }

    /// `K_n f` as an interval function, with `K'_n f` attached.
    pub fn into_function(self) -> IntervalFunction {
        let shared = Arc::new(self);
        let kinks = shared.kinks();
        let resolution = 2 * shared.n;
        let (a, b) = (shared.a, shared.b);
        let (value, slope) = (shared.clone(), shared.clone());
        let derivative = IntervalFunction::new(a, b, move |x| {
            let s = slope.sums(x, true);
            slope.n as f64 * (s.dnum * s.den - s.num * s.dden) / (s.den * s.den)
        })
        .expect("domain already validated")
        .with_kinks(kinks.clone())
        .with_resolution(resolution)
        .with_label(format!("K'_{}", shared.n));
        IntervalFunction::new(a, b, move |x| {
            let s = value.sums(x, false);
            s.num / s.den
        })
        .expect("domain already validated")
        .with_kinks(kinks)
        .with_resolution(resolution)
        .with_label(format!("K_{}", shared.n))
        .with_derivative(derivative)
    }
}

/// `(K_n f)(x)` in one call.
pub fn apply(kernel: &DensityKernel, f: &IntervalFunction, n: usize, x: f64) -> Result<f64> {
    KantorovichEval::new(kernel, f, n)?.apply(x)
}

/// `(K_n f)'(x)` in one call.
pub fn apply_derivative(kernel: &DensityKernel, f: &IntervalFunction, n: usize, x: f64) -> Result<f64> {
    KantorovichEval::new(kernel, f, n)?.apply_derivative(x)
}
