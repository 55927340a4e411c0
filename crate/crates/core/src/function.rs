//! Real functions on a bounded interval with periodic extension.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::quadrature::{integrate_with_points, QuadEstimate, QuadOptions};

type Map = Arc<dyn Fn(f64) -> f64 + Send + Sync>;

/// Relative size below which `alpha f + beta g` is rounded to zero.
const CANCELLATION: f64 = 64.0 * f64::EPSILON;

/// A function on `[a, b]`, extended `(b - a)`-periodically to the real line.
///
/// Kinks and singular points are quadrature hints. The left endpoint `a` is
/// always treated as a breakpoint because the periodic extension may jump
/// there.
#[derive(Clone)]
pub struct IntervalFunction {
    a: f64,
    b: f64,
    map: Map,
    derivative: Option<Arc<IntervalFunction>>,
    kinks: Vec<f64>,
    singularities: Vec<f64>,
    resolution: usize,
    label: String,
}

impl fmt::Debug for IntervalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("IntervalFunction")
            .field("label", &self.label)
            .field("a", &self.a)
            .field("b", &self.b)
            .field("kinks", &self.kinks)
            .field("singularities", &self.singularities)
            .field("has_derivative", &self.derivative.is_some())
            .finish()
    }
}

impl IntervalFunction {
    /// Wraps `map`, which only needs to be meaningful on `[a, b)`.
    pub fn new<F>(a: f64, b: f64, map: F) -> Result<Self>
    where
        F: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        if !(a.is_finite() && b.is_finite() && a < b) {
            return Err(Error::InvalidArgument(format!("need a < b, got [{a}, {b}]")));
        }
        Ok(Self {
            a,
            b,
            map: Arc::new(map),
            derivative: None,
            kinks: Vec::new(),
            singularities: Vec::new(),
            resolution: 1,
            label: String::from("f"),
        })
    }

    /// The zero function on `[a, b]`.
    pub fn zero(a: f64, b: f64) -> Result<Self> {
        Ok(Self::new(a, b, |_| 0.0)?.with_label("zero"))
    }

    pub fn with_derivative(mut self, derivative: IntervalFunction) -> Self {
        self.derivative = Some(Arc::new(derivative));
        self
    }

    pub fn with_kinks(mut self, kinks: impl IntoIterator<Item = f64>) -> Self {
        let pts: Vec<f64> = kinks.into_iter().collect();
        self.kinks = self.normalize(pts);
        self
    }

    pub fn with_singularities(mut self, points: impl IntoIterator<Item = f64>) -> Self {
        let pts: Vec<f64> = points.into_iter().collect();
        self.singularities = self.normalize(pts);
        self
    }

    /// Minimum number of quadrature panels across one period.
    pub fn with_resolution(mut self, panels: usize) -> Self {
        self.resolution = panels.max(1);
        self
    }

    pub fn with_label(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn b(&self) -> f64 {
        self.b
    }

    pub fn period(&self) -> f64 {
        self.b - self.a
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn kinks(&self) -> &[f64] {
        &self.kinks
    }

    pub fn singularities(&self) -> &[f64] {
        &self.singularities
    }

    pub fn resolution(&self) -> usize {
        self.resolution
    }

    pub fn derivative(&self) -> Option<&IntervalFunction> {
        self.derivative.as_deref()
    }

    /// Maps `x` into `[a, b)`.
    pub fn reduce(&self, x: f64) -> f64 {
        if x >= self.a && x < self.b {
            return x;
        }
        let p = self.period();
        let r = self.a + (x - self.a).rem_euclid(p);
        if r >= self.b {
            self.a
        } else {
            r
        }
    }

    /// Evaluates the periodic extension.
    pub fn eval(&self, x: f64) -> f64 {
        (self.map)(self.reduce(x))
    }

    fn normalize(&self, pts: Vec<f64>) -> Vec<f64> {
        let mut out: Vec<f64> = pts
            .into_iter()
            .filter(|x| x.is_finite())
            .map(|x| self.reduce(x))
            .collect();
        out.sort_by(f64::total_cmp);
        out.dedup_by(|x, y| (*x - *y).abs() <= 1e-15 * self.period());
        out
    }

    /// Kinks including the periodic seam at `a`.
    fn breakpoints(&self) -> Vec<f64> {
        let mut pts = self.kinks.clone();
        pts.push(self.a);
        pts.extend_from_slice(&self.singularities);
        self.normalize(pts)
    }

    /// Periodic images of the breakpoints and singular points inside `[lo, hi]`.
    pub fn points_in(&self, lo: f64, hi: f64) -> (Vec<f64>, Vec<f64>) {
        let p = self.period();
        let images = |base: &[f64]| {
            let mut out = Vec::new();
            for &c in base {
                let m0 = ((lo - c) / p).floor() as i64;
                let m1 = ((hi - c) / p).ceil() as i64;
                for m in m0..=m1 {
                    let x = c + m as f64 * p;
                    if x > lo && x < hi {
                        out.push(x);
                    }
                }
            }
            out
        };
        let mut points = images(&self.breakpoints());
        let sing_inner = images(&self.singularities);
        points.push(lo);
        points.push(hi);
        points.sort_by(f64::total_cmp);
        points.dedup();
        let mut sing: Vec<f64> = sing_inner;
        for &c in &self.singularities {
            let r_lo = self.reduce(lo);
            let r_hi = self.reduce(hi);
            if (r_lo - c).abs() <= 1e-15 * p {
                sing.push(lo);
            }
            if (r_hi - c).abs() <= 1e-15 * p {
                sing.push(hi);
            }
        }
        (points, sing)
    }

    /// Integral of `g(f(x))` over `[lo, hi]` using the periodic extension.
    pub fn integrate_map<G: Fn(f64) -> f64>(&self, lo: f64, hi: f64, g: G, opts: &QuadOptions) -> QuadEstimate {
        let (points, sing) = self.points_in(lo, hi);
        let share = ((hi - lo) / self.period()).min(1.0);
        let panels = ((self.resolution as f64) * share).ceil() as usize;
        let opts = opts.with_min_panels(opts.min_panels.max(panels));
        let mut h = |x: f64| g(self.eval(x));
        integrate_with_points(&mut h, &points, &sing, &opts)
    }

    /// Integral of `f` over `[lo, hi]` (periodic extension outside `[a, b]`).
    pub fn integrate(&self, lo: f64, hi: f64) -> QuadEstimate {
        self.integrate_map(lo, hi, |v| v, &QuadOptions::default())
    }

    /// Samples `|f|` on a uniform grid plus the kinks; singular points and
    /// non-finite samples are skipped.
    pub fn sup_estimate(&self, samples: usize) -> f64 {
        let p = self.period();
        let mut m = 0.0f64;
        let mut probe = |x: f64| {
            let v = self.eval(x).abs();
            if v.is_finite() {
                m = m.max(v);
            }
        };
        for i in 0..samples {
            probe(self.a + p * (i as f64 + 0.5) / samples as f64);
        }
        for &k in &self.kinks {
            probe(k);
        }
        m
    }

    /// `x -> f(x + h)`.
    pub fn shifted(&self, h: f64) -> IntervalFunction {
        let inner = self.clone();
        let mut kinks: Vec<f64> = self.kinks.iter().map(|k| k - h).collect();
        kinks.push(self.a - h);
        let sing: Vec<f64> = self.singularities.iter().map(|s| s - h).collect();
        let mut out = IntervalFunction {
            a: self.a,
            b: self.b,
            map: Arc::new(move |x| inner.eval(x + h)),
            derivative: None,
            kinks: Vec::new(),
            singularities: Vec::new(),
            resolution: self.resolution,
            label: format!("{}(.+{h})", self.label),
        };
        out.kinks = out.normalize(kinks);
        out.singularities = out.normalize(sing);
        out.derivative = self.derivative.as_ref().map(|d| Arc::new(d.shifted(h)));
        out
    }

    /// `x -> c f(x)`.
    pub fn scaled(&self, c: f64) -> IntervalFunction {
        let inner = self.clone();
        IntervalFunction {
            a: self.a,
            b: self.b,
            map: Arc::new(move |x| c * inner.eval(x)),
            derivative: self.derivative.as_ref().map(|d| Arc::new(d.scaled(c))),
            kinks: self.kinks.clone(),
            singularities: self.singularities.clone(),
            resolution: self.resolution,
            label: format!("{c}*{}", self.label),
        }
    }

    /// `x -> g(f(x))`, keeping the quadrature hints of `f` but no derivative.
    pub fn map_values<G>(&self, g: G) -> IntervalFunction
    where
        G: Fn(f64) -> f64 + Send + Sync + 'static,
    {
        let inner = self.clone();
        IntervalFunction {
            a: self.a,
            b: self.b,
            map: Arc::new(move |x| g(inner.eval(x))),
            derivative: None,
            kinks: self.kinks.clone(),
            singularities: self.singularities.clone(),
            resolution: self.resolution,
            label: self.label.clone(),
        }
    }

    /// Linear combination `alpha f + beta g` on the domain of `f`.
    ///
    /// Sums that cancel to within a few units of roundoff of the operands are
    /// returned as exact zeros.
    pub fn combine(&self, alpha: f64, other: &IntervalFunction, beta: f64) -> Result<IntervalFunction> {
        if self.a != other.a || self.b != other.b {
            return Err(Error::InvalidArgument("functions live on different intervals".into()));
        }
        let (f, g) = (self.clone(), other.clone());
        let mut out = IntervalFunction {
            a: self.a,
            b: self.b,
            map: Arc::new(move |x| {
                let (u, v) = (alpha * f.eval(x), beta * g.eval(x));
                let s = u + v;
                if s.abs() <= CANCELLATION * (u.abs() + v.abs()) {
                    0.0
                } else {
                    s
                }
            }),
            derivative: None,
            kinks: Vec::new(),
            singularities: Vec::new(),
            resolution: self.resolution.max(other.resolution),
            label: format!("{alpha}*{}+{beta}*{}", self.label, other.label),
        };
        let mut kinks = self.kinks.clone();
        kinks.extend_from_slice(&other.kinks);
        kinks.push(other.a);
        let mut sing = self.singularities.clone();
        sing.extend_from_slice(&other.singularities);
        out.kinks = out.normalize(kinks);
        out.singularities = out.normalize(sing);
        if let (Some(df), Some(dg)) = (self.derivative(), other.derivative()) {
            out.derivative = Some(Arc::new(df.combine(alpha, dg, beta)?));
        }
        Ok(out)
    }

    /// `f - g`.
    pub fn minus(&self, other: &IntervalFunction) -> Result<IntervalFunction> {
        self.combine(1.0, other, -1.0)
    }

    /// `f + g`.
    pub fn plus(&self, other: &IntervalFunction) -> Result<IntervalFunction> {
        self.combine(1.0, other, 1.0)
    }

    /// Forward difference of order `k` with step `h`:
    /// `sum_j C(k, j) (-1)^(k-j) f(x + j h)`.
    pub fn finite_difference(&self, k: u32, h: f64) -> IntervalFunction {
        let coeffs = binomial_row(k);
        let inner = self.clone();
        let kc = coeffs.clone();
        let mut kinks = Vec::new();
        let mut sing = Vec::new();
        for j in 0..=k {
            let s = j as f64 * h;
            kinks.extend(self.kinks.iter().map(|c| c - s));
            kinks.push(self.a - s);
            sing.extend(self.singularities.iter().map(|c| c - s));
        }
        let mut out = IntervalFunction {
            a: self.a,
            b: self.b,
            map: Arc::new(move |x| {
                let mut acc = 0.0;
                for (j, c) in kc.iter().enumerate() {
                    acc += c * inner.eval(x + j as f64 * h);
                }
                acc
            }),
            derivative: None,
            kinks: Vec::new(),
            singularities: Vec::new(),
            resolution: self.resolution,
            label: format!("D^{k}_{h}{}", self.label),
        };
        out.kinks = out.normalize(kinks);
        out.singularities = out.normalize(sing);
        out
    }
}

/// Signed binomial coefficients `C(k, j) (-1)^(k-j)` for `j = 0..=k`.
pub fn binomial_row(k: u32) -> Vec<f64> {
    let mut row = vec![1.0f64];
    for i in 0..k {
        let mut next = vec![0.0; row.len() + 1];
        for (j, c) in row.iter().enumerate() {
            next[j] -= c;
            next[j + 1] += c;
        }
        row = next;
        let _ = i;
    }
    row
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sine() -> IntervalFunction {
        IntervalFunction::new(0.0, 1.0, |x| (2.0 * std::f64::consts::PI * x).sin()).unwrap()
    }

    #[test]
    fn rejects_empty_interval() {
        assert!(IntervalFunction::new(1.0, 1.0, |x| x).is_err());
        assert!(IntervalFunction::new(2.0, 1.0, |x| x).is_err());
    }

    #[test]
    fn periodic_extension() {
        let f = IntervalFunction::new(-1.0, 2.0, |x| x * x).unwrap();
        for x in [-1.0, -0.3, 0.0, 1.7] {
            assert!((f.eval(x) - f.eval(x + 3.0)).abs() < 1e-13);
            assert!((f.eval(x) - f.eval(x - 6.0)).abs() < 1e-13);
        }
        assert_eq!(f.eval(2.0), f.eval(-1.0));
    }

    #[test]
    fn binomial_rows() {
        assert_eq!(binomial_row(1), vec![-1.0, 1.0]);
        assert_eq!(binomial_row(2), vec![1.0, -2.0, 1.0]);
        assert_eq!(binomial_row(3), vec![-1.0, 3.0, -3.0, 1.0]);
    }

    #[test]
    fn difference_of_sine_matches_identity() {
        let f = sine();
        let h = 0.1;
        let d = f.finite_difference(1, h);
        for x in [0.05, 0.4, 0.93] {
            let pi = std::f64::consts::PI;
            let expect = 2.0 * (pi * h).sin() * (2.0 * pi * x + pi * h).cos();
            assert!((d.eval(x) - expect).abs() < 1e-14);
        }
    }

    #[test]
    fn shifted_tracks_kinks_and_derivative() {
        let f = IntervalFunction::new(0.0, 1.0, |x| (x - 0.5).abs())
            .unwrap()
            .with_kinks([0.5])
            .with_derivative(IntervalFunction::new(0.0, 1.0, |x| (x - 0.5).signum()).unwrap());
        let g = f.shifted(0.2);
        assert!(g.kinks().iter().any(|k| (k - 0.3).abs() < 1e-15));
        assert!(g.kinks().iter().any(|k| (k - 0.8).abs() < 1e-15));
        assert_eq!(g.derivative().unwrap().eval(0.4), 1.0);
    }

    #[test]
    fn periodic_integral_over_several_periods() {
        let f = IntervalFunction::new(0.0, 1.0, |x| x).unwrap();
        let e = f.integrate(-0.5, 1.5);
        assert!((e.value - 1.0).abs() < 1e-13);
    }

    #[test]
    fn combine_requires_same_domain() {
        let f = sine();
        let g = IntervalFunction::new(0.0, 2.0, |x| x).unwrap();
        assert!(f.minus(&g).is_err());
        let z = f.minus(&f).unwrap();
        assert_eq!(z.eval(0.3), 0.0);
    }
}
