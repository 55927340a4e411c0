//! Adaptive composite Gauss–Legendre quadrature.
//!
//! Panels are integrated with a fixed local rule and halved until the
//! difference between the coarse and the refined estimate meets the local
//! tolerance. Endpoints declared singular are handled by dyadic shells that
//! approach the singular point, with geometric tail extrapolation and a
//! divergence test on the shell contributions.

use std::sync::OnceLock;

/// Local Gauss–Legendre order used on every panel.
pub const LOCAL_ORDER: usize = 10;

const MAX_SHELLS: u32 = 1100;
/// Consecutive non-decaying dyadic shells that signal a divergent integral.
const DIVERGENCE_RUN: usize = 48;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_depth: u32,
    /// Minimum number of uniform panels across the whole range.
    pub min_panels: usize,
    /// Partial sums beyond this magnitude count as divergent.
    pub divergence_cap: f64,
    /// Integrand evaluations after which panels are accepted unrefined.
    pub max_evaluations: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        Self {
            abs_tol: 1e-10,
            rel_tol: 1e-12,
            max_depth: 40,
            min_panels: 1,
            divergence_cap: 1e12,
            max_evaluations: 2_000_000,
        }
    }
}

impl QuadOptions {
    pub fn with_min_panels(mut self, panels: usize) -> Self {
        self.min_panels = panels.max(1);
        self
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadEstimate {
    pub value: f64,
    /// Sum of the local error indicators.
    pub error: f64,
    pub converged: bool,
    pub divergent: bool,
    pub evaluations: usize,
    /// Deepest panel refinement level reached.
    pub depth: u32,
}

impl QuadEstimate {
    pub fn is_finite(&self) -> bool {
        !self.divergent && self.value.is_finite()
    }
}

/// Nodes and weights of the `order`-point Gauss–Legendre rule on [-1, 1].
pub fn gauss_legendre(order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(order >= 1, "rule order must be positive");
    let mut nodes = vec![0.0; order];
    let mut weights = vec![0.0; order];
    let n = order as f64;
    for i in 0..order.div_ceil(2) {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre(order, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        let (_, d) = legendre(order, x);
        if d != 0.0 {
            dp = d;
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[order - 1 - i] = x;
        weights[i] = w;
        weights[order - 1 - i] = w;
    }
    (nodes, weights)
}

fn legendre(order: usize, x: f64) -> (f64, f64) {
    let (mut p0, mut p1) = (1.0, x);
    for k in 2..=order {
        let k = k as f64;
        let p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
        p0 = p1;
        p1 = p2;
    }
    let p = if order == 0 { 1.0 } else { p1 };
    let d = order as f64 * (x * p - p0) / (x * x - 1.0);
    (p, d)
}

fn local_rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: OnceLock<(Vec<f64>, Vec<f64>)> = OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(LOCAL_ORDER))
}

/// Fixed-order Gauss–Legendre estimate of the integral over [a, b].
pub fn fixed_rule(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, nodes: &[f64], weights: &[f64]) -> f64 {
    let c = 0.5 * (a + b);
    let r = 0.5 * (b - a);
    let mut s = 0.0;
    for (x, w) in nodes.iter().zip(weights) {
        s += w * f(c + r * x);
    }
    s * r
}

#[derive(Default)]
struct Acc {
    value: f64,
    error: f64,
    unresolved: f64,
    evaluations: usize,
    depth: u32,
    divergent: bool,
    shells_unconverged: bool,
}

fn panel(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, acc: &mut Acc) -> f64 {
    let (nodes, weights) = local_rule();
    acc.evaluations += nodes.len();
    fixed_rule(f, a, b, nodes, weights)
}

struct Node {
    a: f64,
    b: f64,
    left: f64,
    right: f64,
    error: f64,
    depth: u32,
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.error.total_cmp(&other.error).is_eq()
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.total_cmp(&other.error)
    }
}

fn node(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, whole: f64, depth: u32, acc: &mut Acc) -> Node {
    let m = 0.5 * (a + b);
    let left = panel(f, a, m, acc);
    let right = panel(f, m, b, acc);
    let error = (left + right - whole).abs();
    Node {
        a,
        b,
        left,
        right,
        error: if error.is_nan() { f64::INFINITY } else { error },
        depth: depth + 1,
    }
}

/// Bisections past this depth that fail to shrink the error estimate are
/// attributed to roundoff in the integrand.
const ROUNDOFF_DEPTH: u32 = 8;
const ROUNDOFF_STALLS: usize = 64;

/// Globally adaptive integration over `[a, b]`: the panel with the largest
/// error estimate is bisected until the summed estimate meets `tol`.
fn adaptive(f: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, panels: usize, tol: f64, opts: &QuadOptions, acc: &mut Acc) {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let mut heap = std::collections::BinaryHeap::with_capacity(2 * panels);
    let (mut value, mut error) = (0.0, 0.0);
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels { b } else { a + width * (i + 1) as f64 };
        let whole = panel(f, lo, hi, acc);
        let n = node(f, lo, hi, whole, 0, acc);
        value += n.left + n.right;
        error += n.error;
        heap.push(n);
    }
    let mut settled: Vec<Node> = Vec::new();
    let mut stalls = 0;
    while value.is_finite()
        && error > tol.max(opts.rel_tol * value.abs())
        && acc.evaluations < opts.max_evaluations
        && stalls < ROUNDOFF_STALLS
    {
        let Some(n) = heap.pop() else { break };
        let m = 0.5 * (n.a + n.b);
        if n.depth >= opts.max_depth || m <= n.a || m >= n.b {
            settled.push(n);
            continue;
        }
        let l = node(f, n.a, m, n.left, n.depth, acc);
        let r = node(f, m, n.b, n.right, n.depth, acc);
        value += l.left + l.right + r.left + r.right - n.left - n.right;
        error += l.error + r.error - n.error;
        acc.depth = acc.depth.max(l.depth);
        if n.depth >= ROUNDOFF_DEPTH && l.error + r.error >= 0.9 * n.error {
            stalls += 1;
        }
        heap.push(l);
        heap.push(r);
    }
    // Re-sum to shed drift from the running updates.
    let (mut total, mut err) = (0.0, 0.0);
    for n in heap.iter().chain(&settled) {
        total += n.left + n.right;
        err += n.error;
    }
    acc.value += total;
    acc.error += err;
    if err > tol.max(opts.rel_tol * total.abs()) {
        acc.unresolved += err;
    }
}

/// Integrates toward the singular point `c` from `other`, one dyadic shell at
/// a time.
/// Shells narrower than this fraction of `|c|` see rounding noise in `x − c`.
const SHELL_RESOLUTION: f64 = 1e-10;

fn shells(f: &mut dyn FnMut(f64) -> f64, c: f64, other: f64, tol: f64, opts: &QuadOptions, acc: &mut Acc) {
    let w = other - c;
    let mut total = 0.0;
    let mut prev: Option<f64> = None;
    let mut ratios: Vec<f64> = Vec::new();
    let mut last = 0.0;
    let mut zero_run = 0;
    let mut scale = 1.0;
    let floor = SHELL_RESOLUTION * c.abs();
    for j in 0..MAX_SHELLS {
        let outer = c + w * scale;
        scale *= 0.5;
        let inner = c + w * scale;
        if inner == c || inner == outer || (inner - c).abs() < floor {
            break;
        }
        let (lo, hi) = if inner < outer { (inner, outer) } else { (outer, inner) };
        let mut sub = Acc::default();
        // Rounding in `x − c` limits the attainable relative accuracy of a shell.
        let noise = 64.0 * f64::EPSILON * c.abs() / (hi - lo) * prev.map_or(0.0, f64::abs);
        let tol_j = (tol * scale).max(noise).max(f64::MIN_POSITIVE);
        let sub_opts = QuadOptions {
            max_evaluations: opts.max_evaluations.saturating_sub(acc.evaluations),
            ..*opts
        };
        adaptive(f, lo, hi, 1, tol_j, &sub_opts, &mut sub);
        acc.evaluations += sub.evaluations;
        acc.depth = acc.depth.max(sub.depth);
        acc.error += sub.error;
        acc.unresolved += sub.unresolved;
        let s = sub.value;
        total += s;
        last = s;
        if !total.is_finite() || total.abs() > opts.divergence_cap {
            acc.value += total;
            acc.divergent = true;
            return;
        }
        if let Some(p) = prev {
            if p != 0.0 {
                ratios.push(s.abs() / p.abs());
            }
        }
        prev = Some(s);
        if s == 0.0 {
            zero_run += 1;
            if zero_run >= 3 && j >= 4 {
                acc.value += total;
                return;
            }
            continue;
        }
        zero_run = 0;
        let k = ratios.len();
        if k >= DIVERGENCE_RUN && ratios[k - DIVERGENCE_RUN..].iter().all(|r| *r >= 0.995) {
            acc.value += total;
            acc.divergent = true;
            return;
        }
        if j >= 6 && k >= 3 {
            let recent = &ratios[k - 3..];
            let r = recent.iter().sum::<f64>() / 3.0;
            let spread = recent.iter().fold(0.0f64, |m, x| m.max((x - r).abs()));
            if r < 0.99 && spread <= 0.05 {
                let tail = s * r / (1.0 - r);
                let goal = (0.1 * opts.abs_tol).max(opts.rel_tol * total.abs());
                if tail.abs() <= goal {
                    acc.value += total + tail;
                    return;
                }
            }
        }
    }
    // Floating-point resolution around `c` exhausted: extrapolate the tail.
    let k = ratios.len();
    if k >= 3 {
        let recent = &ratios[k - 3..];
        let r = recent.iter().sum::<f64>() / 3.0;
        if r >= 0.995 {
            acc.value += total;
            acc.divergent = true;
            return;
        }
        let tail = last * r / (1.0 - r);
        let spread = recent.iter().fold(0.0f64, |m, x| m.max((x - r).abs()));
        if spread > 1e-2 || tail.abs() > 1e-6 * total.abs().max(1.0) {
            acc.shells_unconverged = true;
        }
        acc.value += total + tail;
    } else {
        acc.value += total;
    }
}

/// Integrates over [a, b] with no interior breakpoints.
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: &QuadOptions) -> QuadEstimate {
    integrate_with_points(&mut f, &[a, b], &[], opts)
}

/// Integrates over [points[0], points[last]], splitting at every interior
/// point. Members of `singular` that coincide with a point are approached by
/// dyadic shells.
pub fn integrate_with_points<F: FnMut(f64) -> f64 + ?Sized>(
    f: &mut F,
    points: &[f64],
    singular: &[f64],
    opts: &QuadOptions,
) -> QuadEstimate {
    let mut g = |x: f64| f(x);
    integrate_dyn(&mut g, points, singular, opts)
}

fn integrate_dyn(f: &mut dyn FnMut(f64) -> f64, points: &[f64], singular: &[f64], opts: &QuadOptions) -> QuadEstimate {
    let mut acc = Acc::default();
    if points.len() < 2 {
        return finish(acc, opts);
    }
    let total = points[points.len() - 1] - points[0];
    if total <= 0.0 {
        return finish(acc, opts);
    }
    let is_sing = |x: f64| singular.contains(&x);
    for pair in points.windows(2) {
        let (p, q) = (pair[0], pair[1]);
        let len = q - p;
        if len <= 0.0 {
            continue;
        }
        let share = len / total;
        let tol = opts.abs_tol * share;
        let panels = ((opts.min_panels as f64 * share).ceil() as usize).max(1);
        match (is_sing(p), is_sing(q)) {
            (false, false) => adaptive(f, p, q, panels, tol, opts, &mut acc),
            (true, false) => shells(f, p, q, tol, opts, &mut acc),
            (false, true) => shells(f, q, p, tol, opts, &mut acc),
            (true, true) => {
                let m = 0.5 * (p + q);
                shells(f, p, m, 0.5 * tol, opts, &mut acc);
                shells(f, q, m, 0.5 * tol, opts, &mut acc);
            }
        }
        if acc.divergent {
            break;
        }
    }
    finish(acc, opts)
}

fn finish(acc: Acc, opts: &QuadOptions) -> QuadEstimate {
    let value = acc.value;
    let divergent = acc.divergent || value.is_infinite() || value.abs() > opts.divergence_cap;
    let budget = (10.0 * opts.abs_tol).max(1e-9 * value.abs());
    QuadEstimate {
        value,
        error: acc.error,
        converged: !divergent && !acc.shells_unconverged && acc.unresolved <= budget,
        divergent,
        evaluations: acc.evaluations,
        depth: acc.depth,
    }
}
