//! Grid probes for growth conditions on φ-functions.
//!
//! Every verdict here is a probe on a finite grid, not a proof.

use crate::orlicz::phi::PhiFunction;

const GRID_POINTS: usize = 121;
const PROBE_V: [f64; 5] = [1.0, 2.0, 4.0, 8.0, 16.0];

/// `logspace(1e-6, 1e6, 121)`.
pub fn probe_grid() -> Vec<f64> {
    (0..GRID_POINTS)
        .map(|i| 10f64.powf(-6.0 + 12.0 * i as f64 / (GRID_POINTS - 1) as f64))
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct Delta2Probe {
    pub holds: bool,
    /// Largest observed `φ(2u)/φ(u)`.
    pub constant: f64,
    pub witness_u: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeltaPrimeProbe {
    pub holds: bool,
    /// Largest observed `φ(uv)/(φ(u)φ(v))`.
    pub constant: f64,
    pub witness: (f64, f64),
    /// Supremum over `u` for each probe `v`.
    pub sup_by_v: Vec<(f64, f64)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct NFunctionProbe {
    pub holds: bool,
    /// `φ(u)/u` at the smallest probe point.
    pub small_ratio: f64,
    /// `φ(u)/u` at the largest probe point.
    pub large_ratio: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BetaProbe {
    /// Largest β with `u^{-β} φ(u)` non-decreasing on the grid.
    pub beta_max: f64,
    pub witness_u: f64,
}

impl BetaProbe {
    /// Non-decreasing monotonicity for a given β.
    pub fn holds_for(&self, beta: f64) -> bool {
        beta <= self.beta_max + 1e-9
    }

    /// Strict monotonicity for a given β.
    pub fn strict_for(&self, beta: f64) -> bool {
        beta < self.beta_max - 1e-9
    }

    /// Some β > 1 works.
    pub fn holds(&self) -> bool {
        self.beta_max > 1.0 + 1e-9
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConditionReport {
    pub phi: String,
    /// φ(0) = 0, φ > 0 on the grid, non-decreasing, strictly growing at 10², 10⁴, 10⁶.
    pub axioms: bool,
    /// Midpoint convexity on grid pairs.
    pub midpoint_convex: bool,
    pub delta2: Delta2Probe,
    pub delta_prime: DeltaPrimeProbe,
    pub n_function: NFunctionProbe,
    pub beta: BetaProbe,
}

fn ratio(num: f64, den: f64) -> f64 {
    if num.is_infinite() || den == 0.0 {
        f64::INFINITY
    } else {
        num / den
    }
}

/// Runs every probe on `phi`.
pub fn probe_conditions(phi: &PhiFunction) -> ConditionReport {
    let grid = probe_grid();
    let vals: Vec<f64> = grid.iter().map(|&u| phi.eval(u)).collect();

    let growth = [1e2, 1e4, 1e6].map(|u| phi.eval(u));
    let axioms = phi.eval(0.0) == 0.0
        && vals.iter().all(|&v| v > 0.0)
        && vals.windows(2).all(|w| w[1] >= w[0])
        && growth[0] < growth[1]
        && (growth[1] < growth[2] || growth[2].is_infinite());

    let midpoint_convex = (0..grid.len())
        .flat_map(|i| (i + 1..grid.len()).step_by(7).map(move |j| (i, j)))
        .all(|(i, j)| {
            let (u, v) = (grid[i], grid[j]);
            let lhs = phi.eval(0.5 * (u + v));
            let rhs = 0.5 * (vals[i] + vals[j]);
            !rhs.is_finite() || lhs <= rhs * (1.0 + 1e-12)
        });

    // Δ₂: the ratio must stay bounded toward the top of the grid.
    let d2: Vec<f64> = grid
        .iter()
        .zip(&vals)
        .map(|(&u, &v)| ratio(phi.eval(2.0 * u), v))
        .collect();
    let (mut witness_u, mut constant) = (grid[0], 0.0f64);
    for (&u, &r) in grid.iter().zip(&d2) {
        if r > constant {
            constant = r;
            witness_u = u;
        }
    }
    let tail = d2.len() - 20;
    let head_max = d2[..tail].iter().copied().fold(0.0, f64::max);
    let tail_max = d2[tail..].iter().copied().fold(0.0, f64::max);
    let delta2 = Delta2Probe {
        holds: constant.is_finite() && tail_max <= head_max * 1.001,
        constant,
        witness_u,
    };

    // Δ′: the supremum over u must not grow with v.
    let mut sup_by_v = Vec::new();
    let mut dp_const = 0.0f64;
    let mut dp_witness = (grid[0], PROBE_V[0]);
    for &v in &PROBE_V {
        let pv = phi.eval(v);
        let mut s = 0.0f64;
        for (&u, &pu) in grid.iter().zip(&vals) {
            let r = ratio(phi.eval(u * v), pu * pv);
            if r > s || r.is_nan() {
                s = if r.is_nan() { f64::INFINITY } else { r };
            }
            if s > dp_const {
                dp_const = s;
                dp_witness = (u, v);
            }
        }
        sup_by_v.push((v, s));
    }
    let last = sup_by_v[sup_by_v.len() - 1].1;
    let before = sup_by_v[..sup_by_v.len() - 1].iter().map(|p| p.1).fold(0.0, f64::max);
    let delta_prime = DeltaPrimeProbe {
        holds: dp_const.is_finite() && last <= before * 1.01,
        constant: dp_const,
        witness: dp_witness,
        sup_by_v,
    };

    // N-function limits, compared against the ratio three decades inward.
    let r = |u: f64| ratio(phi.eval(u), u);
    let small_ratio = r(1e-6);
    let large_ratio = r(1e6);
    let n_function = NFunctionProbe {
        holds: small_ratio <= 0.5 * r(1e-3) && large_ratio >= 2.0 * r(1e3),
        small_ratio,
        large_ratio,
    };

    // β-monotonicity: u^{-β} φ non-decreasing iff every log-slope is ≥ β.
    let mut beta_max = f64::INFINITY;
    let mut beta_witness = grid[0];
    for i in 0..grid.len() - 1 {
        let (a, b) = (vals[i], vals[i + 1]);
        if !(a.is_finite() && b.is_finite()) {
            continue;
        }
        let slope = (b.ln() - a.ln()) / (grid[i + 1].ln() - grid[i].ln());
        if slope < beta_max {
            beta_max = slope;
            beta_witness = grid[i];
        }
    }
    ConditionReport {
        phi: phi.to_string(),
        axioms,
        midpoint_convex,
        delta2,
        delta_prime,
        n_function,
        beta: BetaProbe {
            beta_max,
            witness_u: beta_witness,
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::orlicz::phi::{make_phi, PHI_CATALOG};

    #[test]
    fn grid_spans_twelve_decades() {
        let g = probe_grid();
        assert_eq!(g.len(), 121);
        assert!((g[0] - 1e-6).abs() < 1e-20);
        assert!((g[120] - 1e6).abs() < 1e-6);
    }

    #[test]
    fn power_two_has_delta2_constant_four() {
        let r = probe_conditions(&make_phi("power", &[("p", 2.0)]).unwrap());
        assert!(r.delta2.holds);
        assert!((r.delta2.constant - 4.0).abs() < 1e-12);
        assert!(r.delta_prime.holds && r.n_function.holds);
        assert!((r.beta.beta_max - 2.0).abs() < 1e-9);
        assert!(r.beta.holds_for(2.0) && !r.beta.strict_for(2.0));
    }

    #[test]
    fn exponential_fails_delta2() {
        let r = probe_conditions(&make_phi("exp", &[("rho", 1.0)]).unwrap());
        assert!(!r.delta2.holds);
        assert!(!r.delta_prime.holds);
        assert!(!r.n_function.holds);
    }

    #[test]
    fn identity_is_not_an_n_function() {
        let r = probe_conditions(&make_phi("power", &[("p", 1.0)]).unwrap());
        assert!(!r.n_function.holds);
        assert!((r.n_function.small_ratio - 1.0).abs() < 1e-15);
        assert!(!r.beta.holds());
    }

    #[test]
    fn catalog_passes_axioms() {
        for name in PHI_CATALOG {
            let phi = make_phi(name, &[]).unwrap();
            let r = probe_conditions(&phi);
            assert!(r.axioms, "{name}");
            assert!(r.midpoint_convex, "{name}");
        }
    }

    #[test]
    fn zygmund_and_llogl_verdicts() {
        let z = probe_conditions(&make_phi("zygmund", &[("beta", 2.0), ("gamma", 1.0)]).unwrap());
        assert!(z.delta2.holds && z.delta_prime.holds && z.n_function.holds);
        assert!(z.beta.holds_for(2.0));
        let l = probe_conditions(&make_phi("llogl", &[]).unwrap());
        assert!(l.delta2.holds);
        assert!(!l.delta_prime.holds);
        let c = probe_conditions(&make_phi("cosh", &[]).unwrap());
        assert!(!c.delta2.holds && c.n_function.holds);
        assert!((c.beta.beta_max - 2.0).abs() < 1e-3);
    }
}
