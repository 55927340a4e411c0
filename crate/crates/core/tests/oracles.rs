use std::f64::consts::{LN_2, PI};

use kantorlab_core::analysis::{t1_closed, t2_closed};
use kantorlab_core::corpus;
use kantorlab_core::kernels::{moment, partition_defect, DensityKernel, KERNEL_CATALOG};
use kantorlab_core::operators::KantorovichEval;
use kantorlab_core::orlicz::{luxemburg_norm, make_phi};

/// Composite Simpson rule with `n` (even) panels.
fn simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let mut s = f(a) + f(b);
    for i in 1..n {
        let w = if i % 2 == 1 { 4.0 } else { 2.0 };
        s += w * f(a + h * i as f64);
    }
    s * h / 3.0
}

fn kernels() -> Vec<DensityKernel> {
    KERNEL_CATALOG
        .iter()
        .map(|k| DensityKernel::by_name(k).unwrap())
        .collect()
}

#[test]
fn sobolev_u_matches_erfc_form() {
    let f = corpus("sobolev_u").unwrap();
    let oracle = |x: f64| {
        let x = x.min(0.5);
        (2.0 * PI).sqrt() * libm::erfc((-x.ln() / 2.0).sqrt())
    };
    for x in [1e-6, 1e-3, 0.01, 0.1, 0.25, 0.4, 0.5, 0.75, 0.999] {
        let (got, want) = (f.eval(x), oracle(x));
        assert!((got - want).abs() < 1e-8, "x = {x}: {got} vs {want}");
    }
}

#[test]
fn constant_norm_under_exponential_phi() {
    let phi = make_phi("exp", &[("rho", 1.0)]).unwrap();
    let f = corpus("const:c=2").unwrap();
    let n = luxemburg_norm(&phi, &f).unwrap();
    assert!((n - 2.0 / LN_2).abs() < 1e-8, "{n}");
}

#[test]
fn sine_norms_under_power_phi() {
    let f = corpus("sin").unwrap();
    let l2 = luxemburg_norm(&make_phi("power", &[("p", 2.0)]).unwrap(), &f).unwrap();
    assert!((l2 - 0.5f64.sqrt()).abs() < 1e-8, "{l2}");
    let l1 = luxemburg_norm(&make_phi("power", &[("p", 1.0)]).unwrap(), &f).unwrap();
    assert!((l1 - 2.0 / PI).abs() < 1e-8, "{l1}");
}

#[test]
fn zeroth_moment_is_one() {
    for k in kernels() {
        let m = moment(&k, 0.0).unwrap();
        assert!((m.value - 1.0).abs() < 1e-9, "{k}: {}", m.value);
    }
}

#[test]
fn density_shifts_sum_to_one() {
    let grid: Vec<f64> = (0..=200).map(|i| -3.0 + 6.0 * i as f64 / 200.0).collect();
    for k in kernels() {
        let d = partition_defect(&k, &grid);
        assert!(d < 1e-9, "{k}: {d}");
    }
}

#[test]
fn operator_reproduces_constants() {
    let one = corpus("const").unwrap();
    for k in kernels() {
        for n in [4, 32, 256] {
            let op = KantorovichEval::new(&k, &one, n).unwrap();
            for i in 0..=20 {
                let x = i as f64 / 20.0;
                let v = op.apply(x).unwrap();
                assert!((v - 1.0).abs() < 1e-9, "{k}, n = {n}, x = {x}: {v}");
            }
        }
    }
}

#[test]
fn inclusion_closed_forms_match_smooth_substitutions() {
    // z = t + w² and z = w² remove the endpoint singularities.
    for t in [0.05f64, 0.1, 0.25, 0.4, 0.5] {
        let t1 = simpson(|w| 2.0 * ((t + w * w).sqrt() - w), 0.0, (1.0 - t).sqrt(), 4000);
        let t2 = simpson(|w| 2.0 * ((w * w + 1.0 - t).sqrt() - w), 0.0, t.sqrt(), 4000);
        assert!((t1_closed(t) - t1).abs() < 1e-10, "t = {t}: {} vs {t1}", t1_closed(t));
        assert!((t2_closed(t) - t2).abs() < 1e-10, "t = {t}: {} vs {t2}", t2_closed(t));
    }
}
