use kantorlab_core::analysis::{lipschitz_fit, log_log_fit, rate_fit, ModulusKind};
use kantorlab_core::operators::{apply, hl_maximal, steklov};
use kantorlab_core::orlicz::{luxemburg_norm, make_phi, modular, strong_modulus};
use kantorlab_core::{corpus, DensityKernel, IntervalFunction, PhiFunction};
use proptest::prelude::*;

const FINITE_CORPUS: [&str; 6] = ["const:c=0.7", "linear", "sin", "abs_pow:nu=0.5", "step", "sobolev_u"];

fn phis() -> Vec<PhiFunction> {
    vec![
        make_phi("power", &[("p", 1.0)]).unwrap(),
        make_phi("power", &[("p", 2.0)]).unwrap(),
        make_phi("power", &[("p", 3.5)]).unwrap(),
        make_phi("zygmund", &[("beta", 2.0), ("gamma", 1.0)]).unwrap(),
        make_phi("exp", &[("rho", 1.0)]).unwrap(),
    ]
}

fn member(i: usize) -> IntervalFunction {
    corpus(FINITE_CORPUS[i % FINITE_CORPUS.len()]).unwrap()
}

fn rel_close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1e-300)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn luxemburg_norm_is_homogeneous(i in 0usize..6, j in 0usize..5, c in 0.05f64..20.0) {
        let f = member(i);
        let phi = &phis()[j];
        let base = luxemburg_norm(phi, &f).unwrap();
        let scaled = luxemburg_norm(phi, &f.scaled(c)).unwrap();
        prop_assert!(rel_close(scaled, c * base, 1e-8), "{scaled} vs {}", c * base);
    }

    #[test]
    fn luxemburg_norm_is_subadditive(i in 0usize..6, k in 0usize..6, j in 0usize..5, c in -3.0f64..3.0) {
        let f = member(i);
        let g = member(k).scaled(c);
        let phi = &phis()[j];
        let sum = luxemburg_norm(phi, &f.plus(&g).unwrap()).unwrap();
        let parts = luxemburg_norm(phi, &f).unwrap() + luxemburg_norm(phi, &g).unwrap();
        prop_assert!(sum <= parts * (1.0 + 1e-8) + 1e-12, "{sum} > {parts}");
    }

    #[test]
    fn luxemburg_norm_sits_on_the_unit_level(i in 1usize..6, j in 0usize..5) {
        let f = member(i);
        let phi = &phis()[j];
        let u = luxemburg_norm(phi, &f).unwrap();
        let level = modular(phi, &f, 1.0 / u).unwrap().value();
        prop_assert!((1.0 - 1e-4..=1.0).contains(&level), "{level}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn operator_is_linear(
        i in 0usize..6,
        k in 0usize..6,
        kernel in prop::sample::select(vec!["logistic", "tanh", "ramp", "sigma_theta", "bspline"]),
        n in 1usize..80,
        alpha in -4.0f64..4.0,
        beta in -4.0f64..4.0,
        x in 0.0f64..1.0,
    ) {
        let kernel = DensityKernel::parse(kernel).unwrap();
        let (f, g) = (member(i), member(k));
        let combo = f.combine(alpha, &g, beta).unwrap();
        let lhs = apply(&kernel, &combo, n, x).unwrap();
        let kf = apply(&kernel, &f, n, x).unwrap();
        let kg = apply(&kernel, &g, n, x).unwrap();
        let rhs = alpha * kf + beta * kg;
        let scale = (alpha * kf).abs() + (beta * kg).abs() + 1.0;
        prop_assert!((lhs - rhs).abs() <= 1e-8 * scale, "{lhs} vs {rhs}");
    }

    #[test]
    fn maximal_function_dominates(i in 0usize..6, x in 0.0f64..1.0) {
        let f = member(i);
        let v = f.eval(x).abs();
        prop_assert!(hl_maximal(&f, x) >= v * (1.0 - 1e-9), "{} < {v}", hl_maximal(&f, x));
    }

    #[test]
    fn rate_fit_recovers_power_laws(c in 1e-3f64..1e3, a in 0.1f64..3.0) {
        let ns: Vec<usize> = (2..10).map(|k| 1usize << k).collect();
        let errors: Vec<f64> = ns.iter().map(|&n| c * (n as f64).powf(-a)).collect();
        let fit = rate_fit(&ns, &errors, 8).unwrap();
        prop_assert!((fit.slope + a).abs() < 1e-10, "{} vs {}", fit.slope, -a);
        prop_assert!((fit.intercept - c.ln()).abs() < 1e-9);
    }

    #[test]
    fn log_log_fit_is_exact_for_monomials(a in -2.0f64..2.0) {
        let xs: Vec<f64> = (1..8).map(|k| 0.5f64.powi(k)).collect();
        let ys: Vec<f64> = xs.iter().map(|x| 3.0 * x.powf(a)).collect();
        let fit = log_log_fit(&xs, &ys).unwrap();
        prop_assert!((fit.slope - a).abs() < 1e-10);
        prop_assert!(fit.r2 >= 1.0 - 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(8))]

    #[test]
    fn modulus_is_bounded_by_the_norm(i in 1usize..6, k in 1u32..3, delta in 0.01f64..0.5) {
        let f = member(i);
        let phi = make_phi("power", &[("p", 2.0)]).unwrap();
        let w = strong_modulus(&phi, &f, delta, k).unwrap();
        let norm = luxemburg_norm(&phi, &f).unwrap();
        prop_assert!(w <= 2f64.powi(k as i32) * norm * (1.0 + 1e-8), "{w} vs {norm}");
    }

    #[test]
    fn steklov_distance_shrinks_with_h(i in 1usize..6, j in 0usize..4, e in 1i32..6) {
        let f = member(i);
        let phi = &phis()[j];
        let (h_big, h_small) = (0.5f64.powi(e), 0.5f64.powi(e + 1));
        let big = modular(phi, &f.minus(&steklov(&f, 1, h_big).unwrap()).unwrap(), 1.0).unwrap().value();
        let small = modular(phi, &f.minus(&steklov(&f, 1, h_small).unwrap()).unwrap(), 1.0).unwrap().value();
        prop_assert!(small <= big * (1.0 + 1e-9) + 1e-14, "{small} > {big}");
    }
}

#[test]
fn strong_class_membership_carries_over_to_the_weak_class() {
    let deltas = [0.04, 0.02, 0.01, 0.005, 0.0025];
    for phi in [
        make_phi("power", &[("p", 2.0)]).unwrap(),
        make_phi("zygmund", &[("beta", 2.0), ("gamma", 1.0)]).unwrap(),
    ] {
        for name in ["linear", "sin", "abs_pow:nu=0.5", "step", "shifted_log"] {
            let f = corpus(name).unwrap();
            let strong = lipschitz_fit(&f, &phi, &ModulusKind::Strong, &deltas).unwrap();
            if strong.r2 < 0.98 {
                continue;
            }
            let weak = lipschitz_fit(&f, &phi, &ModulusKind::Weak { lambdas: vec![1.0] }, &deltas).unwrap();
            assert!(
                weak.nu_hat >= strong.nu_hat - 0.1,
                "{name} under {phi}: weak {} vs strong {}",
                weak.nu_hat,
                strong.nu_hat
            );
        }
    }
}
