//! Shared fixtures for the criterion benchmarks.

use kantorlab_core::kernels::DensityKernel;
use kantorlab_core::orlicz::{make_phi, PhiFunction};
use kantorlab_core::{corpus, IntervalFunction};

/// Corpus functions exercised by the norm benchmarks.
pub const FUNCTIONS: [&str; 4] = ["sin", "step", "abs_pow:nu=0.5", "shifted_log"];

/// Kernels exercised by the operator and moment benchmarks.
pub const KERNELS: [&str; 3] = ["ramp", "logistic", "bspline"];

pub fn function(name: &str) -> IntervalFunction {
    corpus(name).expect("corpus name")
}

pub fn kernel(name: &str) -> DensityKernel {
    DensityKernel::by_name(name).expect("catalog name")
}

pub fn square() -> PhiFunction {
    make_phi("power", &[("p", 2.0)]).expect("power phi")
}

pub fn zygmund() -> PhiFunction {
    make_phi("zygmund", &[("beta", 2.0), ("gamma", 1.0)]).expect("zygmund phi")
}

/// `n + 1` equispaced points of `[0, 1]`.
pub fn grid(n: usize) -> Vec<f64> {
    (0..=n).map(|i| i as f64 / n as f64).collect()
}
