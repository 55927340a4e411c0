//! Experiment harness: error curves, rate fits, bound checks, Lipschitz
//! exponents and the two worked examples.

pub mod bounds;
pub mod curve;
pub mod examples;
pub mod lipschitz;

pub use bounds::{lambda_grid, verify_bound, BoundKind, BoundParams, BoundReport, BoundSetup, SPREAD_LIMIT};
pub use curve::{error_curve, error_function, log_log_fit, norm_or_inf, rate_fit, ErrorCurve, RateFit, N_MIN};
pub use examples::{
    inclusion_example, level_of_cutoff, sobolev_counterexample, t1_closed, t2_closed, DivergenceRow, InclusionReport,
    SobolevReport, SobolevRow, DIVERGENCE_LEVELS, SOBOLEV_LEVELS,
};
pub use lipschitz::{
    inverse_consistency, k_functional_upper, lipschitz_fit, InverseReport, KFunctional, LipschitzFit, ModulusKind,
    INVERSE_TOLERANCE,
};
