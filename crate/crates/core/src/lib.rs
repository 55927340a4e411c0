//! Kantorovich neural-network operators in Orlicz spaces.
//!
//! The crate provides φ-functions with modulars and Luxemburg norms, moduli
//! of smoothness, sigmoidal density kernels with their discrete moments, the
//! Kantorovich operator `K_n` with its derivative, Steklov smoothing, the
//! Hardy–Littlewood maximal function, and an experiment harness that checks
//! direct, inverse and Bernstein-type estimates numerically.

pub mod analysis;
pub mod corpus;
pub mod error;
pub mod function;
pub mod kernels;
pub mod operators;
pub mod orlicz;
pub mod quadrature;
pub mod report;

pub use analysis::{BoundKind, BoundReport, ErrorCurve};
pub use corpus::corpus;
pub use error::{Error, Result};
pub use function::IntervalFunction;
pub use kernels::{DensityKernel, Sigmoidal, Support};
pub use operators::KantorovichEval;
pub use orlicz::{luxemburg_norm, modular, ModularValue, PhiFunction};
