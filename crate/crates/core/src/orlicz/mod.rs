//! φ-functions, modulars, Luxemburg norms, moduli of smoothness and probes.

pub mod modular;
pub mod moduli;
pub mod phi;
pub mod probe;

pub use modular::{luxemburg_norm, luxemburg_norm_with, modular, modular_with, ModularValue};
pub use moduli::{step_grid, strong_modulus, weak_modulus};
pub use phi::{make_phi, parse_params, PhiFunction, PhiKind, Tri, PHI_CATALOG};
pub use probe::{probe_conditions, probe_grid, ConditionReport};
