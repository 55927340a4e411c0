//! Sigmoidal activations, density kernels and discrete moments.

pub mod density;
pub mod moments;
pub mod sigmoidal;

pub use density::{build_density, denominator_floor, partition_defect, DensityKernel, Support};
pub use moments::{hybrid_moment, moment, MomentEstimate};
pub use sigmoidal::{SigmoidKind, Sigmoidal, KERNEL_CATALOG};
