//! Kantorovich operators, Steklov averages and the maximal function.

pub mod kantorovich;
pub mod maximal;
pub mod steklov;

pub use kantorovich::{apply, apply_derivative, cell_averages, index_range, KantorovichEval};
pub use maximal::hl_maximal;
pub use steklov::steklov;

use crate::error::Result;
use crate::function::IntervalFunction;

/// One row of a sampled-operator table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SampleRow {
    pub x: f64,
    pub f: f64,
    pub kn: f64,
    /// `None` when the kernel has no derivative.
    pub dkn: Option<f64>,
}

/// Samples `f`, `K_n f` and `K'_n f` on `points` uniform nodes of `[a, b]`.
pub fn sample_table(op: &KantorovichEval, f: &IntervalFunction, points: usize) -> Result<Vec<SampleRow>> {
    let (a, b) = (f.a(), f.b());
    let m = points.max(2);
    (0..m)
        .map(|i| {
            let x = a + (b - a) * i as f64 / (m - 1) as f64;
            let dkn = if op.kernel().has_derivative() {
                Some(op.apply_derivative(x)?)
            } else {
                None
            };
            Ok(SampleRow {
                x,
                f: f.eval(x),
                kn: op.apply(x)?,
                dkn,
            })
        })
        .collect()
}
