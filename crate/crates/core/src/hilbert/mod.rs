//! Dense linear-algebra substrate: composite spaces, pure and mixed states,
//! operators, embeddings, measurement and Haar sampling.
//!
//! Index convention: for a space with factors `(f0, f1, ..., fn)` the
//! flattened basis index is `((d0_idx * d1 + d1_idx) * d2 + ...)`, i.e. the
//! leftmost factor is the slowest-varying one. Kronecker products follow the
//! same order.

mod density;
mod embed;
mod haar;
mod measure;
mod operator;
mod space;
mod state;

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

pub use density::{fidelity_mixed, min_eigenvalue as density_min_eigenvalue, DensityMatrix};
pub use embed::{subspace_embed, subsystem_embed, SubspaceEmbedding};
pub use haar::{haar_state, haar_unitary};
pub use measure::{measure_projective, Measurement};
pub use operator::{is_unitary, tensor, Operator};
pub use space::{Factor, HilbertSpace};
pub use state::{fidelity_pure, StateVector};

pub type C64 = Complex64;
pub type CMatrix = DMatrix<C64>;
pub type CVector = DVector<C64>;

/// Default tolerance for unitarity, normalization and Hermiticity checks.
pub const DEFAULT_TOL: f64 = 1e-10;

pub(crate) fn c(re: f64, im: f64) -> C64 {
    C64::new(re, im)
}

/// Largest absolute entry of `m`.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest entrywise distance between two equally sized matrices.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    assert_eq!(a.shape(), b.shape());
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}
