use rand::Rng;
use rand_distr::StandardNormal;

use super::{CMatrix, CVector, HilbertSpace, Operator, StateVector, C64};
use crate::error::Result;

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-distributed unitary: QR of a complex Ginibre matrix with the phases
/// of `R`'s diagonal moved into `Q`.
pub fn haar_unitary<R: Rng + ?Sized>(dim: usize, rng: &mut R) -> Result<Operator> {
    assert!(dim >= 1, "dimension must be positive");
    let z = CMatrix::from_fn(dim, dim, |_, _| gaussian(rng));
    let qr = z.qr();
    let (mut q, r) = (qr.q(), qr.r());
    for j in 0..dim {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 {
            d / d.norm()
        } else {
            C64::new(1.0, 0.0)
        };
        for i in 0..dim {
            q[(i, j)] *= phase;
        }
    }
    Operator::unitary(q)
}

/// Uniformly random pure state (normalized complex Gaussian vector).
pub fn haar_state<R: Rng + ?Sized>(space: HilbertSpace, rng: &mut R) -> StateVector {
    let v = CVector::from_fn(space.total_dim(), |_, _| gaussian(rng));
    let n = v.norm();
    StateVector::from_parts_unchecked(space, v.unscale(n))
}
