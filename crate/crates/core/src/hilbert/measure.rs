use rand::Rng;

use super::{max_abs_diff, CMatrix, Operator, StateVector, DEFAULT_TOL};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct Measurement {
    pub outcome: usize,
    pub state: StateVector,
    pub probability: f64,
}

/// Checks that `projectors` are Hermitian, idempotent and resolve the identity.
pub fn validate_projectors(projectors: &[Operator], dim: usize) -> Result<()> {
    if projectors.is_empty() {
        return Err(Error::InvalidProjectors("empty set".into()));
    }
    let mut sum = CMatrix::zeros(dim, dim);
    for (k, p) in projectors.iter().enumerate() {
        if p.dim() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                actual: p.dim(),
            });
        }
        let m = p.matrix();
        if max_abs_diff(m, &m.adjoint()) > DEFAULT_TOL {
            return Err(Error::InvalidProjectors(format!(
                "projector {k} is not Hermitian"
            )));
        }
        if max_abs_diff(&(m * m), m) > DEFAULT_TOL {
            return Err(Error::InvalidProjectors(format!(
                "projector {k} is not idempotent"
            )));
        }
        sum += m;
    }
    if max_abs_diff(&sum, &CMatrix::identity(dim, dim)) > DEFAULT_TOL {
        return Err(Error::InvalidProjectors(
            "projectors do not sum to identity".into(),
        ));
    }
    Ok(())
}

/// Born probabilities `‖Pₖψ‖²` and the unnormalized branches `Pₖψ`.
pub(crate) fn branches(psi: &StateVector, projectors: &[Operator]) -> Vec<(f64, super::CVector)> {
    projectors
        .iter()
        .map(|p| {
            let v = p.matrix() * psi.amps();
            (v.norm_squared(), v)
        })
        .collect()
}

/// Samples a projective measurement with Born probabilities.
pub fn measure_projective<R: Rng + ?Sized>(
    psi: &StateVector,
    projectors: &[Operator],
    rng: &mut R,
) -> Result<Measurement> {
    validate_projectors(projectors, psi.space().total_dim())?;
    let branches = branches(psi, projectors);
    let r: f64 = rng.random();
    let mut acc = 0.0;
    let mut chosen = branches.len() - 1;
    for (k, (p, _)) in branches.iter().enumerate() {
        acc += p;
        if r < acc {
            chosen = k;
            break;
        }
    }
    // Guard against landing on a zero-probability tail through rounding.
    while branches[chosen].0 == 0.0 && chosen > 0 {
        chosen -= 1;
    }
    let (probability, v) = &branches[chosen];
    let state = StateVector::normalized(psi.space().clone(), v.clone())?;
    Ok(Measurement {
        outcome: chosen,
        state,
        probability: *probability,
    })
}
