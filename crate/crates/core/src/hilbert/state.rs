use super::{CVector, HilbertSpace, Operator, C64, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Unit vector over a [`HilbertSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    space: HilbertSpace,
    amps: CVector,
}

impl StateVector {
    /// Checks length and unit norm (at [`DEFAULT_TOL`]).
    pub fn new(space: HilbertSpace, amps: CVector) -> Result<Self> {
        if amps.len() != space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: space.total_dim(),
                actual: amps.len(),
            });
        }
        let norm = amps.norm();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self { space, amps })
    }

    /// Rescales `amps` to unit norm. Fails on the zero vector.
    pub fn normalized(space: HilbertSpace, amps: CVector) -> Result<Self> {
        let norm = amps.norm();
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::NotNormalized(norm));
        }
        Self::new(space, amps.unscale(norm))
    }

    /// Computational basis state with the given digit per factor.
    pub fn basis(space: HilbertSpace, digits: &[usize]) -> Result<Self> {
        if digits.len() != space.factors().len() {
            return Err(Error::DimensionMismatch {
                expected: space.factors().len(),
                actual: digits.len(),
            });
        }
        for (d, f) in digits.iter().zip(space.factors()) {
            if *d >= f.dim {
                return Err(Error::DimensionMismatch {
                    expected: f.dim,
                    actual: *d,
                });
            }
        }
        let mut amps = CVector::zeros(space.total_dim());
        amps[space.flat_index(digits)] = C64::new(1.0, 0.0);
        Ok(Self { space, amps })
    }

    pub(crate) fn from_parts_unchecked(space: HilbertSpace, amps: CVector) -> Self {
        debug_assert_eq!(space.total_dim(), amps.len());
        Self { space, amps }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn amps(&self) -> &CVector {
        &self.amps
    }

    pub fn into_amps(self) -> CVector {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &StateVector) -> Result<C64> {
        if self.space != other.space {
            return Err(Error::SpaceMismatch);
        }
        Ok(self.amps.dotc(&other.amps))
    }

    /// `self ⊗ other` over the concatenated space.
    pub fn tensor(&self, other: &StateVector) -> Result<StateVector> {
        let space = self.space.product(&other.space)?;
        Ok(Self {
            space,
            amps: self.amps.kronecker(&other.amps),
        })
    }

    /// Applies a unitary. See [`Operator::unitary`].
    pub fn apply(&self, op: &Operator) -> Result<StateVector> {
        if op.dim() != self.space.total_dim() {
            return Err(Error::DimensionMismatch {
                expected: self.space.total_dim(),
                actual: op.dim(),
            });
        }
        if !op.claims_unitary() {
            return Err(Error::NotUnitary {
                deviation: op.unitarity_deviation(),
            });
        }
        let amps = op.matrix() * &self.amps;
        let norm = amps.norm();
        if (norm - 1.0).abs() > DEFAULT_TOL {
            return Err(Error::NotNormalized(norm));
        }
        Ok(Self {
            space: self.space.clone(),
            amps,
        })
    }

    /// Squared norm of the component whose factor `label` takes value `value`.
    pub fn population(&self, label: &str, value: usize) -> Result<f64> {
        let pos = self.space.position(label)?;
        Ok(self
            .amps
            .iter()
            .enumerate()
            .filter(|(i, _)| self.space.digits(*i)[pos] == value)
            .map(|(_, a)| a.norm_sqr())
            .sum())
    }
}

/// `|⟨a|b⟩|²`.
pub fn fidelity_pure(a: &StateVector, b: &StateVector) -> Result<f64> {
    Ok(a.inner(b)?.norm_sqr().clamp(0.0, 1.0))
}
