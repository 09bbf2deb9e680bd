use super::{max_abs_diff, CMatrix, HilbertSpace, StateVector, C64, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Hermitian, unit-trace, positive semidefinite matrix over a [`HilbertSpace`].
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    space: HilbertSpace,
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(space: HilbertSpace, matrix: CMatrix) -> Result<Self> {
        let n = space.total_dim();
        if matrix.shape() != (n, n) {
            return Err(Error::DimensionMismatch {
                expected: n,
                actual: matrix.nrows(),
            });
        }
        let herm = max_abs_diff(&matrix, &matrix.adjoint());
        if herm > DEFAULT_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "not Hermitian (deviation {herm:.3e})"
            )));
        }
        let tr = matrix.trace();
        if (tr - C64::new(1.0, 0.0)).norm() > DEFAULT_TOL {
            return Err(Error::InvalidDensityMatrix(format!("trace {tr}")));
        }
        let min_eig = min_eigenvalue(&matrix);
        if min_eig < -DEFAULT_TOL {
            return Err(Error::InvalidDensityMatrix(format!(
                "negative eigenvalue {min_eig:.3e}"
            )));
        }
        Ok(Self { space, matrix })
    }

    pub fn from_pure(psi: &StateVector) -> Self {
        let a = psi.amps();
        Self {
            space: psi.space().clone(),
            matrix: a * a.adjoint(),
        }
    }

    /// `Σ wᵢ |ψᵢ⟩⟨ψᵢ|`; weights must be non-negative and sum to one.
    pub fn mixture<'a>(
        components: impl IntoIterator<Item = (f64, &'a StateVector)>,
    ) -> Result<Self> {
        let mut iter = components.into_iter().peekable();
        let space = iter
            .peek()
            .map(|(_, s)| s.space().clone())
            .ok_or_else(|| Error::InvalidDensityMatrix("empty mixture".into()))?;
        let n = space.total_dim();
        let mut matrix = CMatrix::zeros(n, n);
        for (w, psi) in iter {
            if psi.space() != &space {
                return Err(Error::SpaceMismatch);
            }
            if w < 0.0 {
                return Err(Error::InvalidDensityMatrix(format!("negative weight {w}")));
            }
            let a = psi.amps();
            matrix += (a * a.adjoint()) * C64::new(w, 0.0);
        }
        Self::new(space, matrix)
    }

    /// Maximally mixed state `𝟙/n`.
    pub fn maximally_mixed(space: HilbertSpace) -> Self {
        let n = space.total_dim();
        Self {
            matrix: CMatrix::identity(n, n).unscale(n as f64),
            space,
        }
    }

    pub fn space(&self) -> &HilbertSpace {
        &self.space
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn trace(&self) -> C64 {
        self.matrix.trace()
    }

    /// `Tr ρ²`.
    pub fn purity(&self) -> f64 {
        (&self.matrix * &self.matrix).trace().re
    }

    /// Reduced state on `keep`, factors retained in their original order.
    pub fn partial_trace(&self, keep: &[&str]) -> Result<DensityMatrix> {
        if keep.is_empty() {
            return Err(Error::InvalidSpace("nothing to keep".into()));
        }
        let reduced = self.space.restrict(keep)?;
        let kept: Vec<bool> = self
            .space
            .factors()
            .iter()
            .map(|f| keep.contains(&f.label.as_str()))
            .collect();
        let traced_space = {
            let traced: Vec<_> = self
                .space
                .factors()
                .iter()
                .zip(&kept)
                .filter(|(_, k)| !**k)
                .map(|(f, _)| (f.label.clone(), f.dim))
                .collect();
            if traced.is_empty() {
                return Ok(self.clone());
            }
            HilbertSpace::new(traced)?
        };

        // Merge a kept multi-index and a traced multi-index back into the
        // full multi-index.
        let merge = |r: &[usize], t: &[usize]| -> usize {
            let (mut ri, mut ti) = (0, 0);
            let digits: Vec<usize> = kept
                .iter()
                .map(|&k| {
                    if k {
                        ri += 1;
                        r[ri - 1]
                    } else {
                        ti += 1;
                        t[ti - 1]
                    }
                })
                .collect();
            self.space.flat_index(&digits)
        };

        let n = reduced.total_dim();
        let mut out = CMatrix::zeros(n, n);
        for i in 0..n {
            let ri = reduced.digits(i);
            for j in 0..n {
                let rj = reduced.digits(j);
                let mut acc = C64::new(0.0, 0.0);
                for t in 0..traced_space.total_dim() {
                    let td = traced_space.digits(t);
                    acc += self.matrix[(merge(&ri, &td), merge(&rj, &td))];
                }
                out[(i, j)] = acc;
            }
        }
        Ok(DensityMatrix {
            space: reduced,
            matrix: out,
        })
    }
}

/// `⟨b|ρ|b⟩`.
pub fn fidelity_mixed(rho: &DensityMatrix, b: &StateVector) -> Result<f64> {
    if rho.space() != b.space() {
        return Err(Error::SpaceMismatch);
    }
    let v = b.amps();
    Ok(v.dotc(&(rho.matrix() * v)).re.clamp(0.0, 1.0))
}

pub fn min_eigenvalue(m: &CMatrix) -> f64 {
    let herm = (m + m.adjoint()).unscale(2.0);
    herm.symmetric_eigenvalues()
        .iter()
        .copied()
        .fold(f64::INFINITY, f64::min)
}
