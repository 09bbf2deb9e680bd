use std::f64::consts::FRAC_1_SQRT_2;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::{c, max_abs, CMatrix, C64, DEFAULT_TOL};
use crate::error::{Error, Result};

/// Square complex matrix, tagged with whether it is meant to be unitary.
#[derive(Clone, Debug, PartialEq)]
pub struct Operator {
    matrix: CMatrix,
    claims_unitary: bool,
}

impl Operator {
    /// Wraps `matrix` as a unitary, checking `U†U = 𝟙` at [`DEFAULT_TOL`].
    pub fn unitary(matrix: CMatrix) -> Result<Self> {
        Self::unitary_with_tol(matrix, DEFAULT_TOL)
    }

    pub fn unitary_with_tol(matrix: CMatrix, tol: f64) -> Result<Self> {
        square(&matrix)?;
        let deviation = deviation_from_unitary(&matrix);
        if deviation > tol {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(Self {
            matrix,
            claims_unitary: true,
        })
    }

    /// Wraps an arbitrary square matrix (projectors, non-unitary test inputs).
    pub fn general(matrix: CMatrix) -> Result<Self> {
        square(&matrix)?;
        Ok(Self {
            matrix,
            claims_unitary: false,
        })
    }

    /// Trusted constructor for matrices unitary by construction (permutations,
    /// products of unitaries).
    pub(crate) fn unitary_unchecked(matrix: CMatrix) -> Self {
        debug_assert!(matrix.is_square());
        Self {
            matrix,
            claims_unitary: true,
        }
    }

    pub fn identity(dim: usize) -> Self {
        Self::unitary_unchecked(CMatrix::identity(dim, dim))
    }

    pub fn pauli_x() -> Self {
        Self::from_rows2([[c(0., 0.), c(1., 0.)], [c(1., 0.), c(0., 0.)]])
    }

    pub fn pauli_y() -> Self {
        Self::from_rows2([[c(0., 0.), c(0., -1.)], [c(0., 1.), c(0., 0.)]])
    }

    pub fn pauli_z() -> Self {
        Self::from_rows2([[c(1., 0.), c(0., 0.)], [c(0., 0.), c(-1., 0.)]])
    }

    pub fn hadamard() -> Self {
        let h = FRAC_1_SQRT_2;
        Self::from_rows2([[c(h, 0.), c(h, 0.)], [c(h, 0.), c(-h, 0.)]])
    }

    fn from_rows2(rows: [[C64; 2]; 2]) -> Self {
        Self::unitary_unchecked(CMatrix::from_fn(2, 2, |i, j| rows[i][j]))
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn into_matrix(self) -> CMatrix {
        self.matrix
    }

    pub fn claims_unitary(&self) -> bool {
        self.claims_unitary
    }

    /// Max-norm of `U†U − 𝟙`.
    pub fn unitarity_deviation(&self) -> f64 {
        deviation_from_unitary(&self.matrix)
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        is_unitary(self, tol)
    }

    pub fn adjoint(&self) -> Operator {
        Operator {
            matrix: self.matrix.adjoint(),
            claims_unitary: self.claims_unitary,
        }
    }

    /// Matrix product `self · rhs` (`rhs` acts first).
    pub fn compose(&self, rhs: &Operator) -> Result<Operator> {
        if self.dim() != rhs.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                actual: rhs.dim(),
            });
        }
        Ok(Operator {
            matrix: &self.matrix * &rhs.matrix,
            claims_unitary: self.claims_unitary && rhs.claims_unitary,
        })
    }

    pub fn tensor(&self, rhs: &Operator) -> Operator {
        tensor(self, rhs)
    }

    /// Direct sum `self ⊕ rhs` (block diagonal, `self` in the upper block).
    pub fn direct_sum(&self, rhs: &Operator) -> Operator {
        let (n, m) = (self.dim(), rhs.dim());
        let mut out = CMatrix::zeros(n + m, n + m);
        out.view_mut((0, 0), (n, n)).copy_from(&self.matrix);
        out.view_mut((n, n), (m, m)).copy_from(&rhs.matrix);
        Operator {
            matrix: out,
            claims_unitary: self.claims_unitary && rhs.claims_unitary,
        }
    }
}

/// Kronecker product with `a` as the slower-varying factor.
pub fn tensor(a: &Operator, b: &Operator) -> Operator {
    Operator {
        matrix: a.matrix.kronecker(&b.matrix),
        claims_unitary: a.claims_unitary && b.claims_unitary,
    }
}

/// True iff the max-norm of `U†U − 𝟙` is at most `tol`.
pub fn is_unitary(op: &Operator, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    op.unitarity_deviation() <= tol
}

fn deviation_from_unitary(m: &CMatrix) -> f64 {
    let n = m.nrows();
    max_abs(&(m.adjoint() * m - CMatrix::identity(n, n)))
}

fn square(m: &CMatrix) -> Result<()> {
    if !m.is_square() || m.nrows() == 0 {
        return Err(Error::DimensionMismatch {
            expected: m.nrows(),
            actual: m.ncols(),
        });
    }
    Ok(())
}

/// Row-major list of rows of `[re, im]` pairs.
#[derive(Serialize, Deserialize)]
struct OperatorRepr {
    rows: Vec<Vec<[f64; 2]>>,
    unitary: bool,
}

impl Serialize for Operator {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let rows = self
            .matrix
            .row_iter()
            .map(|r| r.iter().map(|z| [z.re, z.im]).collect())
            .collect();
        OperatorRepr {
            rows,
            unitary: self.claims_unitary,
        }
        .serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Operator {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = OperatorRepr::deserialize(deserializer)?;
        let n = repr.rows.len();
        if n == 0 || repr.rows.iter().any(|r| r.len() != n) {
            return Err(D::Error::custom("operator rows must form a square matrix"));
        }
        let m = CMatrix::from_fn(n, n, |i, j| c(repr.rows[i][j][0], repr.rows[i][j][1]));
        if repr.unitary {
            Operator::unitary(m).map_err(D::Error::custom)
        } else {
            Operator::general(m).map_err(D::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{haar_unitary, max_abs_diff};
    use crate::rng::seeded_rng;

    #[test]
    fn identity_tensor_identity() {
        let i4 = tensor(&Operator::identity(2), &Operator::identity(2));
        assert_eq!(i4.matrix(), &CMatrix::identity(4, 4));
        assert!(i4.claims_unitary());
    }

    #[test]
    fn x_tensor_identity_flips_first_index() {
        let m = tensor(&Operator::pauli_x(), &Operator::identity(2));
        // |a b> -> |(1-a) b>
        for a in 0..2 {
            for b in 0..2 {
                let col = 2 * a + b;
                let row = 2 * (1 - a) + b;
                for r in 0..4 {
                    let want = if r == row { 1.0 } else { 0.0 };
                    assert_eq!(m.matrix()[(r, col)], c(want, 0.0));
                }
            }
        }
    }

    #[test]
    fn kronecker_matches_elementwise_oracle() {
        let a = Operator::hadamard();
        let b = Operator::pauli_z();
        let k = tensor(&a, &b);
        for i in 0..2 {
            for j in 0..2 {
                for p in 0..2 {
                    for q in 0..2 {
                        let want = a.matrix()[(i, j)] * b.matrix()[(p, q)];
                        assert_eq!(k.matrix()[(2 * i + p, 2 * j + q)], want);
                    }
                }
            }
        }
    }

    #[test]
    fn unitarity_checks() {
        assert!(is_unitary(&Operator::identity(3), 1e-10));
        let d = Operator::general(CMatrix::from_diagonal(&nalgebra::DVector::from_vec(vec![
            c(1., 0.),
            c(2., 0.),
        ])))
        .unwrap();
        assert!(!is_unitary(&d, 1e-10));
        assert!(Operator::unitary(d.into_matrix()).is_err());

        let mut rng = seeded_rng(3);
        let u = haar_unitary(4, &mut rng).unwrap();
        let v = haar_unitary(4, &mut rng).unwrap();
        assert!(is_unitary(&u.compose(&v).unwrap(), 1e-10));
    }

    #[test]
    fn compose_rejects_mismatch() {
        assert!(Operator::identity(2)
            .compose(&Operator::identity(3))
            .is_err());
    }

    #[test]
    fn serde_preserves_entries() {
        let mut rng = seeded_rng(9);
        let u = haar_unitary(3, &mut rng).unwrap();
        let text = serde_json::to_string(&u).unwrap();
        let back: Operator = serde_json::from_str(&text).unwrap();
        assert_eq!(max_abs_diff(u.matrix(), back.matrix()), 0.0);
    }
}
