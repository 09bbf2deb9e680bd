use super::{CMatrix, HilbertSpace, Operator};
use crate::error::{Error, Result};

/// How an operator on a small space is placed inside a larger one.
///
/// `Subsystem` is the tensor-factor placement `𝟙 ⊗ U ⊗ 𝟙` of circuit wires.
/// `DirectSumBlock` places `U` on a list of basis vectors and acts as the
/// identity on the complement, `𝟙 ⊕ U` up to basis ordering.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SubspaceEmbedding {
    Subsystem {
        slot: String,
    },
    DirectSumBlock {
        block_indices: Vec<usize>,
        total_dim: usize,
    },
}

impl SubspaceEmbedding {
    /// Embeds `u`; `space` is required for the subsystem variant.
    pub fn embed(&self, u: &Operator, space: Option<&HilbertSpace>) -> Result<Operator> {
        match self {
            SubspaceEmbedding::Subsystem { slot } => {
                let space = space.ok_or_else(|| {
                    Error::InvalidEmbedding("subsystem embedding needs a space".into())
                })?;
                subsystem_embed(u, space, slot)
            }
            SubspaceEmbedding::DirectSumBlock { .. } => subspace_embed(u, self),
        }
    }
}

/// `𝟙 ⊗ … ⊗ U ⊗ … ⊗ 𝟙` with `U` on factor `slot`.
pub fn subsystem_embed(u: &Operator, space: &HilbertSpace, slot: &str) -> Result<Operator> {
    let pos = space.position(slot)?;
    let slot_dim = space.factors()[pos].dim;
    if u.dim() != slot_dim {
        return Err(Error::DimensionMismatch {
            expected: slot_dim,
            actual: u.dim(),
        });
    }
    let before: usize = space.factors()[..pos].iter().map(|f| f.dim).product();
    let after: usize = space.factors()[pos + 1..].iter().map(|f| f.dim).product();
    let out = Operator::identity(before)
        .tensor(u)
        .tensor(&Operator::identity(after));
    Ok(out)
}

/// `U` on the listed basis indices (in listed order), identity elsewhere.
pub fn subspace_embed(u: &Operator, emb: &SubspaceEmbedding) -> Result<Operator> {
    let SubspaceEmbedding::DirectSumBlock {
        block_indices,
        total_dim,
    } = emb
    else {
        return Err(Error::InvalidEmbedding(
            "subspace_embed needs a direct-sum block".into(),
        ));
    };
    if block_indices.len() != u.dim() {
        return Err(Error::DimensionMismatch {
            expected: block_indices.len(),
            actual: u.dim(),
        });
    }
    for (k, &i) in block_indices.iter().enumerate() {
        if i >= *total_dim {
            return Err(Error::InvalidEmbedding(format!(
                "index {i} out of range for dim {total_dim}"
            )));
        }
        if block_indices[..k].contains(&i) {
            return Err(Error::InvalidEmbedding(format!("duplicate index {i}")));
        }
    }
    let mut m = CMatrix::identity(*total_dim, *total_dim);
    for &i in block_indices {
        m[(i, i)] = num_complex::Complex64::new(0.0, 0.0);
    }
    for (a, &i) in block_indices.iter().enumerate() {
        for (b, &j) in block_indices.iter().enumerate() {
            m[(i, j)] = u.matrix()[(a, b)];
        }
    }
    if u.claims_unitary() {
        Ok(Operator::unitary_unchecked(m))
    } else {
        Operator::general(m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{haar_state, haar_unitary, max_abs_diff, tensor, DensityMatrix, C64};
    use crate::rng::seeded_rng;

    fn block(idx: &[usize], total: usize) -> SubspaceEmbedding {
        SubspaceEmbedding::DirectSumBlock {
            block_indices: idx.to_vec(),
            total_dim: total,
        }
    }

    #[test]
    fn subsystem_embed_x_on_second_slot() {
        let space = HilbertSpace::new([("c", 2), ("s", 2)]).unwrap();
        let got = subsystem_embed(&Operator::pauli_x(), &space, "s").unwrap();
        let want = tensor(&Operator::identity(2), &Operator::pauli_x());
        assert_eq!(got, want);
    }

    #[test]
    fn identity_embeds_to_identity() {
        let space = HilbertSpace::new([("c", 2), ("s", 2), ("a", 3)]).unwrap();
        for slot in ["c", "s"] {
            let got = subsystem_embed(&Operator::identity(2), &space, slot).unwrap();
            assert_eq!(got.matrix(), &CMatrix::identity(12, 12));
        }
        let got = subspace_embed(&Operator::identity(2), &block(&[1, 4], 6)).unwrap();
        assert_eq!(got.matrix(), &CMatrix::identity(6, 6));
    }

    #[test]
    fn subsystem_embed_preserves_other_marginal() {
        let mut rng = seeded_rng(21);
        let space = HilbertSpace::new([("c", 2), ("s", 3)]).unwrap();
        let u = haar_unitary(2, &mut rng).unwrap();
        let c = haar_state(HilbertSpace::single("c", 2).unwrap(), &mut rng);
        let s = haar_state(HilbertSpace::single("s", 3).unwrap(), &mut rng);
        let psi = c.tensor(&s).unwrap();
        let out = psi
            .apply(&subsystem_embed(&u, &space, "c").unwrap())
            .unwrap();
        let before = DensityMatrix::from_pure(&psi)
            .partial_trace(&["s"])
            .unwrap();
        let after = DensityMatrix::from_pure(&out)
            .partial_trace(&["s"])
            .unwrap();
        assert!(max_abs_diff(before.matrix(), after.matrix()) < 1e-12);
    }

    #[test]
    fn subsystem_embed_errors() {
        let space = HilbertSpace::new([("c", 2), ("s", 3)]).unwrap();
        assert!(matches!(
            subsystem_embed(&Operator::identity(2), &space, "x"),
            Err(Error::UnknownFactor(_))
        ));
        assert!(matches!(
            subsystem_embed(&Operator::identity(2), &space, "s"),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn direct_sum_x_is_ctrl_x() {
        let got = subspace_embed(&Operator::pauli_x(), &block(&[2, 3], 4)).unwrap();
        let want = Operator::identity(2).direct_sum(&Operator::pauli_x());
        assert_eq!(got, want);
    }

    #[test]
    fn placement_matches_index_bookkeeping() {
        let mut rng = seeded_rng(8);
        let u = haar_unitary(2, &mut rng).unwrap();
        let got = subspace_embed(&u, &block(&[0, 2], 4)).unwrap();
        let zero = C64::new(0.0, 0.0);
        let one = C64::new(1.0, 0.0);
        let expect = |i: usize, j: usize| match (i, j) {
            (0, 0) => u.matrix()[(0, 0)],
            (0, 2) => u.matrix()[(0, 1)],
            (2, 0) => u.matrix()[(1, 0)],
            (2, 2) => u.matrix()[(1, 1)],
            (1, 1) | (3, 3) => one,
            _ => zero,
        };
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(got.matrix()[(i, j)], expect(i, j), "entry ({i},{j})");
            }
        }
    }

    #[test]
    fn subspace_embed_errors() {
        let u = Operator::identity(2);
        assert!(subspace_embed(&u, &block(&[0, 4], 4)).is_err());
        assert!(subspace_embed(&u, &block(&[1, 1], 4)).is_err());
        assert!(subspace_embed(&u, &block(&[1], 4)).is_err());
    }

    #[test]
    fn subsystem_equals_two_direct_sum_blocks() {
        let mut rng = seeded_rng(13);
        for d in 1..=4 {
            let u = haar_unitary(d, &mut rng).unwrap();
            let space = HilbertSpace::new([("c", 2), ("s", d)]).unwrap();
            let sub = subsystem_embed(&u, &space, "s").unwrap();
            let low: Vec<usize> = (0..d).collect();
            let high: Vec<usize> = (d..2 * d).collect();
            let composed = subspace_embed(&u, &block(&high, 2 * d))
                .unwrap()
                .compose(&subspace_embed(&u, &block(&low, 2 * d)).unwrap())
                .unwrap();
            assert!(max_abs_diff(sub.matrix(), composed.matrix()) < 1e-12);
        }
    }
}
