use rand::Rng;
use serde::{Deserialize, Serialize};

use super::circuit::{CircuitDims, ParamCircuit, TargetKind};
use crate::error::{Error, Result};
use crate::hilbert::{haar_unitary, max_abs_diff, CMatrix, Operator, C64};

/// One draw of the unknown operation(s).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Oracle {
    Single(Operator),
    Pair { f: Operator, g: Operator },
}

impl Oracle {
    pub fn dim(&self) -> usize {
        match self {
            Oracle::Single(u) => u.dim(),
            Oracle::Pair { f, .. } => f.dim(),
        }
    }

    fn check(&self, kind: TargetKind, d: usize) -> Result<()> {
        let ops: Vec<&Operator> = match (kind, self) {
            (TargetKind::CtrlU, Oracle::Single(u)) => vec![u],
            (TargetKind::Switch, Oracle::Pair { f, g }) => vec![f, g],
            _ => {
                return Err(Error::InvalidConfig(format!(
                    "oracle shape does not match target {kind}"
                )))
            }
        };
        for u in ops {
            if u.dim() != d {
                return Err(Error::DimensionMismatch {
                    expected: d,
                    actual: u.dim(),
                });
            }
        }
        Ok(())
    }
}

/// How the circuit gets access to the oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum OracleInsertion {
    /// `𝟙_ac ⊗ U`: the oracle acts on the system wire.
    #[default]
    Subsystem,
    /// The oracle acts on direct-sum blocks of control ⊗ system: `𝟙_d ⊕ U`
    /// for controlled-`U`; `U_f ⊕ U_g` then `U_g ⊕ U_f` for the switch.
    Subspace,
}

/// Haar-random oracles of the shape required by `kind`.
pub fn sample_oracles<R: Rng + ?Sized>(
    kind: TargetKind,
    d: usize,
    count: usize,
    rng: &mut R,
) -> Result<Vec<Oracle>> {
    (0..count)
        .map(|_| {
            Ok(match kind {
                TargetKind::CtrlU => Oracle::Single(haar_unitary(d, rng)?),
                TargetKind::Switch => Oracle::Pair {
                    f: haar_unitary(d, rng)?,
                    g: haar_unitary(d, rng)?,
                },
            })
        })
        .collect()
}

/// The ideal operation on control ⊗ system.
pub fn target_unitary(kind: TargetKind, oracle: &Oracle) -> Result<Operator> {
    match (kind, oracle) {
        (TargetKind::CtrlU, Oracle::Single(u)) => Ok(Operator::identity(u.dim()).direct_sum(u)),
        (TargetKind::Switch, Oracle::Pair { f, g }) => {
            let gf = g.compose(f)?;
            let fg = f.compose(g)?;
            Ok(gf.direct_sum(&fg))
        }
        _ => Err(Error::InvalidConfig(format!(
            "oracle shape does not match target {kind}"
        ))),
    }
}

/// Choi matrix `J = Σᵢⱼ |i⟩⟨j| ⊗ E(|i⟩⟨j|)` of a channel on a
/// `input_dim`-dimensional space; `Tr J = input_dim` for trace-preserving `E`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChoiMatrix {
    matrix: CMatrix,
    input_dim: usize,
}

impl ChoiMatrix {
    /// From Kraus operators `Kₖ`.
    pub fn from_kraus(kraus: &[CMatrix]) -> Self {
        let d = kraus[0].nrows();
        let mut matrix = CMatrix::zeros(d * d, d * d);
        for k in kraus {
            let v = vectorize(k);
            matrix += &v * v.adjoint();
        }
        Self {
            matrix,
            input_dim: d,
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn input_dim(&self) -> usize {
        self.input_dim
    }

    pub fn trace(&self) -> f64 {
        self.matrix.trace().re
    }

    /// Hermitian, positive semidefinite and trace preserving within `tol`.
    pub fn is_cptp(&self, tol: f64) -> bool {
        let d = self.input_dim;
        if max_abs_diff(&self.matrix, &self.matrix.adjoint()) > tol {
            return false;
        }
        if crate::hilbert::density_min_eigenvalue(&self.matrix) < -tol {
            return false;
        }
        // Tracing out the output must leave 𝟙 on the input.
        let mut reduced = CMatrix::zeros(d, d);
        for i in 0..d {
            for j in 0..d {
                reduced[(i, j)] = (0..d).map(|p| self.matrix[(i * d + p, j * d + p)]).sum();
            }
        }
        max_abs_diff(&reduced, &CMatrix::identity(d, d)) <= tol
    }

    /// `⟨⟨V|J|V⟩⟩ / d²`, equal to one iff the channel is conjugation by `V`.
    pub fn process_fidelity(&self, target: &Operator) -> Result<f64> {
        if target.dim() != self.input_dim {
            return Err(Error::DimensionMismatch {
                expected: self.input_dim,
                actual: target.dim(),
            });
        }
        let v = vectorize(target.matrix());
        let d = self.input_dim as f64;
        Ok(v.dotc(&(&self.matrix * &v)).re / (d * d))
    }
}

/// Column-stacked vector with the input index slowest: `v[i·d + p] = K[p, i]`.
fn vectorize(k: &CMatrix) -> nalgebra::DVector<C64> {
    let d = k.nrows();
    nalgebra::DVector::from_fn(d * d, |r, _| k[(r % d, r / d)])
}

/// `(𝟙 ⊗ U) · x` where `U` acts on the trailing `u.nrows()` index of the rows
/// of `x`.
fn apply_system(u: &CMatrix, x: &CMatrix) -> CMatrix {
    let s = u.nrows();
    let mut out = CMatrix::zeros(x.nrows(), x.ncols());
    for b in 0..x.nrows() / s {
        let block = u * x.rows(b * s, s);
        out.rows_mut(b * s, s).copy_from(&block);
    }
    out
}

/// `(𝟙_a ⊗ (P ⊕ Q)) · x` for `d × d` blocks `P`, `Q` on the control.
fn apply_direct_sum(p: &CMatrix, q: &CMatrix, x: &CMatrix) -> CMatrix {
    let d = p.nrows();
    let mut out = CMatrix::zeros(x.nrows(), x.ncols());
    for b in 0..x.nrows() / (2 * d) {
        let base = b * 2 * d;
        out.rows_mut(base, d).copy_from(&(p * x.rows(base, d)));
        out.rows_mut(base + d, d)
            .copy_from(&(q * x.rows(base + d, d)));
    }
    out
}

/// Circuit applied to the ancilla-`|0⟩` input: the first `c·s` columns of
/// the full circuit matrix.
pub(crate) fn circuit_on_ancilla_zero(
    kind: TargetKind,
    dims: CircuitDims,
    slots: &[CMatrix],
    oracle: &Oracle,
    insertion: OracleInsertion,
) -> CMatrix {
    let logical = dims.logical();
    let eye = |n| CMatrix::identity(n, n);
    match (kind, oracle) {
        (TargetKind::CtrlU, Oracle::Single(u)) => {
            let x = slots[1].columns(0, logical).into_owned();
            let x = match insertion {
                OracleInsertion::Subsystem => apply_system(u.matrix(), &x),
                OracleInsertion::Subspace => apply_direct_sum(&eye(dims.system), u.matrix(), &x),
            };
            &slots[0] * x
        }
        (TargetKind::Switch, Oracle::Pair { f, g }) => {
            let (f, g) = (f.matrix(), g.matrix());
            let x = slots[0].columns(0, logical).into_owned();
            let x = match insertion {
                OracleInsertion::Subsystem => apply_system(f, &x),
                OracleInsertion::Subspace => apply_direct_sum(f, g, &x),
            };
            let x = &slots[1] * x;
            let x = match insertion {
                OracleInsertion::Subsystem => apply_system(g, &x),
                OracleInsertion::Subspace => apply_direct_sum(g, f, &x),
            };
            &slots[2] * x
        }
        _ => unreachable!("oracle shape checked by caller"),
    }
}

/// Kraus operators `⟨k|_a M |0⟩_a` of the channel realized on control ⊗
/// system.
pub fn realized_kraus(
    pc: &ParamCircuit,
    oracle: &Oracle,
    insertion: OracleInsertion,
) -> Result<Vec<CMatrix>> {
    let dims = pc.dims();
    oracle.check(pc.kind(), dims.system)?;
    let cols = circuit_on_ancilla_zero(pc.kind(), dims, &pc.slot_unitaries(), oracle, insertion);
    Ok(split_kraus(&cols, dims))
}

fn split_kraus(cols: &CMatrix, dims: CircuitDims) -> Vec<CMatrix> {
    let l = dims.logical();
    (0..dims.ancilla)
        .map(|k| cols.rows(k * l, l).into_owned())
        .collect()
}

/// Choi matrix of the channel on control ⊗ system realized by `pc` with the
/// oracle inserted on the system wire.
pub fn realized_channel(pc: &ParamCircuit, oracle: &Oracle) -> Result<ChoiMatrix> {
    realized_channel_with(pc, oracle, OracleInsertion::Subsystem)
}

pub fn realized_channel_with(
    pc: &ParamCircuit,
    oracle: &Oracle,
    insertion: OracleInsertion,
) -> Result<ChoiMatrix> {
    Ok(ChoiMatrix::from_kraus(&realized_kraus(
        pc, oracle, insertion,
    )?))
}

/// `Σₖ |Tr(V†Kₖ)|² / d²`, the process fidelity without forming the Choi
/// matrix.
pub fn process_fidelity_kraus(kraus: &[CMatrix], target: &CMatrix) -> f64 {
    let d = target.nrows() as f64;
    kraus.iter().map(|k| target.dotc(k).norm_sqr()).sum::<f64>() / (d * d)
}

/// Minimum process fidelity over `samples` with the oracle on the system
/// wire.
pub fn worst_case_fidelity(pc: &ParamCircuit, samples: &[Oracle]) -> Result<f64> {
    worst_case_fidelity_with(pc, samples, OracleInsertion::Subsystem)
}

pub fn worst_case_fidelity_with(
    pc: &ParamCircuit,
    samples: &[Oracle],
    insertion: OracleInsertion,
) -> Result<f64> {
    if samples.is_empty() {
        return Err(Error::InvalidConfig("no oracle samples".into()));
    }
    let slots = pc.slot_unitaries();
    let mut worst = f64::INFINITY;
    for oracle in samples {
        oracle.check(pc.kind(), pc.dims().system)?;
        let cols = circuit_on_ancilla_zero(pc.kind(), pc.dims(), &slots, oracle, insertion);
        let target = target_unitary(pc.kind(), oracle)?;
        let f = process_fidelity_kraus(&split_kraus(&cols, pc.dims()), target.matrix());
        worst = worst.min(f);
    }
    Ok(worst.clamp(0.0, 1.0))
}
