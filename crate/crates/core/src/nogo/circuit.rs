use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, HilbertSpace, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TargetKind {
    /// `A · (𝟙 ⊗ U) · B` against `𝟙_d ⊕ U`.
    CtrlU,
    /// `C · (𝟙 ⊗ U_g) · B · (𝟙 ⊗ U_f) · A` against `U_gU_f ⊕ U_fU_g`.
    Switch,
}

impl TargetKind {
    /// Number of fixed gates in the circuit.
    pub fn slot_count(self) -> usize {
        match self {
            TargetKind::CtrlU => 2,
            TargetKind::Switch => 3,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            TargetKind::CtrlU => "ctrl-u",
            TargetKind::Switch => "switch",
        }
    }
}

impl fmt::Display for TargetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TargetKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "ctrl-u" => Ok(TargetKind::CtrlU),
            "switch" => Ok(TargetKind::Switch),
            other => Err(Error::InvalidConfig(format!(
                "unknown target kind `{other}`"
            ))),
        }
    }
}

/// Ancilla and system dimensions; the control is always a qubit.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CircuitDims {
    pub ancilla: usize,
    pub control: usize,
    pub system: usize,
}

impl CircuitDims {
    pub fn new(ancilla: usize, system: usize) -> Result<Self> {
        if ancilla == 0 || system == 0 {
            return Err(Error::InvalidConfig("dimensions must be positive".into()));
        }
        Ok(Self {
            ancilla,
            control: 2,
            system,
        })
    }

    /// Dimension of control ⊗ system.
    pub fn logical(&self) -> usize {
        self.control * self.system
    }

    /// Dimension of ancilla ⊗ control ⊗ system.
    pub fn full(&self) -> usize {
        self.ancilla * self.logical()
    }

    pub fn space(&self) -> HilbertSpace {
        HilbertSpace::new([("a", self.ancilla), ("c", self.control), ("s", self.system)])
            .expect("positive dims")
    }
}

/// Fixed gates of a circuit, each `exp(iH)` with `H` Hermitian on the full
/// space and read from `full²` consecutive real parameters.
#[derive(Clone, Debug, PartialEq)]
pub struct ParamCircuit {
    kind: TargetKind,
    dims: CircuitDims,
    params: Vec<f64>,
}

impl ParamCircuit {
    pub fn new(kind: TargetKind, dims: CircuitDims, params: Vec<f64>) -> Result<Self> {
        let want = Self::param_count(kind, dims);
        if params.len() != want {
            return Err(Error::DimensionMismatch {
                expected: want,
                actual: params.len(),
            });
        }
        Ok(Self { kind, dims, params })
    }

    /// All slots equal to the identity.
    pub fn trivial(kind: TargetKind, dims: CircuitDims) -> Self {
        Self {
            kind,
            dims,
            params: vec![0.0; Self::param_count(kind, dims)],
        }
    }

    pub fn param_count(kind: TargetKind, dims: CircuitDims) -> usize {
        kind.slot_count() * dims.full() * dims.full()
    }

    pub fn kind(&self) -> TargetKind {
        self.kind
    }

    pub fn dims(&self) -> CircuitDims {
        self.dims
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Slot unitaries in order `[A, B]` or `[A, B, C]`.
    pub fn slot_unitaries(&self) -> Vec<CMatrix> {
        let n = self.dims.full();
        self.params
            .chunks(n * n)
            .map(|chunk| hermitian_exp(&hermitian_from_params(chunk, n)))
            .collect()
    }
}

/// Hermitian matrix from `n²` reals: the diagonal first, then real and
/// imaginary parts of the strict upper triangle in row order.
pub(crate) fn hermitian_from_params(p: &[f64], n: usize) -> CMatrix {
    debug_assert_eq!(p.len(), n * n);
    let mut h = CMatrix::zeros(n, n);
    for j in 0..n {
        h[(j, j)] = C64::new(p[j], 0.0);
    }
    let mut k = n;
    for i in 0..n {
        for j in i + 1..n {
            let z = C64::new(p[k], p[k + 1]);
            h[(i, j)] = z;
            h[(j, i)] = z.conj();
            k += 2;
        }
    }
    h
}

/// `exp(iH)` through the eigendecomposition of Hermitian `H`.
pub fn hermitian_exp(h: &CMatrix) -> CMatrix {
    let eig = h.clone().symmetric_eigen();
    let v = &eig.eigenvectors;
    let mut scaled = v.clone();
    for (j, &lambda) in eig.eigenvalues.iter().enumerate() {
        let phase = C64::from_polar(1.0, lambda);
        for x in scaled.column_mut(j).iter_mut() {
            *x *= phase;
        }
    }
    scaled * v.adjoint()
}
