use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hilbert::{CVector, HilbertSpace, StateVector, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Polarization {
    H = 0,
    V = 1,
}

impl Polarization {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn flipped(self) -> Self {
        match self {
            Polarization::H => Polarization::V,
            Polarization::V => Polarization::H,
        }
    }
}

/// Path labels, a polarization qubit, and an internal degree of freedom of
/// dimension `internal_dim`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhotonicSpace {
    paths: Vec<String>,
    internal_dim: usize,
}

impl PhotonicSpace {
    pub const PATH: &'static str = "path";
    pub const POL: &'static str = "pol";
    pub const INTERNAL: &'static str = "internal";

    pub fn new<S: Into<String>>(
        paths: impl IntoIterator<Item = S>,
        internal_dim: usize,
    ) -> Result<Self> {
        let space = Self {
            paths: paths.into_iter().map(Into::into).collect(),
            internal_dim,
        };
        space.validate()?;
        Ok(space)
    }

    pub(crate) fn validate(&self) -> Result<()> {
        if self.paths.is_empty() {
            return Err(Error::InvalidNetwork("no paths".into()));
        }
        if self.internal_dim == 0 {
            return Err(Error::InvalidNetwork(
                "internal_dim must be positive".into(),
            ));
        }
        for (i, p) in self.paths.iter().enumerate() {
            if self.paths[..i].contains(p) {
                return Err(Error::InvalidNetwork(format!("duplicate path `{p}`")));
            }
        }
        Ok(())
    }

    pub fn paths(&self) -> &[String] {
        &self.paths
    }

    pub fn internal_dim(&self) -> usize {
        self.internal_dim
    }

    /// Dimension of the single-photon sector, `|paths| · 2 · d`.
    pub fn sector_dim(&self) -> usize {
        self.paths.len() * 2 * self.internal_dim
    }

    pub fn path_index(&self, label: &str) -> Result<usize> {
        self.paths
            .iter()
            .position(|p| p == label)
            .ok_or_else(|| Error::InvalidNetwork(format!("unknown path `{label}`")))
    }

    pub fn hilbert(&self) -> HilbertSpace {
        HilbertSpace::new([
            (Self::PATH, self.paths.len()),
            (Self::POL, 2),
            (Self::INTERNAL, self.internal_dim),
        ])
        .expect("validated photonic space")
    }

    pub fn internal_space(&self) -> HilbertSpace {
        HilbertSpace::single(Self::INTERNAL, self.internal_dim).expect("validated photonic space")
    }

    /// Flat index of `|path, pol, k⟩`.
    pub fn index(&self, path: usize, pol: Polarization, k: usize) -> usize {
        (path * 2 + pol.index()) * self.internal_dim + k
    }

    /// Basis indices of the `(path, ·, ·)` block, polarization-major.
    pub fn path_block(&self, path: usize) -> Vec<usize> {
        let start = path * 2 * self.internal_dim;
        (start..start + 2 * self.internal_dim).collect()
    }

    /// `Σ_pol |path, pol⟩ ⊗ |internal_pol⟩` with arbitrary (unnormalized)
    /// internal components; the result must have unit norm.
    pub fn state_on_path(&self, path: &str, h: &CVector, v: &CVector) -> Result<StateVector> {
        let p = self.path_index(path)?;
        let d = self.internal_dim;
        if h.len() != d || v.len() != d {
            return Err(Error::DimensionMismatch {
                expected: d,
                actual: h.len().max(v.len()),
            });
        }
        let mut amps = CVector::zeros(self.sector_dim());
        for k in 0..d {
            amps[self.index(p, Polarization::H, k)] = h[k];
            amps[self.index(p, Polarization::V, k)] = v[k];
        }
        StateVector::new(self.hilbert(), amps)
    }

    /// `(α|H⟩ + β|V⟩)|ψ⟩` on `path`.
    pub fn control_input(
        &self,
        path: &str,
        alpha: C64,
        beta: C64,
        psi: &StateVector,
    ) -> Result<StateVector> {
        let a = psi.amps();
        self.state_on_path(path, &(a * alpha), &(a * beta))
    }
}
