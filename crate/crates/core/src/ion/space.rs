use crate::error::{Error, Result};
use crate::hilbert::{CVector, HilbertSpace, StateVector, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Level {
    G = 0,
    E = 1,
    GPrime = 2,
    EPrime = 3,
}

impl Level {
    pub const ALL: [Level; 4] = [Level::G, Level::E, Level::GPrime, Level::EPrime];

    pub fn index(self) -> usize {
        self as usize
    }
}

/// Two four-level ions and one vibrational mode truncated at `fock_cutoff`
/// phonons (occupations `0..fock_cutoff`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TrapSpace {
    fock_cutoff: usize,
}

impl Default for TrapSpace {
    /// Cutoff 3: the protocols only use `n ∈ {0, 1}`, the extra level catches
    /// leakage.
    fn default() -> Self {
        Self { fock_cutoff: 3 }
    }
}

impl TrapSpace {
    pub const LEVELS: usize = 4;
    pub const ION1: &'static str = "ion1";
    pub const ION2: &'static str = "ion2";
    pub const MODE: &'static str = "mode";

    pub fn new(fock_cutoff: usize) -> Result<Self> {
        if fock_cutoff < 2 {
            return Err(Error::InvalidSpace(format!(
                "fock cutoff must be at least 2, got {fock_cutoff}"
            )));
        }
        Ok(Self { fock_cutoff })
    }

    pub fn fock_cutoff(&self) -> usize {
        self.fock_cutoff
    }

    pub fn total_dim(&self) -> usize {
        Self::LEVELS * Self::LEVELS * self.fock_cutoff
    }

    pub fn hilbert(&self) -> HilbertSpace {
        HilbertSpace::new([
            (Self::ION1, Self::LEVELS),
            (Self::ION2, Self::LEVELS),
            (Self::MODE, self.fock_cutoff),
        ])
        .expect("static trap space")
    }

    pub fn index(&self, ion1: Level, ion2: Level, n: usize) -> usize {
        debug_assert!(n < self.fock_cutoff);
        (ion1.index() * Self::LEVELS + ion2.index()) * self.fock_cutoff + n
    }

    /// Index with `level` on ion `ion` (1 or 2) and `other` on the other ion.
    pub(crate) fn index_on(&self, ion: u8, level: Level, other: Level, n: usize) -> usize {
        match ion {
            1 => self.index(level, other, n),
            _ => self.index(other, level, n),
        }
    }

    /// Product state `|ion1⟩|ion2⟩|n⟩` from amplitudes over the four levels.
    pub fn product_state(&self, ion1: [C64; 4], ion2: [C64; 4], n: usize) -> Result<StateVector> {
        if n >= self.fock_cutoff {
            return Err(Error::DimensionMismatch {
                expected: self.fock_cutoff,
                actual: n,
            });
        }
        let mut amps = CVector::zeros(self.total_dim());
        for l1 in Level::ALL {
            for l2 in Level::ALL {
                amps[self.index(l1, l2, n)] = ion1[l1.index()] * ion2[l2.index()];
            }
        }
        StateVector::new(self.hilbert(), amps)
    }

    /// Zero-padded four-level amplitudes from a qubit `a|g⟩ + b|e⟩`.
    pub fn qubit(a: C64, b: C64) -> [C64; 4] {
        let z = C64::new(0.0, 0.0);
        [a, b, z, z]
    }

    /// Zero-padded amplitudes `a|g′⟩ + b|e′⟩`.
    pub fn primed_qubit(a: C64, b: C64) -> [C64; 4] {
        let z = C64::new(0.0, 0.0);
        [z, z, a, b]
    }
}
