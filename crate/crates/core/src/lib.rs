//! Simulation toolkit for adding quantum control to unknown operations.
//!
//! The crate models two physical platforms on which a black-box unitary can be
//! conditioned on a control qubit, or on which the order of two black-box
//! unitaries can be put in superposition:
//!
//! * [`photonic`]: single-photon interferometers built from polarizing beam
//!   splitters, half-wave plates and device slots, including the
//!   "big brother" device that performs a non-demolition photon-number
//!   measurement.
//! * [`ion`]: two trapped ions sharing a vibrational mode, driven by ideal
//!   sideband, hiding, carrier and auxiliary-flip pulses.
//!
//! [`nogo`] contains the numerical counterpart: fixed circuits with a single
//! subsystem insertion of the unknown gate are optimized and shown to fall
//! short of the controlled targets.
//!
//! All linear algebra lives in [`hilbert`]. Flattened amplitude vectors use
//! the convention that the leftmost tensor factor varies slowest.

pub mod bindings;
pub mod error;
pub mod hilbert;
pub mod ion;
pub mod nogo;
pub mod photonic;
pub mod rng;

pub use bindings::Bindings;
pub use error::{Error, Result};
pub use hilbert::{
    CMatrix, CVector, DensityMatrix, HilbertSpace, Operator, StateVector, SubspaceEmbedding, C64,
    DEFAULT_TOL,
};
pub use rng::{seeded_rng, SimRng};
