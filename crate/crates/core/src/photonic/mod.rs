//! Single-photon interferometer simulation.
//!
//! The state space is the single-photon sector `path ⊗ polarization ⊗
//! internal`, where the internal factor (dimension `d`) is the system the
//! unknown devices act on and the polarization qubit is the control.
//! Polarizing beam splitters transmit `H` and reflect `V`.

mod element;
mod network;
mod presets;
mod propagate;
mod space;
mod two_photon;

pub use element::{element_unitary, Element};
pub use network::Network;
pub use presets::{
    ctrl_u_target, preset, preset_fig2, preset_fig2_bb, preset_fig5, preset_fig5_bb, switch_target,
    PresetId, INPUT_PATH,
};
pub use propagate::{network_unitary, propagate, propagate_sampled, SchemeOutcome};
pub use space::{PhotonicSpace, Polarization};
pub use two_photon::two_photon_product;
