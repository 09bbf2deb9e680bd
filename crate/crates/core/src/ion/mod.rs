//! Two trapped ions sharing one vibrational mode, driven by ideal pulses.
//!
//! Each ion has the qubit levels `g`, `e` and the auxiliary levels `g′`,
//! `e′`. Ion 1 holds the control qubit, ion 2 the system the unknown carrier
//! pulses act on. Every two-level transition is modeled as the real
//! symmetric exchange `|a⟩⟨b| + |b⟩⟨a|` with identity elsewhere; physical
//! pulse phases are absorbed into this convention.

mod pulse;
mod sequence;
mod space;

pub use pulse::{pulse_unitary, HidingPulse, Pulse, SigmaXPulse};
pub use sequence::{
    ctrl_switch_target, ctrl_u_target, is_in_ground_mode, run_sequence, seq_ctrl_switch,
    seq_ctrl_u, PulseSequence, SlotUsage,
};
pub use space::{Level, TrapSpace};
