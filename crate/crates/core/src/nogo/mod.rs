//! Numerical check of the no-control and no-switch statements.
//!
//! A fixed circuit on ancilla ⊗ control ⊗ system may call the unknown gate
//! only as `𝟙 ⊗ U` on the system wire (once for controlled-`U`, once each
//! for `U_f` and `U_g` in the switch). The fixed gates are parametrized as
//! `exp(iH)` and optimized to maximize the worst-case process fidelity with
//! the controlled target over a fixed set of Haar-random oracles. The
//! ancilla starts in `|0⟩` and is traced out, so any final ancilla
//! operation is irrelevant.

mod channel;
mod circuit;
mod optimize;
mod sanity;

pub use channel::{
    process_fidelity_kraus, realized_channel, realized_channel_with, realized_kraus,
    sample_oracles, target_unitary, worst_case_fidelity, worst_case_fidelity_with, ChoiMatrix,
    Oracle, OracleInsertion,
};
pub use circuit::{hermitian_exp, CircuitDims, ParamCircuit, TargetKind};
pub use optimize::{
    nelder_mead_max, optimize, AscentMethod, Objective, OracleSampling, RestartRecord,
    SearchConfig, SearchReport, SimplexResult,
};
pub use sanity::{oracle_sanity, OracleSanity};
