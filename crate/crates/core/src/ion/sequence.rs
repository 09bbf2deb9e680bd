use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::pulse::{pulse_unitary, HidingPulse, Pulse, SigmaXPulse};
use super::space::TrapSpace;
use crate::bindings::Bindings;
use crate::error::{Error, Result};
use crate::hilbert::{CVector, Operator, StateVector, C64, DEFAULT_TOL};

/// Ordered pulse program. Serialized as a bare JSON array of pulses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<Pulse>", into = "Vec<Pulse>")]
pub struct PulseSequence {
    pulses: Vec<Pulse>,
}

/// How an unknown operation is used by a sequence.
///
/// Each slot corresponds to one laser pulse sent by whoever holds the
/// unknown operation; a mirror may send it back through the ion, so one
/// sent pulse can interact several times.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SlotUsage {
    pub pulses_sent: usize,
    pub interactions: usize,
}

impl TryFrom<Vec<Pulse>> for PulseSequence {
    type Error = Error;

    fn try_from(pulses: Vec<Pulse>) -> Result<Self> {
        Self::new(pulses)
    }
}

impl From<PulseSequence> for Vec<Pulse> {
    fn from(seq: PulseSequence) -> Self {
        seq.pulses
    }
}

impl PulseSequence {
    pub fn new(pulses: Vec<Pulse>) -> Result<Self> {
        for (i, p) in pulses.iter().enumerate() {
            p.validate()
                .map_err(|e| Error::InvalidPulse(format!("pulse {i}: {e}")))?;
        }
        Ok(Self { pulses })
    }

    pub fn pulses(&self) -> &[Pulse] {
        &self.pulses
    }

    pub fn len(&self) -> usize {
        self.pulses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pulses.is_empty()
    }

    pub fn slot_usage(&self) -> BTreeMap<String, SlotUsage> {
        let mut out: BTreeMap<String, SlotUsage> = BTreeMap::new();
        for slot in self.pulses.iter().filter_map(Pulse::slot) {
            out.entry(slot.to_string())
                .or_insert(SlotUsage {
                    pulses_sent: 1,
                    interactions: 0,
                })
                .interactions += 1;
        }
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("sequence serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Applies the pulses in order. The trace holds the state after each pulse.
pub fn run_sequence(
    seq: &PulseSequence,
    space: &TrapSpace,
    init: &StateVector,
    bindings: &Bindings,
) -> Result<(StateVector, Vec<StateVector>)> {
    if init.space() != &space.hilbert() {
        return Err(Error::SpaceMismatch);
    }
    let mut state = init.clone();
    let mut trace = Vec::with_capacity(seq.len());
    for p in seq.pulses() {
        state = state.apply(&pulse_unitary(p, space, bindings)?)?;
        trace.push(state.clone());
    }
    let norm = state.norm();
    if (norm - 1.0).abs() > DEFAULT_TOL {
        return Err(Error::NotNormalized(norm));
    }
    Ok((state, trace))
}

const CONTROL: u8 = 1;
const TARGET: u8 = 2;

fn swap() -> Pulse {
    Pulse::SidebandSwap { ion: CONTROL }
}

fn hide() -> [Pulse; 2] {
    [
        Pulse::Hiding {
            ion: TARGET,
            which: HidingPulse::H1,
        },
        Pulse::Hiding {
            ion: TARGET,
            which: HidingPulse::H2,
        },
    ]
}

fn flip() -> [Pulse; 2] {
    [
        Pulse::SigmaX {
            ion: TARGET,
            which: SigmaXPulse::Sg,
        },
        Pulse::SigmaX {
            ion: TARGET,
            which: SigmaXPulse::Se,
        },
    ]
}

fn carrier(slot: &str) -> Pulse {
    Pulse::Carrier {
        ion: TARGET,
        slot: slot.into(),
    }
}

/// Controlled-`U`: move the control into the mode, hide the `n = 1` branch of
/// ion 2 in the auxiliary levels, fire `U`, then undo both steps.
pub fn seq_ctrl_u() -> PulseSequence {
    let mut p = vec![swap()];
    p.extend(hide());
    p.push(carrier("U"));
    p.extend(hide());
    p.push(swap());
    PulseSequence::new(p).expect("static sequence")
}

/// Controlled switch of `Uf` and `Ug`, each sent once and reflected back
/// through ion 2 by a mirror.
pub fn seq_ctrl_switch() -> PulseSequence {
    let mut p = vec![swap()];
    p.extend(hide());
    p.push(carrier("Ug"));
    p.extend(flip());
    p.push(carrier("Uf"));
    p.push(carrier("Ug"));
    p.extend(flip());
    p.push(carrier("Uf"));
    p.extend(hide());
    p.push(swap());
    PulseSequence::new(p).expect("static sequence")
}

/// True iff the population with one or more phonons is at most `tol`.
pub fn is_in_ground_mode(state: &StateVector, tol: f64) -> bool {
    assert!(tol > 0.0, "tolerance must be positive");
    excited(state) <= tol
}

fn excited(state: &StateVector) -> f64 {
    let Ok(dim) = state.space().dim_of(TrapSpace::MODE) else {
        return f64::INFINITY;
    };
    (1..dim)
        .map(|n| state.population(TrapSpace::MODE, n).unwrap_or(0.0))
        .sum()
}

fn two_branch(
    space: &TrapSpace,
    alpha: C64,
    beta: C64,
    g_branch: &CVector,
    e_branch: &CVector,
) -> Result<StateVector> {
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let g = space.product_state(
        TrapSpace::qubit(one, zero),
        TrapSpace::qubit(g_branch[0], g_branch[1]),
        0,
    );
    let e = space.product_state(
        TrapSpace::qubit(zero, one),
        TrapSpace::qubit(e_branch[0], e_branch[1]),
        0,
    );
    StateVector::new(space.hilbert(), g?.amps() * alpha + e?.amps() * beta)
}

/// `(α|g⟩₁|ψ⟩₂ + β|e⟩₁U|ψ⟩₂)|0⟩` for a qubit state `psi`.
pub fn ctrl_u_target(
    space: &TrapSpace,
    alpha: C64,
    beta: C64,
    psi: &StateVector,
    u: &Operator,
) -> Result<StateVector> {
    two_branch(space, alpha, beta, psi.amps(), psi.apply(u)?.amps())
}

/// `(α|g⟩₁U_gU_f|ψ⟩₂ + β|e⟩₁U_fU_g|ψ⟩₂)|0⟩`.
pub fn ctrl_switch_target(
    space: &TrapSpace,
    alpha: C64,
    beta: C64,
    psi: &StateVector,
    uf: &Operator,
    ug: &Operator,
) -> Result<StateVector> {
    let gf = psi.apply(uf)?.apply(ug)?;
    let fg = psi.apply(ug)?.apply(uf)?;
    two_branch(space, alpha, beta, gf.amps(), fg.amps())
}
