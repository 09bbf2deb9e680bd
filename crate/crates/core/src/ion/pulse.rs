use serde::{Deserialize, Serialize};

use super::space::{Level, TrapSpace};
use crate::bindings::Bindings;
use crate::error::{Error, Result};
use crate::hilbert::{CMatrix, Operator, C64};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum HidingPulse {
    /// `|g⟩|1⟩ ↔ |g′⟩|0⟩`
    H1,
    /// `|e⟩|1⟩ ↔ |e′⟩|0⟩`
    H2,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SigmaXPulse {
    /// `|g⟩ ↔ |g′⟩` in the vibrational ground state
    Sg,
    /// `|e⟩ ↔ |e′⟩` in the vibrational ground state
    Se,
}

/// Ideal pulse. Ions are numbered 1 and 2.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Pulse {
    /// Blue sideband `|g⟩|0⟩ ↔ |e⟩|1⟩`.
    SidebandSwap {
        ion: u8,
    },
    Hiding {
        ion: u8,
        which: HidingPulse,
    },
    /// The unknown unitary bound to `slot`, resonant with `g ↔ e` only when
    /// the mode is in its ground state.
    Carrier {
        ion: u8,
        slot: String,
    },
    SigmaX {
        ion: u8,
        which: SigmaXPulse,
    },
}

impl Pulse {
    pub fn ion(&self) -> u8 {
        match self {
            Pulse::SidebandSwap { ion }
            | Pulse::Hiding { ion, .. }
            | Pulse::Carrier { ion, .. }
            | Pulse::SigmaX { ion, .. } => *ion,
        }
    }

    pub fn slot(&self) -> Option<&str> {
        match self {
            Pulse::Carrier { slot, .. } => Some(slot),
            _ => None,
        }
    }

    pub(crate) fn validate(&self) -> Result<()> {
        match self.ion() {
            1 | 2 => Ok(()),
            other => Err(Error::InvalidPulse(format!("ion {other} does not exist"))),
        }
    }
}

/// Identity with the listed pairs of basis states exchanged.
fn exchange(dim: usize, pairs: &[(usize, usize)]) -> Operator {
    let mut m = CMatrix::identity(dim, dim);
    let zero = C64::new(0.0, 0.0);
    let one = C64::new(1.0, 0.0);
    for &(a, b) in pairs {
        m[(a, a)] = zero;
        m[(b, b)] = zero;
        m[(a, b)] = one;
        m[(b, a)] = one;
    }
    Operator::unitary_unchecked(m)
}

pub fn pulse_unitary(p: &Pulse, space: &TrapSpace, bindings: &Bindings) -> Result<Operator> {
    p.validate()?;
    let ion = p.ion();
    let dim = space.total_dim();
    let idx = |level, other, n| space.index_on(ion, level, other, n);
    match p {
        Pulse::SidebandSwap { .. } => {
            let pairs: Vec<_> = Level::ALL
                .iter()
                .map(|&o| (idx(Level::G, o, 0), idx(Level::E, o, 1)))
                .collect();
            Ok(exchange(dim, &pairs))
        }
        Pulse::Hiding { which, .. } => {
            let (bare, aux) = match which {
                HidingPulse::H1 => (Level::G, Level::GPrime),
                HidingPulse::H2 => (Level::E, Level::EPrime),
            };
            let pairs: Vec<_> = Level::ALL
                .iter()
                .map(|&o| (idx(bare, o, 1), idx(aux, o, 0)))
                .collect();
            Ok(exchange(dim, &pairs))
        }
        Pulse::SigmaX { which, .. } => {
            let (bare, aux) = match which {
                SigmaXPulse::Sg => (Level::G, Level::GPrime),
                SigmaXPulse::Se => (Level::E, Level::EPrime),
            };
            let pairs: Vec<_> = Level::ALL
                .iter()
                .map(|&o| (idx(bare, o, 0), idx(aux, o, 0)))
                .collect();
            Ok(exchange(dim, &pairs))
        }
        Pulse::Carrier { slot, .. } => {
            let u = bindings.unitary(slot, 2)?.matrix();
            let mut m = CMatrix::identity(dim, dim);
            for o in Level::ALL {
                let block = [idx(Level::G, o, 0), idx(Level::E, o, 0)];
                for (a, &i) in block.iter().enumerate() {
                    for (b, &j) in block.iter().enumerate() {
                        m[(i, j)] = u[(a, b)];
                    }
                }
            }
            Ok(Operator::unitary_unchecked(m))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hilbert::{fidelity_pure, haar_state, haar_unitary, is_unitary, max_abs_diff};
    use crate::rng::seeded_rng;
    use crate::HilbertSpace;

    fn all_pulses() -> Vec<Pulse> {
        let mut out = vec![];
        for ion in [1, 2] {
            out.push(Pulse::SidebandSwap { ion });
            out.push(Pulse::Hiding {
                ion,
                which: HidingPulse::H1,
            });
            out.push(Pulse::Hiding {
                ion,
                which: HidingPulse::H2,
            });
            out.push(Pulse::SigmaX {
                ion,
                which: SigmaXPulse::Sg,
            });
            out.push(Pulse::SigmaX {
                ion,
                which: SigmaXPulse::Se,
            });
            out.push(Pulse::Carrier {
                ion,
                slot: "U".into(),
            });
        }
        out
    }

    fn qubit_amps(rng: &mut crate::SimRng) -> (C64, C64) {
        let s = haar_state(HilbertSpace::single("q", 2).unwrap(), rng);
        (s.amps()[0], s.amps()[1])
    }

    #[test]
    fn every_pulse_is_unitary() {
        let mut rng = seeded_rng(0);
        let b = Bindings::new().with("U", haar_unitary(2, &mut rng).unwrap());
        for cutoff in [2, 3, 5] {
            let space = TrapSpace::new(cutoff).unwrap();
            for p in all_pulses() {
                let u = pulse_unitary(&p, &space, &b).unwrap();
                assert!(is_unitary(&u, 1e-12), "{p:?}");
            }
        }
    }

    #[test]
    fn exchanges_are_involutions() {
        let space = TrapSpace::default();
        let b = Bindings::new();
        for p in all_pulses().into_iter().filter(|p| p.slot().is_none()) {
            let u = pulse_unitary(&p, &space, &b).unwrap();
            let uu = u.compose(&u).unwrap();
            assert!(
                max_abs_diff(uu.matrix(), &CMatrix::identity(48, 48)) < 1e-12,
                "{p:?}"
            );
        }
    }

    #[test]
    fn sideband_moves_control_into_mode() {
        let mut rng = seeded_rng(1);
        let space = TrapSpace::default();
        let (a, b) = qubit_amps(&mut rng);
        let (p, q) = qubit_amps(&mut rng);
        let psi = TrapSpace::qubit(p, q);
        let input = space.product_state(TrapSpace::qubit(a, b), psi, 0).unwrap();
        let out = input
            .apply(
                &pulse_unitary(&Pulse::SidebandSwap { ion: 1 }, &space, &Bindings::new()).unwrap(),
            )
            .unwrap();
        // |e⟩₁|ψ⟩₂(α|1⟩ + β|0⟩)
        let e = TrapSpace::qubit(C64::new(0., 0.), C64::new(1., 0.));
        let one = space.product_state(e, psi, 1).unwrap();
        let zero = space.product_state(e, psi, 0).unwrap();
        let want =
            crate::StateVector::new(space.hilbert(), one.amps() * a + zero.amps() * b).unwrap();
        assert!((fidelity_pure(&out, &want).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn hiding_h1_transfers_population() {
        let space = TrapSpace::default();
        let h1 = pulse_unitary(
            &Pulse::Hiding {
                ion: 2,
                which: HidingPulse::H1,
            },
            &space,
            &Bindings::new(),
        )
        .unwrap();
        let one = C64::new(1., 0.);
        let zero = C64::new(0., 0.);
        let g = TrapSpace::qubit(one, zero);
        let gp = TrapSpace::primed_qubit(one, zero);
        let input = space.product_state(g, g, 1).unwrap();
        let want = space.product_state(g, gp, 0).unwrap();
        assert_eq!(input.apply(&h1).unwrap(), want);
    }

    #[test]
    fn carrier_is_inert_off_resonance() {
        let mut rng = seeded_rng(2);
        let space = TrapSpace::default();
        let b = Bindings::new().with("U", haar_unitary(2, &mut rng).unwrap());
        let carrier = pulse_unitary(
            &Pulse::Carrier {
                ion: 2,
                slot: "U".into(),
            },
            &space,
            &b,
        )
        .unwrap();
        let (p, q) = qubit_amps(&mut rng);
        let (x, y) = qubit_amps(&mut rng);
        for (ion2, n) in [
            (TrapSpace::qubit(p, q), 1),
            (TrapSpace::qubit(p, q), 2),
            (TrapSpace::primed_qubit(p, q), 0),
        ] {
            let s = space
                .product_state(TrapSpace::qubit(x, y), ion2, n)
                .unwrap();
            assert!(
                max_abs_diff(
                    &crate::CMatrix::from_column_slice(
                        48,
                        1,
                        s.apply(&carrier).unwrap().amps().as_slice()
                    ),
                    &crate::CMatrix::from_column_slice(48, 1, s.amps().as_slice())
                ) < 1e-15
            );
        }
    }

    #[test]
    fn carrier_commutes_with_hidden_generators() {
        let mut rng = seeded_rng(4);
        let space = TrapSpace::default();
        let b = Bindings::new().with("U", haar_unitary(2, &mut rng).unwrap());
        let carrier = pulse_unitary(
            &Pulse::Carrier {
                ion: 2,
                slot: "U".into(),
            },
            &space,
            &b,
        )
        .unwrap();
        let n = space.total_dim();
        // Matrix units |i⟩⟨j| supported on n ≥ 1 or on primed ion-2 levels.
        let hidden: Vec<usize> = (0..n)
            .filter(|&i| {
                let d = space.hilbert().digits(i);
                d[2] >= 1 || d[1] >= 2
            })
            .collect();
        for &i in &hidden {
            for &j in &hidden {
                let mut e = CMatrix::zeros(n, n);
                e[(i, j)] = C64::new(1., 0.);
                let lhs = carrier.matrix() * &e;
                let rhs = &e * carrier.matrix();
                assert!(max_abs_diff(&lhs, &rhs) < 1e-15);
            }
        }
    }

    #[test]
    fn errors() {
        let space = TrapSpace::default();
        assert!(matches!(
            pulse_unitary(
                &Pulse::Carrier {
                    ion: 2,
                    slot: "U".into()
                },
                &space,
                &Bindings::new()
            ),
            Err(Error::UnboundSlot(_))
        ));
        let bad = Operator::general(CMatrix::zeros(2, 2)).unwrap();
        assert!(matches!(
            pulse_unitary(
                &Pulse::Carrier {
                    ion: 2,
                    slot: "U".into()
                },
                &space,
                &Bindings::new().with("U", bad)
            ),
            Err(Error::NotUnitary { .. })
        ));
        assert!(pulse_unitary(&Pulse::SidebandSwap { ion: 3 }, &space, &Bindings::new()).is_err());
    }

    #[test]
    fn json_shape() {
        let p = Pulse::Hiding {
            ion: 2,
            which: HidingPulse::H1,
        };
        assert_eq!(
            serde_json::to_value(&p).unwrap(),
            serde_json::json!({"type": "hiding", "ion": 2, "which": "H1"})
        );
        let c: Pulse = serde_json::from_str(r#"{"type":"carrier","ion":2,"slot":"U"}"#).unwrap();
        assert_eq!(
            c,
            Pulse::Carrier {
                ion: 2,
                slot: "U".into()
            }
        );
    }
}
