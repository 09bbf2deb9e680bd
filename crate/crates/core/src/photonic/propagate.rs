use std::collections::BTreeMap;

use rand::RngCore;

use super::element::{element_unitary, Element};
use super::network::Network;
use super::space::PhotonicSpace;
use crate::bindings::Bindings;
use crate::error::{Error, Result};
use crate::hilbert::{
    measure_projective, CMatrix, CVector, DensityMatrix, Operator, StateVector, C64, DEFAULT_TOL,
};

#[derive(Clone, Debug, PartialEq)]
pub enum SchemeOutcome {
    Pure(StateVector),
    /// Full ensemble over all photon-number measurement records.
    Mixed(DensityMatrix),
    /// One measurement record. `outcome` packs the records in binary, first
    /// measurement most significant, with `1` meaning the photon was detected
    /// at the device.
    Sampled {
        outcome: usize,
        state: StateVector,
        probability: f64,
    },
}

impl SchemeOutcome {
    pub fn density_matrix(&self) -> DensityMatrix {
        match self {
            SchemeOutcome::Pure(s) | SchemeOutcome::Sampled { state: s, .. } => {
                DensityMatrix::from_pure(s)
            }
            SchemeOutcome::Mixed(rho) => rho.clone(),
        }
    }
}

/// Product of all element unitaries. Fails for networks that measure.
pub fn network_unitary(net: &Network, bindings: &Bindings) -> Result<Operator> {
    if net.has_big_brother() {
        return Err(Error::InvalidNetwork(
            "a measuring network has no single unitary".into(),
        ));
    }
    let n = net.space().sector_dim();
    let mut total = Operator::identity(n);
    for e in net.stages() {
        total = element_unitary(e, net.space(), bindings)?.compose(&total)?;
    }
    Ok(total)
}

/// Propagates `input` through `net`. Measuring networks return the full
/// [`SchemeOutcome::Mixed`] ensemble.
pub fn propagate(net: &Network, input: &StateVector, bindings: &Bindings) -> Result<SchemeOutcome> {
    run(net, input, bindings, None)
}

/// Like [`propagate`], but each photon-number measurement is sampled from
/// `rng`, yielding [`SchemeOutcome::Sampled`] for measuring networks.
pub fn propagate_sampled<R: RngCore>(
    net: &Network,
    input: &StateVector,
    bindings: &Bindings,
    rng: &mut R,
) -> Result<SchemeOutcome> {
    run(net, input, bindings, Some(rng as &mut dyn RngCore))
}

struct Branch {
    weight: f64,
    state: StateVector,
}

fn path_projectors(space: &PhotonicSpace, path: usize) -> Result<[Operator; 2]> {
    let n = space.sector_dim();
    let mut on = CMatrix::zeros(n, n);
    for i in space.path_block(path) {
        on[(i, i)] = C64::new(1.0, 0.0);
    }
    let off = CMatrix::identity(n, n) - &on;
    Ok([Operator::general(off)?, Operator::general(on)?])
}

fn path_population(space: &PhotonicSpace, amps: &CVector, path: usize) -> f64 {
    space
        .path_block(path)
        .iter()
        .map(|&i| amps[i].norm_sqr())
        .sum()
}

fn run(
    net: &Network,
    input: &StateVector,
    bindings: &Bindings,
    mut rng: Option<&mut dyn RngCore>,
) -> Result<SchemeOutcome> {
    let space = net.space();
    if input.space() != &space.hilbert() {
        return Err(Error::SpaceMismatch);
    }
    let mut branches = vec![Branch {
        weight: 1.0,
        state: input.clone(),
    }];
    let mut record = 0usize;
    let mut record_probability = 1.0;
    let mut flux: BTreeMap<&str, f64> = BTreeMap::new();

    for e in net.stages() {
        let unitary = element_unitary(e, space, bindings)?;
        if let Some((path, slot)) = e.device_pass() {
            let p = space.path_index(path)?;
            let photons: f64 = branches
                .iter()
                .map(|b| b.weight * path_population(space, b.state.amps(), p))
                .sum();
            let total = flux.entry(slot).or_default();
            *total += photons;
            if *total > 1.0 + DEFAULT_TOL {
                return Err(Error::DeviceReuse {
                    slot: slot.to_string(),
                    photons: *total,
                });
            }
            let measures = matches!(e, Element::BigBrotherDevice { .. })
                || (matches!(e, Element::Revisit { .. }) && net.is_big_brother(slot));
            if measures {
                let projectors = path_projectors(space, p)?;
                branches = match rng.as_deref_mut() {
                    Some(rng) => {
                        let b = &branches[0];
                        let m = measure_projective(&b.state, &projectors, rng)?;
                        record = record * 2 + m.outcome;
                        record_probability *= m.probability;
                        vec![Branch {
                            weight: 1.0,
                            state: m.state,
                        }]
                    }
                    None => split(branches, &projectors)?,
                };
            }
        }
        for b in &mut branches {
            b.state = b.state.apply(&unitary)?;
        }
    }

    if !net.has_big_brother() {
        let b = branches.pop().expect("one branch without measurement");
        return Ok(SchemeOutcome::Pure(b.state));
    }
    if rng.is_some() {
        let b = branches.pop().expect("sampling keeps one branch");
        return Ok(SchemeOutcome::Sampled {
            outcome: record,
            state: b.state,
            probability: record_probability,
        });
    }
    let rho = DensityMatrix::mixture(branches.iter().map(|b| (b.weight, &b.state)))?;
    Ok(SchemeOutcome::Mixed(rho))
}

fn split(branches: Vec<Branch>, projectors: &[Operator; 2]) -> Result<Vec<Branch>> {
    let mut out = Vec::with_capacity(branches.len() * 2);
    for b in branches {
        for p in projectors {
            let v = p.matrix() * b.state.amps();
            let prob = v.norm_squared();
            if prob > 0.0 {
                out.push(Branch {
                    weight: b.weight * prob,
                    state: StateVector::normalized(b.state.space().clone(), v)?,
                });
            }
        }
    }
    Ok(out)
}
