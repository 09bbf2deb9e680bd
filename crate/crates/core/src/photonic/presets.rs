use std::fmt;
use std::str::FromStr;

use super::element::Element;
use super::network::Network;
use super::space::PhotonicSpace;
use crate::error::{Error, Result};
use crate::hilbert::{Operator, StateVector, C64};

/// Path the presets take their input on and deliver their output to.
pub const INPUT_PATH: &str = "u";
const OTHER_PATH: &str = "l";

fn preset_space(d: usize) -> PhotonicSpace {
    assert!(d >= 1, "internal dimension must be positive");
    PhotonicSpace::new([INPUT_PATH, OTHER_PATH], d).expect("static preset space")
}

fn split() -> Element {
    Element::pbs([INPUT_PATH, OTHER_PATH], [INPUT_PATH, OTHER_PATH])
}

/// Mach-Zehnder interferometer between two PBSs with the device `U` on the
/// reflected (`V`) arm.
pub fn preset_fig2(d: usize) -> Network {
    Network::new(
        preset_space(d),
        vec![split(), Element::device(OTHER_PATH, "U"), split()],
    )
    .expect("static preset")
}

/// [`preset_fig2`] with a photon-number measurement inside the device.
pub fn preset_fig2_bb(d: usize) -> Network {
    preset_fig2(d).with_big_brother()
}

/// Polarization-loop network applying `Uf` then `Ug` to the `H` component
/// and `Ug` then `Uf` to the `V` component, each device placed once.
///
/// After the first PBS the `H` light meets `Uf` on the upper path while the
/// `V` light meets `Ug` on the lower path. A half-wave plate turns the upper
/// light to `V` so the second PBS swaps both beams onto the other device.
/// A final plate and PBS recombine everything on one path, which is then
/// relabeled as the input path.
pub fn preset_fig5(d: usize) -> Network {
    let (u, l) = (INPUT_PATH, OTHER_PATH);
    Network::new(
        preset_space(d),
        vec![
            split(),
            Element::device(u, "Uf"),
            Element::device(l, "Ug"),
            Element::hwp(u),
            split(),
            Element::revisit(l, "Ug"),
            Element::revisit(u, "Uf"),
            Element::hwp(l),
            split(),
            Element::reroute(&[l, u]),
        ],
    )
    .expect("static preset")
}

pub fn preset_fig5_bb(d: usize) -> Network {
    preset_fig5(d).with_big_brother()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PresetId {
    Fig2,
    Fig2Bb,
    Fig5,
    Fig5Bb,
}

impl PresetId {
    pub const ALL: [PresetId; 4] = [
        PresetId::Fig2,
        PresetId::Fig2Bb,
        PresetId::Fig5,
        PresetId::Fig5Bb,
    ];

    pub fn name(self) -> &'static str {
        match self {
            PresetId::Fig2 => "fig2",
            PresetId::Fig2Bb => "fig2-bb",
            PresetId::Fig5 => "fig5",
            PresetId::Fig5Bb => "fig5-bb",
        }
    }

    pub fn is_switch(self) -> bool {
        matches!(self, PresetId::Fig5 | PresetId::Fig5Bb)
    }
}

impl fmt::Display for PresetId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PresetId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        PresetId::ALL
            .into_iter()
            .find(|p| p.name() == s)
            .ok_or_else(|| Error::InvalidNetwork(format!("unknown preset `{s}`")))
    }
}

pub fn preset(id: PresetId, d: usize) -> Network {
    match id {
        PresetId::Fig2 => preset_fig2(d),
        PresetId::Fig2Bb => preset_fig2_bb(d),
        PresetId::Fig5 => preset_fig5(d),
        PresetId::Fig5Bb => preset_fig5_bb(d),
    }
}

/// `α|H⟩|ψ⟩ + β|V⟩U|ψ⟩` on the input path.
pub fn ctrl_u_target(
    space: &PhotonicSpace,
    alpha: C64,
    beta: C64,
    psi: &StateVector,
    u: &Operator,
) -> Result<StateVector> {
    let upsi = psi.apply(u)?;
    space.state_on_path(INPUT_PATH, &(psi.amps() * alpha), &(upsi.amps() * beta))
}

/// `α|H⟩U_gU_f|ψ⟩ + β|V⟩U_fU_g|ψ⟩` on the input path.
pub fn switch_target(
    space: &PhotonicSpace,
    alpha: C64,
    beta: C64,
    psi: &StateVector,
    uf: &Operator,
    ug: &Operator,
) -> Result<StateVector> {
    let gf = psi.apply(uf)?.apply(ug)?;
    let fg = psi.apply(ug)?.apply(uf)?;
    space.state_on_path(INPUT_PATH, &(gf.amps() * alpha), &(fg.amps() * beta))
}
