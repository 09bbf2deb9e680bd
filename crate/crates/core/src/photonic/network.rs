use serde::{Deserialize, Serialize};

use super::element::Element;
use super::space::PhotonicSpace;
use crate::error::{Error, Result};

/// An ordered list of optical elements over a [`PhotonicSpace`].
///
/// Every device slot is placed exactly once (as `Device` or
/// `BigBrotherDevice`). Light may come back through a placed device via
/// `Revisit`; whether that still counts as a single use is checked at
/// propagation time from the photon flux through the device.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "NetworkFile", into = "NetworkFile")]
pub struct Network {
    space: PhotonicSpace,
    stages: Vec<Element>,
    slots: Vec<String>,
}

/// On-disk form. `slots` is redundant with `stages` and is checked on load.
#[derive(Clone, Debug, Serialize, Deserialize)]
struct NetworkFile {
    space: PhotonicSpace,
    stages: Vec<Element>,
    slots: Vec<String>,
}

impl TryFrom<NetworkFile> for Network {
    type Error = Error;

    fn try_from(file: NetworkFile) -> Result<Self> {
        let net = Network::new(file.space, file.stages)?;
        if net.slots != file.slots {
            return Err(Error::InvalidNetwork(format!(
                "declared slots {:?} do not match placed devices {:?}",
                file.slots, net.slots
            )));
        }
        Ok(net)
    }
}

impl From<Network> for NetworkFile {
    fn from(net: Network) -> Self {
        NetworkFile {
            space: net.space,
            stages: net.stages,
            slots: net.slots,
        }
    }
}

impl Network {
    pub fn new(space: PhotonicSpace, stages: Vec<Element>) -> Result<Self> {
        space.validate()?;
        let mut slots: Vec<String> = Vec::new();
        let mut placed_on: Vec<&str> = Vec::new();
        for (i, e) in stages.iter().enumerate() {
            e.validate(&space)
                .map_err(|err| Error::InvalidNetwork(format!("stage {i}: {err}")))?;
            match e {
                Element::Device { path, slot } | Element::BigBrotherDevice { path, slot } => {
                    if slots.contains(slot) {
                        return Err(Error::InvalidNetwork(format!(
                            "slot `{slot}` is placed more than once"
                        )));
                    }
                    slots.push(slot.clone());
                    placed_on.push(path);
                }
                Element::Revisit { path, slot } => {
                    let Some(k) = slots.iter().position(|s| s == slot) else {
                        return Err(Error::InvalidNetwork(format!(
                            "stage {i}: revisit of unplaced slot `{slot}`"
                        )));
                    };
                    if placed_on[k] != path {
                        return Err(Error::InvalidNetwork(format!(
                            "stage {i}: slot `{slot}` sits on path `{}`, not `{path}`",
                            placed_on[k]
                        )));
                    }
                }
                _ => {}
            }
        }
        Ok(Self {
            space,
            stages,
            slots,
        })
    }

    pub fn space(&self) -> &PhotonicSpace {
        &self.space
    }

    pub fn stages(&self) -> &[Element] {
        &self.stages
    }

    /// Device slots in placement order.
    pub fn slots(&self) -> &[String] {
        &self.slots
    }

    /// Number of times light meets device `slot` along the stage list.
    pub fn passes(&self, slot: &str) -> usize {
        self.stages
            .iter()
            .filter(|e| e.device_pass().is_some_and(|(_, s)| s == slot))
            .count()
    }

    pub fn is_big_brother(&self, slot: &str) -> bool {
        self.stages
            .iter()
            .any(|e| matches!(e, Element::BigBrotherDevice { slot: s, .. } if s == slot))
    }

    pub fn has_big_brother(&self) -> bool {
        self.stages
            .iter()
            .any(|e| matches!(e, Element::BigBrotherDevice { .. }))
    }

    /// The same network with every device wrapped in a photon-number
    /// measurement.
    pub fn with_big_brother(&self) -> Network {
        let stages = self
            .stages
            .iter()
            .map(|e| match e {
                Element::Device { path, slot } => Element::BigBrotherDevice {
                    path: path.clone(),
                    slot: slot.clone(),
                },
                other => other.clone(),
            })
            .collect();
        Network {
            space: self.space.clone(),
            stages,
            slots: self.slots.clone(),
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("network serializes")
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }
}
