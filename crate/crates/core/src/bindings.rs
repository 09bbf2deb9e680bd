use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::hilbert::{Operator, DEFAULT_TOL};

/// Assignment of concrete operators to the named device slots of a network or
/// pulse sequence.
#[derive(Clone, Debug, Default)]
pub struct Bindings {
    slots: BTreeMap<String, Operator>,
}

impl Bindings {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, slot: impl Into<String>, op: Operator) -> Self {
        self.bind(slot, op);
        self
    }

    pub fn bind(&mut self, slot: impl Into<String>, op: Operator) {
        self.slots.insert(slot.into(), op);
    }

    pub fn get(&self, slot: &str) -> Option<&Operator> {
        self.slots.get(slot)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &Operator)> {
        self.slots.iter().map(|(k, v)| (k.as_str(), v))
    }

    /// Looks up `slot` and checks it is a `dim`x`dim` unitary.
    pub fn unitary(&self, slot: &str, dim: usize) -> Result<&Operator> {
        let op = self
            .slots
            .get(slot)
            .ok_or_else(|| Error::UnboundSlot(slot.to_string()))?;
        if op.dim() != dim {
            return Err(Error::BindingDimension {
                slot: slot.to_string(),
                expected: dim,
                actual: op.dim(),
            });
        }
        let deviation = op.unitarity_deviation();
        if deviation > DEFAULT_TOL {
            return Err(Error::NotUnitary { deviation });
        }
        Ok(op)
    }
}
