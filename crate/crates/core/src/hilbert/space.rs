use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factor {
    pub label: String,
    pub dim: usize,
}

/// Ordered tensor product of labeled factors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HilbertSpace {
    factors: Vec<Factor>,
    total_dim: usize,
}

impl HilbertSpace {
    pub fn new<L: Into<String>>(factors: impl IntoIterator<Item = (L, usize)>) -> Result<Self> {
        let factors: Vec<Factor> = factors
            .into_iter()
            .map(|(label, dim)| Factor {
                label: label.into(),
                dim,
            })
            .collect();
        if factors.is_empty() {
            return Err(Error::InvalidSpace("no factors".into()));
        }
        for (i, f) in factors.iter().enumerate() {
            if f.dim == 0 {
                return Err(Error::InvalidSpace(format!(
                    "factor `{}` has dim 0",
                    f.label
                )));
            }
            if factors[..i].iter().any(|g| g.label == f.label) {
                return Err(Error::DuplicateFactor(f.label.clone()));
            }
        }
        let total_dim = factors.iter().map(|f| f.dim).product();
        Ok(Self { factors, total_dim })
    }

    /// A single unlabeled-in-practice factor of dimension `dim`.
    pub fn single(label: impl Into<String>, dim: usize) -> Result<Self> {
        Self::new([(label.into(), dim)])
    }

    pub fn factors(&self) -> &[Factor] {
        &self.factors
    }

    pub fn total_dim(&self) -> usize {
        self.total_dim
    }

    pub fn position(&self, label: &str) -> Result<usize> {
        self.factors
            .iter()
            .position(|f| f.label == label)
            .ok_or_else(|| Error::UnknownFactor(label.to_string()))
    }

    pub fn dim_of(&self, label: &str) -> Result<usize> {
        Ok(self.factors[self.position(label)?].dim)
    }

    /// Flattened index of a multi-index given in factor order.
    pub fn flat_index(&self, digits: &[usize]) -> usize {
        debug_assert_eq!(digits.len(), self.factors.len());
        digits.iter().zip(&self.factors).fold(0, |acc, (&d, f)| {
            debug_assert!(d < f.dim);
            acc * f.dim + d
        })
    }

    /// Inverse of [`flat_index`](Self::flat_index).
    pub fn digits(&self, mut index: usize) -> Vec<usize> {
        let mut out = vec![0; self.factors.len()];
        for (slot, f) in out.iter_mut().zip(&self.factors).rev() {
            *slot = index % f.dim;
            index /= f.dim;
        }
        out
    }

    /// Concatenation `self ⊗ other`; labels must stay unique.
    pub fn product(&self, other: &HilbertSpace) -> Result<HilbertSpace> {
        Self::new(
            self.factors
                .iter()
                .chain(&other.factors)
                .map(|f| (f.label.clone(), f.dim)),
        )
    }

    /// The subspace made of the listed factors, kept in their original order.
    pub fn restrict(&self, keep: &[&str]) -> Result<HilbertSpace> {
        for k in keep {
            self.position(k)?;
        }
        Self::new(
            self.factors
                .iter()
                .filter(|f| keep.contains(&f.label.as_str()))
                .map(|f| (f.label.clone(), f.dim)),
        )
    }
}
