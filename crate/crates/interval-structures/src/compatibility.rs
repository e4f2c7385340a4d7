//! Compatibility relations between two universes and the interval structure
//! they induce.
//!
//! A relation pairs situations `w ∈ W` with the propositions `θ ∈ Θ` they
//! are compatible with. Stored as the multi-valued mapping `γ(w)`, one
//! proposition mask per situation, so the lower and upper inverse images
//! become mask containment and intersection tests.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::interval::{BasicSetAssignment, IntervalStructure, SetValuedMap};
use crate::sets::{Subset, Universe};

/// A serial compatibility relation: every situation relates to at least one
/// proposition element and every proposition element to at least one
/// situation. Non-serial input is rejected rather than repaired.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CompatibilityRelation {
    w: Universe,
    theta: Universe,
    gamma: Vec<u64>,
}

impl CompatibilityRelation {
    /// Builds the relation from `(w-index, θ-index)` pairs.
    pub fn from_pairs(w: &Universe, theta: &Universe, pairs: &[(usize, usize)]) -> Result<Self> {
        let mut gamma = vec![0u64; w.size()];
        for &(wi, ti) in pairs {
            if wi >= w.size() {
                return Err(Error::IndexOutOfRange {
                    index: wi,
                    size: w.size(),
                });
            }
            if ti >= theta.size() {
                return Err(Error::IndexOutOfRange {
                    index: ti,
                    size: theta.size(),
                });
            }
            gamma[wi] |= 1 << ti;
        }
        Self::from_gamma_masks(w, theta, gamma)
    }

    /// Builds the relation from the compatible set of each situation, given
    /// as `(w-label, subset of Θ)` rows.
    pub fn from_gamma<'a, I>(w: &Universe, theta: &Universe, rows: I) -> Result<Self>
    where
        I: IntoIterator<Item = (&'a str, Subset)>,
    {
        let mut gamma = vec![0u64; w.size()];
        for (label, compatible) in rows {
            if compatible.universe() != theta {
                return Err(Error::UniverseMismatch);
            }
            gamma[w.index_of(label)?] |= compatible.mask();
        }
        Self::from_gamma_masks(w, theta, gamma)
    }

    fn from_gamma_masks(w: &Universe, theta: &Universe, gamma: Vec<u64>) -> Result<Self> {
        let mut covered = 0u64;
        for (wi, &mask) in gamma.iter().enumerate() {
            if mask == 0 {
                return Err(Error::NotSerial(format!(
                    "situation {} is compatible with nothing",
                    w.label(wi).unwrap()
                )));
            }
            covered |= mask;
        }
        if covered != theta.full_mask() {
            let missing = theta.subset_from_mask(!covered & theta.full_mask());
            return Err(Error::NotSerial(format!(
                "no situation is compatible with {missing}"
            )));
        }
        Ok(CompatibilityRelation {
            w: w.clone(),
            theta: theta.clone(),
            gamma,
        })
    }

    pub fn w(&self) -> &Universe {
        &self.w
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    /// The compatible set `γ(w)` of a situation, by label.
    pub fn gamma(&self, w_label: &str) -> Result<Subset> {
        self.gamma_at(self.w.index_of(w_label)?)
    }

    /// The compatible set `γ(w)` of a situation, by index.
    pub fn gamma_at(&self, w_index: usize) -> Result<Subset> {
        if w_index >= self.w.size() {
            return Err(Error::IndexOutOfRange {
                index: w_index,
                size: self.w.size(),
            });
        }
        Ok(self.theta.subset_from_mask(self.gamma[w_index]))
    }

    /// The image `Γ(X) = ⋃ γ(w)` over the members of `x`.
    pub fn image(&self, x: &Subset) -> Result<Subset> {
        if x.universe() != &self.w {
            return Err(Error::UniverseMismatch);
        }
        let mut mask = 0u64;
        for wi in x.indices() {
            mask |= self.gamma[wi];
        }
        Ok(self.theta.subset_from_mask(mask))
    }

    /// The situations compatible with only elements of `a`:
    /// `{w | γ(w) ⊆ a}`.
    pub fn lower_inverse(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        let mask = a.mask();
        Ok(self.w.subset_from_mask(self.lower_inverse_mask(mask)))
    }

    /// The situations compatible with at least one element of `a`:
    /// `{w | γ(w) ∩ a ≠ ∅}`.
    pub fn upper_inverse(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        let mask = a.mask();
        Ok(self.w.subset_from_mask(self.upper_inverse_mask(mask)))
    }

    fn lower_inverse_mask(&self, a: u64) -> u64 {
        let mut out = 0u64;
        for (wi, &g) in self.gamma.iter().enumerate() {
            if g & !a == 0 {
                out |= 1 << wi;
            }
        }
        out
    }

    fn upper_inverse_mask(&self, a: u64) -> u64 {
        let mut out = 0u64;
        for (wi, &g) in self.gamma.iter().enumerate() {
            if g & a != 0 {
                out |= 1 << wi;
            }
        }
        out
    }

    /// The interval structure whose bounds are the lower and upper inverse
    /// images. Seriality makes the pair valid, so the tables are built
    /// directly.
    pub fn interval_structure(&self, cap: usize) -> Result<IntervalStructure> {
        let lower = SetValuedMap::from_fn(&self.theta, &self.w, cap, |a| {
            self.w.subset_from_mask(self.lower_inverse_mask(a.mask()))
        })?;
        let upper = SetValuedMap::from_fn(&self.theta, &self.w, cap, |a| {
            self.w.subset_from_mask(self.upper_inverse_mask(a.mask()))
        })?;
        IntervalStructure::new(lower, upper, cap)
    }

    /// The induced basic set assignment, read directly off the relation:
    /// `j(A) = {w | γ(w) = A}`.
    pub fn basic_set_assignment(&self) -> BasicSetAssignment {
        let mut focal: BTreeMap<u64, u64> = BTreeMap::new();
        for (wi, &g) in self.gamma.iter().enumerate() {
            *focal.entry(g).or_insert(0) |= 1 << wi;
        }
        BasicSetAssignment::from_masks(&self.theta, &self.w, focal)
    }
}
