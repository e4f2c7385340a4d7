//! Finite universes and subset masks.
//!
//! A [`Universe`] is an ordered collection of distinct labels; a [`Subset`]
//! is a membership mask over one universe. All set algebra in the crate
//! flows through these two types. Subsets of the same universe compare,
//! combine and render deterministically: the canonical order of subsets is
//! ascending mask value with element index 0 in the least-significant bit.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Largest universe the mask representation supports.
pub const MAX_UNIVERSE_SIZE: usize = 64;

/// Default cap on universe size for operations that enumerate all 2^n subsets.
pub const DEFAULT_ENUM_CAP: usize = 16;

#[derive(Debug)]
struct UniverseInner {
    labels: Vec<String>,
    index: HashMap<String, usize>,
}

/// An ordered finite set of distinct labels.
///
/// Cloning is cheap; two universes are equal when their label sequences are
/// equal. Immutable after construction.
#[derive(Debug, Clone)]
pub struct Universe {
    inner: Arc<UniverseInner>,
}

impl PartialEq for Universe {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.inner, &other.inner) || self.inner.labels == other.inner.labels
    }
}

impl Eq for Universe {}

impl std::hash::Hash for Universe {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.inner.labels.hash(state);
    }
}

impl Universe {
    /// Builds a universe from an ordered sequence of distinct non-empty labels.
    pub fn new<I, S>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let labels: Vec<String> = labels.into_iter().map(Into::into).collect();
        if labels.is_empty() {
            return Err(Error::EmptyUniverse);
        }
        if labels.len() > MAX_UNIVERSE_SIZE {
            return Err(Error::UniverseTooLarge {
                size: labels.len(),
                max: MAX_UNIVERSE_SIZE,
            });
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, label) in labels.iter().enumerate() {
            if label.is_empty() {
                return Err(Error::EmptyLabel);
            }
            if index.insert(label.clone(), i).is_some() {
                return Err(Error::DuplicateLabel(label.clone()));
            }
        }
        Ok(Universe {
            inner: Arc::new(UniverseInner { labels, index }),
        })
    }

    pub fn size(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn labels(&self) -> impl Iterator<Item = &str> {
        self.inner.labels.iter().map(String::as_str)
    }

    pub fn label(&self, index: usize) -> Result<&str> {
        self.inner
            .labels
            .get(index)
            .map(String::as_str)
            .ok_or(Error::IndexOutOfRange {
                index,
                size: self.size(),
            })
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownLabel(label.to_string()))
    }

    pub fn contains_label(&self, label: &str) -> bool {
        self.inner.index.contains_key(label)
    }

    /// Mask with every element set.
    pub(crate) fn full_mask(&self) -> u64 {
        full_mask(self.size())
    }

    pub fn empty_set(&self) -> Subset {
        Subset {
            universe: self.clone(),
            mask: 0,
        }
    }

    pub fn full_set(&self) -> Subset {
        Subset {
            universe: self.clone(),
            mask: self.full_mask(),
        }
    }

    /// Subset containing exactly the element at `index`.
    pub fn singleton(&self, index: usize) -> Result<Subset> {
        if index >= self.size() {
            return Err(Error::IndexOutOfRange {
                index,
                size: self.size(),
            });
        }
        Ok(Subset {
            universe: self.clone(),
            mask: 1 << index,
        })
    }

    /// Subset from member labels.
    pub fn subset<I, S>(&self, labels: I) -> Result<Subset>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut mask = 0u64;
        for label in labels {
            mask |= 1 << self.index_of(label.as_ref())?;
        }
        Ok(Subset {
            universe: self.clone(),
            mask,
        })
    }

    /// Subset from member element indices.
    pub fn subset_from_indices<I>(&self, indices: I) -> Result<Subset>
    where
        I: IntoIterator<Item = usize>,
    {
        let mut mask = 0u64;
        for index in indices {
            if index >= self.size() {
                return Err(Error::IndexOutOfRange {
                    index,
                    size: self.size(),
                });
            }
            mask |= 1 << index;
        }
        Ok(Subset {
            universe: self.clone(),
            mask,
        })
    }

    pub(crate) fn subset_from_mask(&self, mask: u64) -> Subset {
        debug_assert_eq!(mask & !self.full_mask(), 0);
        Subset {
            universe: self.clone(),
            mask,
        }
    }

    /// Iterates every subset of this universe exactly once, in canonical
    /// order (ascending mask value), using the default enumeration cap.
    pub fn powerset(&self) -> Result<Powerset> {
        self.powerset_with_cap(DEFAULT_ENUM_CAP)
    }

    /// Same as [`Universe::powerset`] with an explicit cap.
    pub fn powerset_with_cap(&self, cap: usize) -> Result<Powerset> {
        let n = self.size();
        if n > cap || n >= 64 {
            return Err(Error::CapExceeded { size: n, cap });
        }
        Ok(Powerset {
            universe: self.clone(),
            next: Some(0),
            full: self.full_mask(),
        })
    }
}

impl fmt::Display for Universe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.full_set())
    }
}

pub(crate) fn full_mask(size: usize) -> u64 {
    if size >= 64 {
        u64::MAX
    } else {
        (1u64 << size) - 1
    }
}

/// A subset of one universe, stored as a membership mask.
///
/// Binary operations require both operands to share the universe and fail
/// with [`Error::UniverseMismatch`] otherwise. Immutable after construction.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset {
    universe: Universe,
    mask: u64,
}

impl Subset {
    pub fn universe(&self) -> &Universe {
        &self.universe
    }

    pub(crate) fn mask(&self) -> u64 {
        self.mask
    }

    fn check_same(&self, other: &Subset) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch)
        }
    }

    pub fn union(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        Ok(self.universe.subset_from_mask(self.mask | other.mask))
    }

    pub fn intersect(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        Ok(self.universe.subset_from_mask(self.mask & other.mask))
    }

    pub fn difference(&self, other: &Subset) -> Result<Subset> {
        self.check_same(other)?;
        Ok(self.universe.subset_from_mask(self.mask & !other.mask))
    }

    /// Complement relative to the owning universe.
    pub fn complement(&self) -> Subset {
        self.universe
            .subset_from_mask(!self.mask & self.universe.full_mask())
    }

    pub fn is_subset_of(&self, other: &Subset) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.mask & !other.mask == 0)
    }

    pub fn intersects(&self, other: &Subset) -> Result<bool> {
        self.check_same(other)?;
        Ok(self.mask & other.mask != 0)
    }

    pub fn len(&self) -> usize {
        self.mask.count_ones() as usize
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn is_full(&self) -> bool {
        self.mask == self.universe.full_mask()
    }

    pub fn contains_index(&self, index: usize) -> bool {
        index < self.universe.size() && self.mask & (1 << index) != 0
    }

    pub fn contains_label(&self, label: &str) -> bool {
        match self.universe.index_of(label) {
            Ok(i) => self.mask & (1 << i) != 0,
            Err(_) => false,
        }
    }

    /// Member element indices in ascending order.
    pub fn indices(&self) -> impl Iterator<Item = usize> + '_ {
        let mask = self.mask;
        (0..self.universe.size()).filter(move |i| mask & (1 << i) != 0)
    }

    /// Member labels in universe index order.
    pub fn member_labels(&self) -> impl Iterator<Item = &str> {
        self.indices()
            .map(move |i| self.universe.inner.labels[i].as_str())
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        let mut first = true;
        for label in self.member_labels() {
            if !first {
                write!(f, ",")?;
            }
            write!(f, "{label}")?;
            first = false;
        }
        write!(f, "}}")
    }
}

/// Iterator over every subset of a universe in canonical order.
#[derive(Debug, Clone)]
pub struct Powerset {
    universe: Universe,
    next: Option<u64>,
    full: u64,
}

impl Iterator for Powerset {
    type Item = Subset;

    fn next(&mut self) -> Option<Subset> {
        let mask = self.next?;
        self.next = if mask == self.full {
            None
        } else {
            Some(mask + 1)
        };
        Some(self.universe.subset_from_mask(mask))
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let remaining = match self.next {
            Some(next) => (self.full - next + 1) as usize,
            None => 0,
        };
        (remaining, Some(remaining))
    }
}

impl ExactSizeIterator for Powerset {}

/// Iterates all submasks of `mask` in ascending numeric order, including 0
/// and `mask` itself (carry-rippler).
pub(crate) fn submasks(mask: u64) -> Submasks {
    Submasks {
        mask,
        next: Some(0),
    }
}

#[derive(Debug, Clone)]
pub(crate) struct Submasks {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Submasks {
    type Item = u64;

    fn next(&mut self) -> Option<u64> {
        let current = self.next?;
        self.next = if current == self.mask {
            None
        } else {
            Some(current.wrapping_sub(self.mask) & self.mask)
        };
        Some(current)
    }
}
