//! Numeric counterpart of interval structures: basic probability
//! assignments, belief and plausibility tables, mass recovery by Möbius
//! inversion, and the two bridges between probabilities on W and belief
//! functions on Θ.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::interval::{BasicSetAssignment, IntervalStructure};
use crate::sets::{submasks, Subset, Universe};

/// Numeric tolerance for mass sums, the mass-transform nonnegativity test,
/// and reconstruction identities.
pub const EPSILON: f64 = 1e-9;

/// A sparse assignment of positive masses to non-empty subsets, summing
/// to 1.
#[derive(Debug, Clone, PartialEq)]
pub struct BasicProbabilityAssignment {
    theta: Universe,
    masses: BTreeMap<u64, f64>,
}

impl BasicProbabilityAssignment {
    /// Validates that no mass sits on the empty set, no mass is negative,
    /// and the total is 1 within [`EPSILON`]. Zero-mass entries are dropped.
    pub fn new<I>(theta: &Universe, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, f64)>,
    {
        let mut masses = BTreeMap::new();
        let mut total = 0.0;
        for (key, mass) in entries {
            if key.universe() != theta {
                return Err(Error::UniverseMismatch);
            }
            if mass < 0.0 {
                return Err(Error::NegativeMass(key.to_string()));
            }
            if mass == 0.0 {
                continue;
            }
            if key.is_empty() {
                return Err(Error::MassOnEmptySet);
            }
            if masses.insert(key.mask(), mass).is_some() {
                return Err(Error::DuplicateEntry(key.to_string()));
            }
            total += mass;
        }
        if (total - 1.0).abs() > EPSILON {
            return Err(Error::MassSum(total));
        }
        Ok(BasicProbabilityAssignment {
            theta: theta.clone(),
            masses,
        })
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    /// Focal elements and their masses in canonical order.
    pub fn focal_elements(&self) -> impl Iterator<Item = (Subset, f64)> + '_ {
        self.masses
            .iter()
            .map(|(&a, &m)| (self.theta.subset_from_mask(a), m))
    }

    pub fn len(&self) -> usize {
        self.masses.len()
    }

    pub fn is_empty(&self) -> bool {
        self.masses.is_empty()
    }

    pub fn mass(&self, a: &Subset) -> Result<f64> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.masses.get(&a.mask()).copied().unwrap_or(0.0))
    }

    /// The belief table: `Bel(A)` sums the masses of focal elements inside
    /// `A`. The boundary values 0 and 1 hold by construction.
    pub fn belief_table(&self, cap: usize) -> Result<BeliefTable> {
        let n = self.theta.size();
        if n > cap || n >= 64 {
            return Err(Error::CapExceeded { size: n, cap });
        }
        let mut values = vec![0.0f64; 1 << n];
        for (a, slot) in values.iter_mut().enumerate() {
            let a = a as u64;
            // An empty sum is -0.0; add zero to render it as 0.
            *slot = self
                .masses
                .iter()
                .filter(|(&b, _)| b & !a == 0)
                .map(|(_, &m)| m)
                .sum::<f64>()
                + 0.0;
        }
        Ok(BeliefTable {
            theta: self.theta.clone(),
            values,
        })
    }

    /// Point query for `Bel(A)`, usable at any universe size.
    pub fn belief_of(&self, a: &Subset) -> Result<f64> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        let mask = a.mask();
        Ok(self
            .masses
            .iter()
            .filter(|(&b, _)| b & !mask == 0)
            .map(|(_, &m)| m)
            .sum::<f64>()
            + 0.0)
    }
}

/// A total table of values over all subsets of a universe, in canonical
/// order.
#[derive(Debug, Clone, PartialEq)]
pub struct SetFunction {
    theta: Universe,
    values: Vec<f64>,
}

impl SetFunction {
    pub fn new(theta: &Universe, values: Vec<f64>) -> Result<Self> {
        if theta.size() >= 64 || values.len() != 1 << theta.size() {
            return Err(Error::TableSize {
                expected: 1usize
                    .checked_shl(theta.size() as u32)
                    .unwrap_or(usize::MAX),
                got: values.len(),
            });
        }
        Ok(SetFunction {
            theta: theta.clone(),
            values,
        })
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn value(&self, a: &Subset) -> Result<f64> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.values[a.mask() as usize])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }
}

/// A candidate belief function: a total table with value 0 on the empty set
/// and 1 on the full set (within [`EPSILON`]).
///
/// Construction checks only those boundary conditions; the superadditivity
/// side is verified through the mass transform, which
/// [`BeliefTable::basic_probability_assignment`] computes and rejects when
/// any value falls below `-EPSILON`.
#[derive(Debug, Clone, PartialEq)]
pub struct BeliefTable {
    theta: Universe,
    values: Vec<f64>,
}

impl BeliefTable {
    pub fn new(theta: &Universe, values: Vec<f64>) -> Result<Self> {
        if theta.size() >= 64 || values.len() != 1 << theta.size() {
            return Err(Error::TableSize {
                expected: 1usize
                    .checked_shl(theta.size() as u32)
                    .unwrap_or(usize::MAX),
                got: values.len(),
            });
        }
        if values[0].abs() > EPSILON {
            return Err(Error::BeliefAtEmpty(values[0]));
        }
        let full = values[values.len() - 1];
        if (full - 1.0).abs() > EPSILON {
            return Err(Error::BeliefAtFull(full));
        }
        Ok(BeliefTable {
            theta: theta.clone(),
            values,
        })
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn value(&self, a: &Subset) -> Result<f64> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.values[a.mask() as usize])
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    /// The plausibility table `Pl(A) = 1 − Bel(¬A)`.
    pub fn plausibility(&self) -> SetFunction {
        let full = self.theta.full_mask();
        let values = (0..self.values.len() as u64)
            .map(|a| 1.0 - self.values[(!a & full) as usize])
            .collect();
        SetFunction {
            theta: self.theta.clone(),
            values,
        }
    }

    /// Recovers the mass assignment by Möbius inversion:
    /// `m(A) = Σ (−1)^|A−B| Bel(B)` over subsets `B ⊆ A`, iterating
    /// submasks. Fails with the first witness, in canonical order, whose
    /// mass falls below `-EPSILON` — the table is then not a belief
    /// function.
    pub fn basic_probability_assignment(&self) -> Result<BasicProbabilityAssignment> {
        let mut masses = BTreeMap::new();
        for a in 0..self.values.len() as u64 {
            let bits_a = a.count_ones();
            let mut mass = 0.0f64;
            for b in submasks(a) {
                let sign = if (bits_a - b.count_ones()) % 2 == 0 {
                    1.0
                } else {
                    -1.0
                };
                mass += sign * self.values[b as usize];
            }
            if mass < -EPSILON {
                return Err(Error::NotBelief {
                    witness: self.theta.subset_from_mask(a).to_string(),
                    value: mass,
                });
            }
            if mass > EPSILON {
                masses.insert(a, mass);
            }
        }
        if masses.keys().next() == Some(&0) {
            return Err(Error::MassOnEmptySet);
        }
        Ok(BasicProbabilityAssignment {
            theta: self.theta.clone(),
            masses,
        })
    }

    /// Whether the table passes the full belief-function test.
    pub fn is_belief_function(&self) -> bool {
        self.basic_probability_assignment().is_ok()
    }
}

/// A probability function on W, stored as per-element point masses.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityOnW {
    w: Universe,
    point_masses: Vec<f64>,
}

impl ProbabilityOnW {
    pub fn new(w: &Universe, point_masses: Vec<f64>) -> Result<Self> {
        if point_masses.len() != w.size() {
            return Err(Error::TableSize {
                expected: w.size(),
                got: point_masses.len(),
            });
        }
        for (i, &mass) in point_masses.iter().enumerate() {
            if mass < 0.0 {
                return Err(Error::NegativeMass(w.label(i)?.to_string()));
            }
        }
        let total: f64 = point_masses.iter().sum();
        if (total - 1.0).abs() > EPSILON {
            return Err(Error::ProbabilitySum(total));
        }
        Ok(ProbabilityOnW {
            w: w.clone(),
            point_masses,
        })
    }

    /// The uniform distribution.
    pub fn uniform(w: &Universe) -> Self {
        let mass = 1.0 / w.size() as f64;
        ProbabilityOnW {
            w: w.clone(),
            point_masses: vec![mass; w.size()],
        }
    }

    pub fn w(&self) -> &Universe {
        &self.w
    }

    pub fn point_mass(&self, index: usize) -> Result<f64> {
        self.point_masses
            .get(index)
            .copied()
            .ok_or(Error::IndexOutOfRange {
                index,
                size: self.w.size(),
            })
    }

    /// The probability of a subset: the sum of its members' masses.
    pub fn measure(&self, x: &Subset) -> Result<f64> {
        if x.universe() != &self.w {
            return Err(Error::UniverseMismatch);
        }
        Ok(x.indices().map(|i| self.point_masses[i]).sum::<f64>() + 0.0)
    }
}

/// Pushes a probability on W through an interval structure:
/// `Bel(A) = P(lower(A))` and `Pl(A) = P(upper(A))`. The belief side passes
/// the belief-function test and the plausibility side is its dual.
pub fn bel_from_interval(
    structure: &IntervalStructure,
    p: &ProbabilityOnW,
) -> Result<(BeliefTable, SetFunction)> {
    if structure.w() != p.w() {
        return Err(Error::UniverseMismatch);
    }
    let theta = structure.theta().clone();
    let n = 1usize << theta.size();
    let mut bel = Vec::with_capacity(n);
    let mut pl = Vec::with_capacity(n);
    for a in 0..n as u64 {
        let subset = theta.subset_from_mask(a);
        bel.push(p.measure(&structure.lower(&subset)?)?);
        pl.push(p.measure(&structure.upper(&subset)?)?);
    }
    Ok((
        BeliefTable {
            theta: theta.clone(),
            values: bel,
        },
        SetFunction { theta, values: pl },
    ))
}

/// The canonical realization of a belief function as an interval structure
/// with a probability.
#[derive(Debug, Clone)]
pub struct CanonicalModel {
    /// One situation per focal element, labelled `w0, w1, …` in canonical
    /// focal order.
    pub w: Universe,
    /// Point masses equal to the focal masses.
    pub p: ProbabilityOnW,
    /// The structure assigning each focal element its own situation.
    pub structure: IntervalStructure,
}

/// Builds the canonical model of a belief function: one situation `w_A` per
/// focal element `A`, carrying mass `m(A)`, with the basic set assignment
/// `j(A) = {w_A}`. Pushing the probability back through the structure
/// reproduces the belief and plausibility tables.
pub fn canonical_model(bel: &BeliefTable) -> Result<CanonicalModel> {
    let bpa = bel.basic_probability_assignment()?;
    let theta = bel.theta().clone();
    let count = bpa.len();
    let w = Universe::new((0..count).map(|i| format!("w{i}")))?;
    let mut point_masses = Vec::with_capacity(count);
    let mut focal = BTreeMap::new();
    for (i, (a, mass)) in bpa.focal_elements().enumerate() {
        point_masses.push(mass);
        focal.insert(a.mask(), 1u64 << i);
    }
    let p = ProbabilityOnW {
        w: w.clone(),
        point_masses,
    };
    let bsa = BasicSetAssignment::from_masks(&theta, &w, focal);
    let structure = IntervalStructure::from_bsa(&bsa, theta.size())?;
    Ok(CanonicalModel { w, p, structure })
}
