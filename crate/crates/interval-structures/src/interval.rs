//! Interval structures: set-valued maps, axiom checking, duality, and the
//! equivalence with basic set assignments.
//!
//! A pair of total maps `(lower, upper)` from subsets of Θ to subsets of W
//! is an interval structure when the lower map preserves intersections and
//! the boundary sets (L1–L4), the upper map distributes over unions (U1–U4),
//! and the two are duals: `upper(A) = W − lower(¬A)`. Every interval
//! structure corresponds to exactly one basic set assignment, a partition of
//! W indexed by subsets of Θ, and the two directions of that correspondence
//! are implemented here as table algorithms.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::sets::{submasks, Subset, Universe};

/// A total mapping from subsets of one universe to subsets of another.
///
/// Small maps are stored as a dense table indexed by mask; maps over large
/// domains are stored as explicit entries plus a default value, so queries
/// stay total either way.
#[derive(Debug, Clone)]
pub struct SetValuedMap {
    theta: Universe,
    w: Universe,
    repr: MapRepr,
}

#[derive(Debug, Clone)]
enum MapRepr {
    Dense(Vec<u64>),
    Sparse {
        entries: BTreeMap<u64, u64>,
        default: u64,
    },
}

impl SetValuedMap {
    /// Builds a dense table by evaluating `f` on every subset of `theta`,
    /// in canonical order. Requires `theta.size() <= cap`.
    pub fn from_fn<F>(theta: &Universe, w: &Universe, cap: usize, mut f: F) -> Result<Self>
    where
        F: FnMut(&Subset) -> Subset,
    {
        let mut table = Vec::with_capacity(1usize << theta.size().min(63));
        for a in theta.powerset_with_cap(cap)? {
            let value = f(&a);
            if value.universe() != w {
                return Err(Error::UniverseMismatch);
            }
            table.push(value.mask());
        }
        Ok(SetValuedMap {
            theta: theta.clone(),
            w: w.clone(),
            repr: MapRepr::Dense(table),
        })
    }

    /// Builds a sparse map from explicit entries; every unlisted subset maps
    /// to `default`. Entries equal to the default are dropped.
    pub fn from_entries<I>(
        theta: &Universe,
        w: &Universe,
        default: &Subset,
        entries: I,
    ) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        if default.universe() != w {
            return Err(Error::UniverseMismatch);
        }
        let mut map = BTreeMap::new();
        for (key, value) in entries {
            if key.universe() != theta || value.universe() != w {
                return Err(Error::UniverseMismatch);
            }
            if map.insert(key.mask(), value.mask()).is_some() {
                return Err(Error::DuplicateEntry(key.to_string()));
            }
        }
        map.retain(|_, v| *v != default.mask());
        Ok(SetValuedMap {
            theta: theta.clone(),
            w: w.clone(),
            repr: MapRepr::Sparse {
                entries: map,
                default: default.mask(),
            },
        })
    }

    /// Constant map sending every subset to `value`.
    pub fn constant(theta: &Universe, value: &Subset) -> Self {
        SetValuedMap {
            theta: theta.clone(),
            w: value.universe().clone(),
            repr: MapRepr::Sparse {
                entries: BTreeMap::new(),
                default: value.mask(),
            },
        }
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn w(&self) -> &Universe {
        &self.w
    }

    pub(crate) fn value_mask(&self, a_mask: u64) -> u64 {
        match &self.repr {
            MapRepr::Dense(table) => table[a_mask as usize],
            MapRepr::Sparse { entries, default } => *entries.get(&a_mask).unwrap_or(default),
        }
    }

    /// The image of `a` under the map.
    pub fn value(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.w.subset_from_mask(self.value_mask(a.mask())))
    }

    /// The dual map `g(A) = W − f(¬A)`. Applying it twice returns the
    /// original map; the dual of a valid lower-bound map is the matching
    /// upper-bound map and vice versa.
    pub fn dualize(&self) -> SetValuedMap {
        let theta_full = self.theta.full_mask();
        let w_full = self.w.full_mask();
        let repr = match &self.repr {
            MapRepr::Dense(table) => {
                let dual: Vec<u64> = (0..table.len() as u64)
                    .map(|a| !table[(!a & theta_full) as usize] & w_full)
                    .collect();
                MapRepr::Dense(dual)
            }
            MapRepr::Sparse { entries, default } => MapRepr::Sparse {
                entries: entries
                    .iter()
                    .map(|(a, v)| (!a & theta_full, !v & w_full))
                    .collect(),
                default: !default & w_full,
            },
        };
        SetValuedMap {
            theta: self.theta.clone(),
            w: self.w.clone(),
            repr,
        }
    }

    /// Entries listed explicitly in the representation, in canonical order.
    /// For dense maps this is the full table.
    pub fn explicit_entries(&self) -> Vec<(Subset, Subset)> {
        match &self.repr {
            MapRepr::Dense(table) => table
                .iter()
                .enumerate()
                .map(|(a, v)| {
                    (
                        self.theta.subset_from_mask(a as u64),
                        self.w.subset_from_mask(*v),
                    )
                })
                .collect(),
            MapRepr::Sparse { entries, .. } => entries
                .iter()
                .map(|(a, v)| (self.theta.subset_from_mask(*a), self.w.subset_from_mask(*v)))
                .collect(),
        }
    }
}

impl PartialEq for SetValuedMap {
    fn eq(&self, other: &Self) -> bool {
        if self.theta != other.theta || self.w != other.w {
            return false;
        }
        match (&self.repr, &other.repr) {
            (MapRepr::Dense(a), MapRepr::Dense(b)) => a == b,
            (
                MapRepr::Sparse {
                    entries: ea,
                    default: da,
                },
                MapRepr::Sparse {
                    entries: eb,
                    default: db,
                },
            ) => {
                if da == db {
                    return ea == eb;
                }
                // Different defaults agree only where an explicit entry
                // shadows one of them, so the listed keys must cover the
                // whole domain and match pointwise.
                let n = self.theta.size();
                if n >= 64 {
                    return false;
                }
                let keys: std::collections::BTreeSet<u64> =
                    ea.keys().chain(eb.keys()).copied().collect();
                keys.len() == 1usize << n
                    && keys
                        .iter()
                        .all(|&k| self.value_mask(k) == other.value_mask(k))
            }
            // Mixed representations: the dense side bounds the domain, so a
            // full scan is feasible.
            (MapRepr::Dense(table), _) => {
                (0..table.len() as u64).all(|a| table[a as usize] == other.value_mask(a))
            }
            (_, MapRepr::Dense(table)) => {
                (0..table.len() as u64).all(|a| table[a as usize] == self.value_mask(a))
            }
        }
    }
}

impl Eq for SetValuedMap {}

/// Identifier for one axiom of an interval structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Axiom {
    L1,
    L2,
    L3,
    L4,
    U1,
    U2,
    U3,
    U4,
    Duality,
}

impl fmt::Display for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Axiom::L1 => "L1",
            Axiom::L2 => "L2",
            Axiom::L3 => "L3",
            Axiom::L4 => "L4",
            Axiom::U1 => "U1",
            Axiom::U2 => "U2",
            Axiom::U3 => "U3",
            Axiom::U4 => "U4",
            Axiom::Duality => "duality",
        };
        f.write_str(name)
    }
}

/// First counterexample found for a failed axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomWitness {
    pub a: Subset,
    pub b: Option<Subset>,
}

impl fmt::Display for AxiomWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.b {
            Some(b) => write!(f, "A={} B={}", self.a, b),
            None => write!(f, "A={}", self.a),
        }
    }
}

/// Per-axiom verdicts from a structure check, with the first counterexample
/// in canonical order for each failed axiom.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AxiomReport {
    checks: Vec<(Axiom, Option<AxiomWitness>)>,
}

impl AxiomReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|(_, w)| w.is_none())
    }

    pub fn checks(&self) -> &[(Axiom, Option<AxiomWitness>)] {
        &self.checks
    }

    pub fn witness(&self, axiom: Axiom) -> Option<&AxiomWitness> {
        self.checks
            .iter()
            .find(|(a, _)| *a == axiom)
            .and_then(|(_, w)| w.as_ref())
    }

    fn merge(mut self, other: AxiomReport) -> AxiomReport {
        self.checks.extend(other.checks);
        self
    }
}

impl fmt::Display for AxiomReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (axiom, witness) in &self.checks {
            if let Some(w) = witness {
                if !first {
                    write!(f, "; ")?;
                }
                write!(f, "{axiom} fails at {w}")?;
                first = false;
            }
        }
        if first {
            write!(f, "all axioms hold")?;
        }
        Ok(())
    }
}

fn guard_cap(theta: &Universe, cap: usize) -> Result<()> {
    if theta.size() > cap || theta.size() >= 64 {
        return Err(Error::CapExceeded {
            size: theta.size(),
            cap,
        });
    }
    Ok(())
}

/// Checks the lower-bound axioms exhaustively over all subset pairs:
/// L1 `f(A∪B) ⊇ f(A)∪f(B)`, L2 `f(A∩B) = f(A)∩f(B)`, L3 `f(∅) = ∅`,
/// L4 `f(Θ) = W`.
pub fn check_lower_axioms(f: &SetValuedMap, cap: usize) -> Result<AxiomReport> {
    guard_cap(f.theta(), cap)?;
    let theta = f.theta();
    let n = 1u64 << theta.size();
    let witness = |a: u64, b: Option<u64>| AxiomWitness {
        a: theta.subset_from_mask(a),
        b: b.map(|m| theta.subset_from_mask(m)),
    };

    let mut l1 = None;
    let mut l2 = None;
    for a in 0..n {
        let fa = f.value_mask(a);
        for b in 0..n {
            let fb = f.value_mask(b);
            if l1.is_none() && f.value_mask(a | b) & (fa | fb) != fa | fb {
                l1 = Some(witness(a, Some(b)));
            }
            if l2.is_none() && f.value_mask(a & b) != fa & fb {
                l2 = Some(witness(a, Some(b)));
            }
            if l1.is_some() && l2.is_some() {
                break;
            }
        }
        if l1.is_some() && l2.is_some() {
            break;
        }
    }
    let l3 = (f.value_mask(0) != 0).then(|| witness(0, None));
    let full = theta.full_mask();
    let l4 = (f.value_mask(full) != f.w().full_mask()).then(|| witness(full, None));

    Ok(AxiomReport {
        checks: vec![
            (Axiom::L1, l1),
            (Axiom::L2, l2),
            (Axiom::L3, l3),
            (Axiom::L4, l4),
        ],
    })
}

/// Checks the upper-bound axioms exhaustively over all subset pairs:
/// U1 `f(A∪B) = f(A)∪f(B)`, U2 `f(A∩B) ⊆ f(A)∩f(B)`, U3 `f(∅) = ∅`,
/// U4 `f(Θ) = W`.
pub fn check_upper_axioms(f: &SetValuedMap, cap: usize) -> Result<AxiomReport> {
    guard_cap(f.theta(), cap)?;
    let theta = f.theta();
    let n = 1u64 << theta.size();
    let witness = |a: u64, b: Option<u64>| AxiomWitness {
        a: theta.subset_from_mask(a),
        b: b.map(|m| theta.subset_from_mask(m)),
    };

    let mut u1 = None;
    let mut u2 = None;
    for a in 0..n {
        let fa = f.value_mask(a);
        for b in 0..n {
            let fb = f.value_mask(b);
            if u1.is_none() && f.value_mask(a | b) != fa | fb {
                u1 = Some(witness(a, Some(b)));
            }
            if u2.is_none() && f.value_mask(a & b) & !(fa & fb) != 0 {
                u2 = Some(witness(a, Some(b)));
            }
            if u1.is_some() && u2.is_some() {
                break;
            }
        }
        if u1.is_some() && u2.is_some() {
            break;
        }
    }
    let u3 = (f.value_mask(0) != 0).then(|| witness(0, None));
    let full = theta.full_mask();
    let u4 = (f.value_mask(full) != f.w().full_mask()).then(|| witness(full, None));

    Ok(AxiomReport {
        checks: vec![
            (Axiom::U1, u1),
            (Axiom::U2, u2),
            (Axiom::U3, u3),
            (Axiom::U4, u4),
        ],
    })
}

/// Checks `upper(A) = W − lower(¬A)` for every subset of a shared domain.
pub fn check_duality_axiom(
    lower: &SetValuedMap,
    upper: &SetValuedMap,
    cap: usize,
) -> Result<AxiomReport> {
    if lower.theta() != upper.theta() || lower.w() != upper.w() {
        return Err(Error::UniverseMismatch);
    }
    guard_cap(lower.theta(), cap)?;
    Ok(check_duality(lower, upper))
}

fn check_duality(lower: &SetValuedMap, upper: &SetValuedMap) -> AxiomReport {
    let theta = lower.theta();
    let n = 1u64 << theta.size();
    let theta_full = theta.full_mask();
    let w_full = lower.w().full_mask();
    let mut witness = None;
    for a in 0..n {
        if upper.value_mask(a) != !lower.value_mask(!a & theta_full) & w_full {
            witness = Some(AxiomWitness {
                a: theta.subset_from_mask(a),
                b: None,
            });
            break;
        }
    }
    AxiomReport {
        checks: vec![(Axiom::Duality, witness)],
    }
}

/// A validated pair of lower and upper bound maps.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalStructure {
    lower: SetValuedMap,
    upper: SetValuedMap,
}

impl IntervalStructure {
    /// Validates `(lower, upper)` against L1–L4, U1–U4 and duality, checking
    /// every subset pair. On failure the embedded report carries the first
    /// counterexample per axiom.
    pub fn new(lower: SetValuedMap, upper: SetValuedMap, cap: usize) -> Result<Self> {
        if lower.theta() != upper.theta() || lower.w() != upper.w() {
            return Err(Error::UniverseMismatch);
        }
        guard_cap(lower.theta(), cap)?;
        let report = check_lower_axioms(&lower, cap)?
            .merge(check_upper_axioms(&upper, cap)?)
            .merge(check_duality(&lower, &upper));
        if !report.passed() {
            return Err(Error::Axioms(report));
        }
        Ok(IntervalStructure { lower, upper })
    }

    /// Derives the max lower and min upper bound tables of a basic set
    /// assignment: `lower(A) = ⋃ j(B)` over focal sets `B ⊆ A`, and
    /// `upper(A) = ⋃ j(B)` over focal sets meeting `A`. The result is an
    /// interval structure by construction, so no axiom pass is run.
    pub fn from_bsa(bsa: &BasicSetAssignment, cap: usize) -> Result<Self> {
        guard_cap(bsa.theta(), cap)?;
        let n = 1usize << bsa.theta().size();
        let mut lower = vec![0u64; n];
        let mut upper = vec![0u64; n];
        for a in 0..n as u64 {
            let (mut low, mut up) = (0u64, 0u64);
            for (&b, &v) in &bsa.focal {
                if b & !a == 0 {
                    low |= v;
                }
                if b & a != 0 {
                    up |= v;
                }
            }
            lower[a as usize] = low;
            upper[a as usize] = up;
        }
        Ok(IntervalStructure {
            lower: SetValuedMap {
                theta: bsa.theta.clone(),
                w: bsa.w.clone(),
                repr: MapRepr::Dense(lower),
            },
            upper: SetValuedMap {
                theta: bsa.theta.clone(),
                w: bsa.w.clone(),
                repr: MapRepr::Dense(upper),
            },
        })
    }

    /// Recovers the basic set assignment:
    /// `j(A) = lower(A) − ⋃ lower(B)` over proper subsets `B ⊂ A`, keeping
    /// only non-empty values.
    pub fn to_bsa(&self) -> BasicSetAssignment {
        let theta = self.lower.theta();
        let n = 1u64 << theta.size();
        let mut focal = BTreeMap::new();
        for a in 0..n {
            let mut covered = 0u64;
            for b in submasks(a) {
                if b != a {
                    covered |= self.lower.value_mask(b);
                }
            }
            let value = self.lower.value_mask(a) & !covered;
            if value != 0 {
                focal.insert(a, value);
            }
        }
        BasicSetAssignment {
            theta: theta.clone(),
            w: self.lower.w().clone(),
            focal,
        }
    }

    pub fn theta(&self) -> &Universe {
        self.lower.theta()
    }

    pub fn w(&self) -> &Universe {
        self.lower.w()
    }

    pub fn lower_map(&self) -> &SetValuedMap {
        &self.lower
    }

    pub fn upper_map(&self) -> &SetValuedMap {
        &self.upper
    }

    pub fn lower(&self, a: &Subset) -> Result<Subset> {
        self.lower.value(a)
    }

    pub fn upper(&self, a: &Subset) -> Result<Subset> {
        self.upper.value(a)
    }
}

/// A sparse map from subsets of Θ to pairwise-disjoint non-empty subsets of
/// W that together cover W; the set-valued counterpart of a basic
/// probability assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BasicSetAssignment {
    theta: Universe,
    w: Universe,
    focal: BTreeMap<u64, u64>,
}

impl BasicSetAssignment {
    /// Validates the three defining axioms: nothing assigned to the empty
    /// set, values disjoint, values covering W. Entries with empty values
    /// are dropped.
    pub fn new<I>(theta: &Universe, w: &Universe, entries: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Subset, Subset)>,
    {
        let mut focal = BTreeMap::new();
        for (key, value) in entries {
            if key.universe() != theta || value.universe() != w {
                return Err(Error::UniverseMismatch);
            }
            if value.is_empty() {
                continue;
            }
            if key.is_empty() {
                return Err(Error::BsaEmptyKey);
            }
            if focal.insert(key.mask(), value.mask()).is_some() {
                return Err(Error::DuplicateEntry(key.to_string()));
            }
        }
        let mut covered = 0u64;
        for (&a, &v) in &focal {
            if covered & v != 0 {
                let overlap = covered & v;
                let other = focal
                    .iter()
                    .find(|(&b, &bv)| b != a && bv & overlap != 0)
                    .map(|(&b, _)| b)
                    .unwrap_or(0);
                return Err(Error::BsaOverlap {
                    a: w.subset_from_mask(v).to_string(),
                    b: w.subset_from_mask(focal.get(&other).copied().unwrap_or(0))
                        .to_string(),
                    common: w.subset_from_mask(overlap).to_string(),
                });
            }
            covered |= v;
        }
        if covered != w.full_mask() {
            let missing = w.subset_from_mask(!covered & w.full_mask());
            return Err(Error::BsaIncomplete {
                missing: missing.to_string(),
            });
        }
        Ok(BasicSetAssignment {
            theta: theta.clone(),
            w: w.clone(),
            focal,
        })
    }

    pub(crate) fn from_masks(theta: &Universe, w: &Universe, focal: BTreeMap<u64, u64>) -> Self {
        BasicSetAssignment {
            theta: theta.clone(),
            w: w.clone(),
            focal,
        }
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn w(&self) -> &Universe {
        &self.w
    }

    /// Number of focal sets.
    pub fn len(&self) -> usize {
        self.focal.len()
    }

    pub fn is_empty(&self) -> bool {
        self.focal.is_empty()
    }

    /// Focal sets and their values in canonical order.
    pub fn focal_sets(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.focal
            .iter()
            .map(|(&a, &v)| (self.theta.subset_from_mask(a), self.w.subset_from_mask(v)))
    }

    /// The assigned value for `a`; empty for non-focal subsets.
    pub fn value(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self
            .w
            .subset_from_mask(self.focal.get(&a.mask()).copied().unwrap_or(0)))
    }

    /// Point query for the max lower bound of `a`, usable at any universe
    /// size: the union of values over focal sets contained in `a`.
    pub fn lower_bound(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        let mask = a.mask();
        let mut low = 0u64;
        for (&b, &v) in &self.focal {
            if b & !mask == 0 {
                low |= v;
            }
        }
        Ok(self.w.subset_from_mask(low))
    }

    /// Point query for the min upper bound of `a`: the union of values over
    /// focal sets meeting `a`.
    pub fn upper_bound(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        let mask = a.mask();
        let mut up = 0u64;
        for (&b, &v) in &self.focal {
            if b & mask != 0 {
                up |= v;
            }
        }
        Ok(self.w.subset_from_mask(up))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::DEFAULT_ENUM_CAP;
    use crate::testdata::{golden, GoldenTables};
    use proptest::prelude::*;

    fn cap() -> usize {
        DEFAULT_ENUM_CAP
    }

    #[test]
    fn golden_lower_table_satisfies_lower_axioms() {
        let g = golden();
        let report = check_lower_axioms(&g.lower, cap()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn golden_upper_table_satisfies_upper_axioms() {
        let g = golden();
        let report = check_upper_axioms(&g.upper, cap()).unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn constant_full_map_fails_only_l3() {
        let g = golden();
        let map = SetValuedMap::constant(&g.theta, &g.w.full_set());
        let report = check_lower_axioms(&map, cap()).unwrap();
        assert!(report.witness(Axiom::L1).is_none());
        assert!(report.witness(Axiom::L2).is_none());
        assert!(report.witness(Axiom::L3).is_some());
        assert!(report.witness(Axiom::L4).is_none());
    }

    #[test]
    fn constant_empty_map_fails_only_l4() {
        let g = golden();
        let map = SetValuedMap::constant(&g.theta, &g.w.empty_set());
        let report = check_lower_axioms(&map, cap()).unwrap();
        assert!(report.witness(Axiom::L1).is_none());
        assert!(report.witness(Axiom::L2).is_none());
        assert!(report.witness(Axiom::L3).is_none());
        assert!(report.witness(Axiom::L4).is_some());
    }

    #[test]
    fn constant_empty_map_fails_u4() {
        let g = golden();
        let map = SetValuedMap::constant(&g.theta, &g.w.empty_set());
        let report = check_upper_axioms(&map, cap()).unwrap();
        assert!(report.witness(Axiom::U4).is_some());
        assert!(report.witness(Axiom::U1).is_none());
        assert!(report.witness(Axiom::U2).is_none());
        assert!(report.witness(Axiom::U3).is_none());
    }

    // A map that breaks L2 while keeping L1, L3 and L4: two incomparable
    // singletons sharing a value, meeting in the empty set.
    #[test]
    fn witness_failing_only_l2() {
        let theta = Universe::new(["a", "b"]).unwrap();
        let w = Universe::new(["x", "y"]).unwrap();
        let entry = |s: &[&str], v: &[&str]| {
            (
                theta.subset(s.to_vec()).unwrap(),
                w.subset(v.to_vec()).unwrap(),
            )
        };
        let map = SetValuedMap::from_entries(
            &theta,
            &w,
            &w.empty_set(),
            [
                entry(&["a"], &["x"]),
                entry(&["b"], &["x"]),
                entry(&["a", "b"], &["x", "y"]),
            ],
        )
        .unwrap();
        let report = check_lower_axioms(&map, cap()).unwrap();
        assert!(report.witness(Axiom::L1).is_none());
        assert!(report.witness(Axiom::L2).is_some());
        assert!(report.witness(Axiom::L3).is_none());
        assert!(report.witness(Axiom::L4).is_none());
    }

    // L2 implies monotonicity implies L1, so no map can fail L1 alone; the
    // dual argument pins U2 to U1. This is checked here so the dependency
    // stays on record.
    proptest! {
        #[test]
        fn l2_forces_l1(values in proptest::collection::vec(0u64..16, 8)) {
            let theta = Universe::new(["a", "b", "c"]).unwrap();
            let w = Universe::new(["x", "y", "z", "u"]).unwrap();
            let map = SetValuedMap {
                theta: theta.clone(),
                w,
                repr: MapRepr::Dense(values),
            };
            let report = check_lower_axioms(&map, 16).unwrap();
            if report.witness(Axiom::L2).is_none() {
                prop_assert!(report.witness(Axiom::L1).is_none());
            }
        }

        #[test]
        fn u1_forces_u2(values in proptest::collection::vec(0u64..16, 8)) {
            let theta = Universe::new(["a", "b", "c"]).unwrap();
            let w = Universe::new(["x", "y", "z", "u"]).unwrap();
            let map = SetValuedMap {
                theta: theta.clone(),
                w,
                repr: MapRepr::Dense(values),
            };
            let report = check_upper_axioms(&map, 16).unwrap();
            if report.witness(Axiom::U1).is_none() {
                prop_assert!(report.witness(Axiom::U2).is_none());
            }
        }
    }

    #[test]
    fn golden_pair_validates() {
        let g = golden();
        let structure = IntervalStructure::new(g.lower.clone(), g.upper.clone(), cap()).unwrap();
        assert_eq!(structure.lower_map(), &g.lower);
        assert_eq!(structure.upper_map(), &g.upper);
    }

    #[test]
    fn perturbed_upper_breaks_duality() {
        let g = golden();
        // Remove w3 from upper({θ1}).
        let mut entries: Vec<(Subset, Subset)> = g.upper.explicit_entries();
        let key = g.theta.subset(["t1"]).unwrap();
        for (a, v) in entries.iter_mut() {
            if *a == key {
                *v = v.difference(&g.w.subset(["w3"]).unwrap()).unwrap();
            }
        }
        let upper = SetValuedMap::from_fn(&g.theta, &g.w, cap(), |a| {
            entries.iter().find(|(k, _)| k == a).unwrap().1.clone()
        })
        .unwrap();
        match IntervalStructure::new(g.lower.clone(), upper, cap()) {
            Err(Error::Axioms(report)) => {
                let witness = report.witness(Axiom::Duality).expect("duality must fail");
                assert_eq!(witness.a, key);
            }
            other => panic!("expected axiom failure, got {other:?}"),
        }
    }

    #[test]
    fn vacuous_structure_validates() {
        let g = golden();
        let lower = SetValuedMap::from_fn(&g.theta, &g.w, cap(), |a| {
            if a.is_full() {
                g.w.full_set()
            } else {
                g.w.empty_set()
            }
        })
        .unwrap();
        let upper = SetValuedMap::from_fn(&g.theta, &g.w, cap(), |a| {
            if a.is_empty() {
                g.w.empty_set()
            } else {
                g.w.full_set()
            }
        })
        .unwrap();
        assert!(IntervalStructure::new(lower, upper, cap()).is_ok());
    }

    // Over a one-element frame the only subsets are the boundaries, so a
    // single map serves as both bounds of a valid structure.
    #[test]
    fn one_element_frame_boundary_map_is_self_dual() {
        let theta = Universe::new(["t"]).unwrap();
        let w = Universe::new(["x", "y"]).unwrap();
        let map = SetValuedMap::from_fn(&theta, &w, cap(), |a| {
            if a.is_empty() {
                w.empty_set()
            } else {
                w.full_set()
            }
        })
        .unwrap();
        assert!(IntervalStructure::new(map.clone(), map, cap()).is_ok());
    }

    #[test]
    fn axiom_checks_respect_the_cap() {
        let theta = Universe::new((0..17).map(|i| format!("t{i}"))).unwrap();
        let w = Universe::new(["x"]).unwrap();
        let map = SetValuedMap::constant(&theta, &w.empty_set());
        assert!(matches!(
            check_lower_axioms(&map, DEFAULT_ENUM_CAP),
            Err(Error::CapExceeded { size: 17, cap: 16 })
        ));
        assert!(matches!(
            check_upper_axioms(&map, DEFAULT_ENUM_CAP),
            Err(Error::CapExceeded { .. })
        ));
    }

    #[test]
    fn dualize_golden_lower_gives_golden_upper() {
        let g = golden();
        assert_eq!(g.lower.dualize(), g.upper);
        assert_eq!(g.upper.dualize(), g.lower);
    }

    #[test]
    fn dualize_vacuous_lower() {
        let g = golden();
        let lower = SetValuedMap::from_fn(&g.theta, &g.w, cap(), |a| {
            if a.is_full() {
                g.w.full_set()
            } else {
                g.w.empty_set()
            }
        })
        .unwrap();
        let dual = lower.dualize();
        for a in g.theta.powerset().unwrap() {
            let expected = if a.is_empty() {
                g.w.empty_set()
            } else {
                g.w.full_set()
            };
            assert_eq!(dual.value(&a).unwrap(), expected);
        }
    }

    #[test]
    fn golden_bsa_produces_golden_tables() {
        let g = golden();
        let structure = IntervalStructure::from_bsa(&g.bsa, cap()).unwrap();
        assert_eq!(structure.lower_map(), &g.lower);
        assert_eq!(structure.upper_map(), &g.upper);
    }

    #[test]
    fn full_focal_bsa_gives_vacuous_structure() {
        let g = golden();
        let bsa = BasicSetAssignment::new(&g.theta, &g.w, [(g.theta.full_set(), g.w.full_set())])
            .unwrap();
        let structure = IntervalStructure::from_bsa(&bsa, cap()).unwrap();
        for a in g.theta.powerset().unwrap() {
            if a.is_full() {
                assert!(structure.lower(&a).unwrap().is_full());
            } else {
                assert!(structure.lower(&a).unwrap().is_empty());
            }
            if a.is_empty() {
                assert!(structure.upper(&a).unwrap().is_empty());
            } else {
                assert!(structure.upper(&a).unwrap().is_full());
            }
        }
    }

    #[test]
    fn singleton_focal_sets_collapse_bounds() {
        let theta = Universe::new(["a", "b", "c"]).unwrap();
        let w = Universe::new(["x", "y", "z"]).unwrap();
        let bsa = BasicSetAssignment::new(
            &theta,
            &w,
            [
                (theta.subset(["a"]).unwrap(), w.subset(["x"]).unwrap()),
                (theta.subset(["b"]).unwrap(), w.subset(["y"]).unwrap()),
                (theta.subset(["c"]).unwrap(), w.subset(["z"]).unwrap()),
            ],
        )
        .unwrap();
        let structure = IntervalStructure::from_bsa(&bsa, cap()).unwrap();
        for a in theta.powerset().unwrap() {
            // Brute-force union over singleton focal sets inside / meeting a.
            let mut expected = w.empty_set();
            for (b, v) in bsa.focal_sets() {
                if b.is_subset_of(&a).unwrap() {
                    expected = expected.union(&v).unwrap();
                }
            }
            assert_eq!(structure.lower(&a).unwrap(), expected);
            assert_eq!(structure.upper(&a).unwrap(), expected);
        }
    }

    #[test]
    fn golden_lower_recovers_golden_bsa() {
        let g = golden();
        let structure = IntervalStructure::new(g.lower.clone(), g.upper.clone(), cap()).unwrap();
        assert_eq!(structure.to_bsa(), g.bsa);
    }

    #[test]
    fn vacuous_structure_has_full_focal_bsa() {
        let g = golden();
        let bsa = BasicSetAssignment::new(&g.theta, &g.w, [(g.theta.full_set(), g.w.full_set())])
            .unwrap();
        let structure = IntervalStructure::from_bsa(&bsa, cap()).unwrap();
        assert_eq!(structure.to_bsa(), bsa);
    }

    #[test]
    fn bsa_axiom_violations_are_rejected() {
        let g = golden();
        // A1: empty key with a non-empty value.
        assert!(matches!(
            BasicSetAssignment::new(
                &g.theta,
                &g.w,
                [(g.theta.empty_set(), g.w.subset(["w1"]).unwrap())]
            ),
            Err(Error::BsaEmptyKey)
        ));
        // A2: values do not cover W.
        assert!(matches!(
            BasicSetAssignment::new(
                &g.theta,
                &g.w,
                [(g.theta.full_set(), g.w.subset(["w1"]).unwrap())]
            ),
            Err(Error::BsaIncomplete { .. })
        ));
        // A3: overlapping values.
        assert!(matches!(
            BasicSetAssignment::new(
                &g.theta,
                &g.w,
                [
                    (
                        g.theta.subset(["t1"]).unwrap(),
                        g.w.subset(["w1", "w2", "w3"]).unwrap()
                    ),
                    (
                        g.theta.subset(["t2"]).unwrap(),
                        g.w.subset(["w3", "w4", "w5"]).unwrap()
                    ),
                ]
            ),
            Err(Error::BsaOverlap { .. })
        ));
    }

    fn arbitrary_bsa(theta_size: usize, w_size: usize, picks: &[usize]) -> BasicSetAssignment {
        // Each element of W joins the focal set selected by picks[i], an
        // index into the non-empty subsets of Θ.
        let theta = Universe::new((0..theta_size).map(|i| format!("t{i}"))).unwrap();
        let w = Universe::new((0..w_size).map(|i| format!("w{i}"))).unwrap();
        let mut focal: BTreeMap<u64, u64> = BTreeMap::new();
        for (i, pick) in picks.iter().enumerate().take(w_size) {
            let a = (pick % ((1 << theta_size) - 1)) as u64 + 1;
            *focal.entry(a).or_default() |= 1 << i;
        }
        BasicSetAssignment::from_masks(&theta, &w, focal)
    }

    proptest! {
        // Both conversion directions invert each other, and the dual of a valid lower map
        // passing the upper axioms.
        #[test]
        fn bsa_roundtrip(picks in proptest::collection::vec(0usize..15, 6)) {
            let bsa = arbitrary_bsa(4, 6, &picks);
            let structure = IntervalStructure::from_bsa(&bsa, 16).unwrap();
            prop_assert_eq!(structure.to_bsa(), bsa);
        }

        #[test]
        fn dual_of_lower_passes_upper_axioms(picks in proptest::collection::vec(0usize..15, 6)) {
            let bsa = arbitrary_bsa(4, 6, &picks);
            let structure = IntervalStructure::from_bsa(&bsa, 16).unwrap();
            let dual = structure.lower_map().dualize();
            prop_assert_eq!(&dual, structure.upper_map());
            let report = check_upper_axioms(&dual, 16).unwrap();
            prop_assert!(report.passed());
        }

        #[test]
        fn dualize_is_involutive(values in proptest::collection::vec(0u64..64, 8)) {
            let theta = Universe::new(["a", "b", "c"]).unwrap();
            let w = Universe::new(["p", "q", "r", "s", "t", "u"]).unwrap();
            let map = SetValuedMap {
                theta,
                w,
                repr: MapRepr::Dense(values),
            };
            prop_assert_eq!(map.dualize().dualize(), map);
        }

        #[test]
        fn structure_properties_hold(picks in proptest::collection::vec(0usize..15, 6)) {
            let bsa = arbitrary_bsa(4, 6, &picks);
            let structure = IntervalStructure::from_bsa(&bsa, 16).unwrap();
            let theta = structure.theta().clone();
            for a in theta.powerset().unwrap() {
                let low = structure.lower(&a).unwrap();
                let up = structure.upper(&a).unwrap();
                // P1 and P2.
                prop_assert!(low.is_subset_of(&up).unwrap());
                prop_assert_eq!(structure.lower(&a.complement()).unwrap(), up.complement());
                // P3 against every superset.
                for b in theta.powerset().unwrap() {
                    if a.is_subset_of(&b).unwrap() {
                        prop_assert!(low.is_subset_of(&structure.lower(&b).unwrap()).unwrap());
                        prop_assert!(up.is_subset_of(&structure.upper(&b).unwrap()).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn sparse_maps_with_different_defaults_compare_pointwise() {
        let theta = Universe::new(["a"]).unwrap();
        let w = Universe::new(["x", "y"]).unwrap();
        let first = SetValuedMap::from_entries(
            &theta,
            &w,
            &w.subset(["x"]).unwrap(),
            [
                (theta.empty_set(), w.subset(["y"]).unwrap()),
                (theta.full_set(), w.full_set()),
            ],
        )
        .unwrap();
        let second = SetValuedMap::from_entries(
            &theta,
            &w,
            &w.subset(["y"]).unwrap(),
            [(theta.full_set(), w.full_set())],
        )
        .unwrap();
        // Both send {} to {y} and {a} to {x,y}.
        assert_eq!(first, second);
        let third = SetValuedMap::constant(&theta, &w.subset(["y"]).unwrap());
        assert_ne!(first, third);
    }

    #[test]
    fn core_types_are_send_and_sync() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<SetValuedMap>();
        assert_send_sync::<IntervalStructure>();
        assert_send_sync::<BasicSetAssignment>();
    }

    #[test]
    fn point_queries_match_tables() {
        let g: GoldenTables = golden();
        let structure = IntervalStructure::from_bsa(&g.bsa, cap()).unwrap();
        for a in g.theta.powerset().unwrap() {
            assert_eq!(g.bsa.lower_bound(&a).unwrap(), structure.lower(&a).unwrap());
            assert_eq!(g.bsa.upper_bound(&a).unwrap(), structure.upper(&a).unwrap());
        }
    }
}
