//! Rule-base synthesis: expert lower/upper assignments, the consistency
//! check, basic-set-assignment construction, tightest (max-min) bounds, and
//! a closure oracle over the rule inference axioms used as a correctness
//! reference. Incidence structures and their boundedness checks live here
//! too.
//!
//! An expert provides, per proposition `A ⊆ Θ`, a lower assignment
//! `G(A) ⊆ W` ("the situations in G(A) definitely indicate A") and an upper
//! assignment `Ḡ(A)` ("only situations in Ḡ(A) possibly indicate A").
//! Unlisted entries default to `∅` and `W`, which claim nothing. Synthesis
//! folds the upper entries into the lower map through complements, then
//! assigns each situation to the intersection of all propositions whose
//! augmented lower bound contains it. An empty intersection means the rules
//! contradict each other; otherwise the result is a basic set assignment
//! whose derived bounds are the tightest bounds admitting the input.

use std::collections::BTreeMap;
use std::fmt;

use crate::error::{Error, Result};
use crate::interval::{BasicSetAssignment, IntervalStructure, SetValuedMap};
use crate::sets::{Subset, Universe};

/// Size bound for the closure oracle, which explores the rule space per
/// proposition rather than per rule set.
pub const ORACLE_MAX_THETA: usize = 3;
pub const ORACLE_MAX_W: usize = 4;

/// Expert lower and upper assignments over shared universes.
///
/// Only explicit entries are stored; `lower` defaults to the empty set and
/// `upper` to all of W. Entries equal to their default are dropped on
/// insertion. Conflicting entries are accepted here and surface as
/// inconsistency during [`Assignment::synthesize`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Assignment {
    theta: Universe,
    w: Universe,
    lower: BTreeMap<u64, u64>,
    upper: BTreeMap<u64, u64>,
}

impl Assignment {
    pub fn new(theta: &Universe, w: &Universe) -> Self {
        Assignment {
            theta: theta.clone(),
            w: w.clone(),
            lower: BTreeMap::new(),
            upper: BTreeMap::new(),
        }
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn w(&self) -> &Universe {
        &self.w
    }

    fn check_entry(&self, a: &Subset, value: &Subset) -> Result<()> {
        if a.universe() != &self.theta || value.universe() != &self.w {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    /// Records `G(a) = value`. An empty value equals the default and is a
    /// no-op.
    pub fn set_lower(&mut self, a: &Subset, value: &Subset) -> Result<()> {
        self.check_entry(a, value)?;
        if value.is_empty() {
            return Ok(());
        }
        if self.lower.contains_key(&a.mask()) {
            return Err(Error::DuplicateEntry(a.to_string()));
        }
        self.lower.insert(a.mask(), value.mask());
        Ok(())
    }

    /// Records `Ḡ(a) = value`. A full value equals the default and is a
    /// no-op.
    pub fn set_upper(&mut self, a: &Subset, value: &Subset) -> Result<()> {
        self.check_entry(a, value)?;
        if value.is_full() {
            return Ok(());
        }
        if self.upper.contains_key(&a.mask()) {
            return Err(Error::DuplicateEntry(a.to_string()));
        }
        self.upper.insert(a.mask(), value.mask());
        Ok(())
    }

    /// Explicit lower entries in canonical order.
    pub fn lower_entries(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.lower
            .iter()
            .map(|(&a, &v)| (self.theta.subset_from_mask(a), self.w.subset_from_mask(v)))
    }

    /// Explicit upper entries in canonical order.
    pub fn upper_entries(&self) -> impl Iterator<Item = (Subset, Subset)> + '_ {
        self.upper
            .iter()
            .map(|(&a, &v)| (self.theta.subset_from_mask(a), self.w.subset_from_mask(v)))
    }

    /// The lower assignment for `a`, explicit or default.
    pub fn lower_of(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self
            .w
            .subset_from_mask(self.lower.get(&a.mask()).copied().unwrap_or(0)))
    }

    /// The upper assignment for `a`, explicit or default.
    pub fn upper_of(&self, a: &Subset) -> Result<Subset> {
        if a.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        Ok(self.w.subset_from_mask(
            self.upper
                .get(&a.mask())
                .copied()
                .unwrap_or(self.w.full_mask()),
        ))
    }

    fn normalized_masks(&self) -> BTreeMap<u64, u64> {
        let theta_full = self.theta.full_mask();
        let w_full = self.w.full_mask();
        let mut normalized = self.lower.clone();
        // Each upper entry Ḡ(A) strengthens the lower bound of ¬A by the
        // situations it excludes: G'(¬A) = G(¬A) ∪ (W − Ḡ(A)).
        for (&a, &v) in &self.upper {
            let gained = !v & w_full;
            if gained != 0 {
                *normalized.entry(!a & theta_full).or_insert(0) |= gained;
            }
        }
        normalized.retain(|_, v| *v != 0);
        normalized
    }

    /// The normalized lower map `G'`: the explicit lower entries augmented
    /// with the complements of the upper entries, as a sparse map with
    /// default `∅`.
    pub fn normalize(&self) -> SetValuedMap {
        let entries = self
            .normalized_masks()
            .into_iter()
            .map(|(a, v)| (self.theta.subset_from_mask(a), self.w.subset_from_mask(v)));
        SetValuedMap::from_entries(&self.theta, &self.w, &self.w.empty_set(), entries)
            .expect("normalized entries share the assignment universes")
    }

    /// Runs the synthesis algorithm. Each situation is assigned to the
    /// intersection of all propositions whose normalized lower bound
    /// contains it (to the full set when there are none). Returns the
    /// resulting basic set assignment, or the first situation, in canonical
    /// order, whose propositions have an empty intersection.
    pub fn synthesize(&self) -> Result<BasicSetAssignment> {
        let normalized = self.normalized_masks();
        let theta_full = self.theta.full_mask();
        let mut focal: BTreeMap<u64, u64> = BTreeMap::new();
        for w_index in 0..self.w.size() {
            let w_bit = 1u64 << w_index;
            let mut member_of: Vec<u64> = Vec::new();
            let mut meet = theta_full;
            for (&a, &v) in &normalized {
                if v & w_bit != 0 {
                    member_of.push(a);
                    meet &= a;
                }
            }
            if !member_of.is_empty() && meet == 0 {
                let sets: Vec<String> = member_of
                    .iter()
                    .map(|&a| self.theta.subset_from_mask(a).to_string())
                    .collect();
                return Err(Error::Inconsistent {
                    w: self.w.label(w_index).unwrap().to_string(),
                    sets: sets.join(" and "),
                });
            }
            *focal.entry(meet).or_insert(0) |= w_bit;
        }
        Ok(BasicSetAssignment::from_masks(&self.theta, &self.w, focal))
    }
}

/// Derives the tightest bound tables of a synthesized basic set assignment.
/// Equivalent to [`IntervalStructure::from_bsa`]; named for its role in the
/// synthesis pipeline.
pub fn max_min_bounds(bsa: &BasicSetAssignment, cap: usize) -> Result<IntervalStructure> {
    IntervalStructure::from_bsa(bsa, cap)
}

/// Where an interval structure escapes an assignment.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InsideViolation {
    /// The proposition at which the chain `G(A) ⊆ lower(A)` or
    /// `upper(A) ⊆ Ḡ(A)` breaks.
    pub a: Subset,
    /// True when the lower side broke, false for the upper side.
    pub lower_side: bool,
}

impl fmt::Display for InsideViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.lower_side {
            write!(
                f,
                "lower bound of {} does not contain the assigned lower set",
                self.a
            )
        } else {
            write!(
                f,
                "upper bound of {} exceeds the assigned upper set",
                self.a
            )
        }
    }
}

/// Checks `G(A) ⊆ lower(A) ⊆ upper(A) ⊆ Ḡ(A)` for every proposition, with
/// defaults for unlisted entries. Unlisted entries hold trivially, so only
/// the explicit ones are examined. Returns the first violation in canonical
/// order, or `None` when the structure is inside the assignment.
pub fn check_inside(
    structure: &IntervalStructure,
    g: &Assignment,
) -> Result<Option<InsideViolation>> {
    if structure.theta() != g.theta() || structure.w() != g.w() {
        return Err(Error::UniverseMismatch);
    }
    let mut violations: Vec<(u64, InsideViolation)> = Vec::new();
    for (a, value) in g.lower_entries() {
        if !value.is_subset_of(&structure.lower(&a)?)? {
            violations.push((
                a.mask(),
                InsideViolation {
                    a,
                    lower_side: true,
                },
            ));
        }
    }
    for (a, value) in g.upper_entries() {
        if !structure.upper(&a)?.is_subset_of(&value)? {
            violations.push((
                a.mask(),
                InsideViolation {
                    a,
                    lower_side: false,
                },
            ));
        }
    }
    violations.sort_by_key(|(mask, v)| (*mask, !v.lower_side));
    Ok(violations.into_iter().next().map(|(_, v)| v))
}

/// A decision rule: deterministic `lhs -> rhs` ("the situations in lhs
/// definitely indicate rhs") or non-deterministic `lhs ~> rhs` ("only the
/// situations in lhs possibly indicate rhs").
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RuleKind {
    Deterministic,
    NonDeterministic,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Rule {
    pub kind: RuleKind,
    pub lhs: Subset,
    pub rhs: Subset,
}

impl Rule {
    pub fn deterministic(lhs: Subset, rhs: Subset) -> Self {
        Rule {
            kind: RuleKind::Deterministic,
            lhs,
            rhs,
        }
    }

    pub fn non_deterministic(lhs: Subset, rhs: Subset) -> Self {
        Rule {
            kind: RuleKind::NonDeterministic,
            lhs,
            rhs,
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            RuleKind::Deterministic => write!(f, "{} -> {}", self.lhs, self.rhs),
            RuleKind::NonDeterministic => write!(f, "{} ~> {}", self.lhs, self.rhs),
        }
    }
}

/// A set of decision rules over shared universes.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RuleSet {
    theta: Universe,
    w: Universe,
    rules: Vec<Rule>,
}

impl RuleSet {
    pub fn new(theta: &Universe, w: &Universe) -> Self {
        RuleSet {
            theta: theta.clone(),
            w: w.clone(),
            rules: Vec::new(),
        }
    }

    /// The rules an assignment states directly.
    pub fn from_assignment(g: &Assignment) -> Self {
        let mut rules = RuleSet::new(g.theta(), g.w());
        for (a, v) in g.lower_entries() {
            rules.rules.push(Rule::deterministic(v, a));
        }
        for (a, v) in g.upper_entries() {
            rules.rules.push(Rule::non_deterministic(v, a));
        }
        rules
    }

    pub fn push(&mut self, rule: Rule) -> Result<()> {
        if rule.lhs.universe() != &self.w || rule.rhs.universe() != &self.theta {
            return Err(Error::UniverseMismatch);
        }
        self.rules.push(rule);
        Ok(())
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn w(&self) -> &Universe {
        &self.w
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }
}

/// Reference oracle: closes a rule set under the inference axioms and
/// returns the per-proposition extremes.
///
/// The closed rule family for each proposition is downward-closed and
/// union-closed on the deterministic side, and upward-closed and
/// intersection-closed on the non-deterministic side, so it is tracked by
/// its maximal deterministic left-hand side and minimal non-deterministic
/// left-hand side. The axioms become monotone updates on those extremes,
/// iterated to a fixpoint:
///
/// * dual coupling: a deterministic rule for ¬A trims the non-deterministic
///   extreme of A, and a non-deterministic rule for ¬A extends the
///   deterministic extreme of A;
/// * conjunction: deterministic extremes intersect into A∩B, and
///   non-deterministic extremes intersect onto A∩B;
/// * weakening: a deterministic rule for a subset proposition carries up to
///   its supersets.
///
/// The tautological rules `W -> Θ` and `∅ ~> ∅`, which hold in every
/// interval structure, seed the extremes. The rule set is inconsistent when
/// some proposition ends with a deterministic extreme not inside its
/// non-deterministic extreme; the witness is the first such proposition in
/// canonical order.
///
/// Intended as a small-instance reference: universes are limited to
/// [`ORACLE_MAX_THETA`] propositions over [`ORACLE_MAX_W`] situations.
#[allow(clippy::needless_range_loop)] // masks double as indices throughout
pub fn closure_oracle(rules: &RuleSet) -> Result<(SetValuedMap, SetValuedMap)> {
    let theta = rules.theta();
    let w = rules.w();
    if theta.size() > ORACLE_MAX_THETA || w.size() > ORACLE_MAX_W {
        return Err(Error::OracleLimit {
            theta: theta.size(),
            w: w.size(),
            max_theta: ORACLE_MAX_THETA,
            max_w: ORACLE_MAX_W,
        });
    }
    let n = 1usize << theta.size();
    let theta_full = theta.full_mask();
    let w_full = w.full_mask();

    let mut low = vec![0u64; n];
    let mut up = vec![w_full; n];
    for rule in rules.rules() {
        let a = rule.rhs.mask() as usize;
        match rule.kind {
            RuleKind::Deterministic => low[a] |= rule.lhs.mask(),
            RuleKind::NonDeterministic => up[a] &= rule.lhs.mask(),
        }
    }
    low[theta_full as usize] = w_full;
    up[0] = 0;

    loop {
        let mut changed = false;
        for a in 0..n {
            // X ~> ¬A and Y -> A together force Y ∪ (W − X) -> A.
            let not_a = (!(a as u64) & theta_full) as usize;
            let gained = !up[not_a] & w_full;
            if gained & !low[a] != 0 {
                low[a] |= gained;
                changed = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                // X -> A, Y -> B and Z -> A∩B force (X∩Y) ∪ Z -> A∩B.
                let gained = low[a] & low[b];
                let target = a & b;
                if gained & !low[target] != 0 {
                    low[target] |= gained;
                    changed = true;
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                // X -> A∩B and Y -> A force X ∪ Y -> A; every subset of a
                // proposition lifts its bound upward.
                if a & !b == 0 && low[a] & !low[b] != 0 {
                    low[b] |= low[a];
                    changed = true;
                }
            }
        }
        for a in 0..n {
            // X ~> A and Y -> ¬A together force X − Y ~> A.
            let not_a = (!(a as u64) & theta_full) as usize;
            if up[a] & low[not_a] != 0 {
                up[a] &= !low[not_a];
                changed = true;
            }
        }
        for a in 0..n {
            for b in 0..n {
                // X ~> A, Y ~> B and Z ~> A∩B force X∩Y∩Z ~> A∩B.
                let kept = up[a] & up[b];
                let target = a & b;
                if up[target] & !kept != 0 {
                    up[target] &= kept;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }

    for a in 0..n {
        if low[a] & !up[a] != 0 {
            return Err(Error::ClosureInconsistent {
                witness: theta.subset_from_mask(a as u64).to_string(),
            });
        }
    }

    let lower = SetValuedMap::from_fn(theta, w, theta.size(), |s| {
        w.subset_from_mask(low[s.mask() as usize])
    })?;
    let upper = SetValuedMap::from_fn(theta, w, theta.size(), |s| {
        w.subset_from_mask(up[s.mask() as usize])
    })?;
    Ok((lower, upper))
}

/// Total lower/upper assignment pair bounding candidate incidence
/// structures, with `inf(A) ⊆ sup(A)` validated pointwise.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IncidenceBounds {
    inf: SetValuedMap,
    sup: SetValuedMap,
}

impl IncidenceBounds {
    pub fn new(inf: SetValuedMap, sup: SetValuedMap, cap: usize) -> Result<Self> {
        if inf.theta() != sup.theta() || inf.w() != sup.w() {
            return Err(Error::UniverseMismatch);
        }
        for a in inf.theta().powerset_with_cap(cap)? {
            if !inf.value(&a)?.is_subset_of(&sup.value(&a)?)? {
                return Err(Error::BoundsOrder {
                    witness: a.to_string(),
                });
            }
        }
        Ok(IncidenceBounds { inf, sup })
    }

    pub fn inf(&self) -> &SetValuedMap {
        &self.inf
    }

    pub fn sup(&self) -> &SetValuedMap {
        &self.sup
    }
}

/// Violation of the incidence-structure axioms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum IncidenceViolation {
    /// `i(A∪B) ≠ i(A) ∪ i(B)` at the carried pair.
    Union { a: Subset, b: Subset },
    /// `i(¬A) ≠ W − i(A)` at the carried subset.
    Negation { a: Subset },
}

impl fmt::Display for IncidenceViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceViolation::Union { a, b } => {
                write!(f, "incidence of union differs at A={a} B={b}")
            }
            IncidenceViolation::Negation { a } => {
                write!(f, "incidence of negation differs at A={a}")
            }
        }
    }
}

/// Checks that a single total map distributes over union and negation.
/// Returns the first violation in canonical order (union pairs first), or
/// `None` when `i` is an incidence structure.
pub fn check_incidence_structure(
    i: &SetValuedMap,
    cap: usize,
) -> Result<Option<IncidenceViolation>> {
    let theta = i.theta();
    if theta.size() > cap || theta.size() >= 64 {
        return Err(Error::CapExceeded {
            size: theta.size(),
            cap,
        });
    }
    let n = 1u64 << theta.size();
    let theta_full = theta.full_mask();
    let w_full = i.w().full_mask();
    for a in 0..n {
        for b in 0..n {
            if i.value_mask(a | b) != i.value_mask(a) | i.value_mask(b) {
                return Ok(Some(IncidenceViolation::Union {
                    a: theta.subset_from_mask(a),
                    b: theta.subset_from_mask(b),
                }));
            }
        }
    }
    for a in 0..n {
        if i.value_mask(!a & theta_full) != !i.value_mask(a) & w_full {
            return Ok(Some(IncidenceViolation::Negation {
                a: theta.subset_from_mask(a),
            }));
        }
    }
    Ok(None)
}

/// Checks `inf(A) ⊆ i(A) ⊆ sup(A)` for every proposition. Returns the first
/// failing proposition in canonical order, or `None` when `i` is bounded.
pub fn check_bounded(
    i: &SetValuedMap,
    bounds: &IncidenceBounds,
    cap: usize,
) -> Result<Option<Subset>> {
    if i.theta() != bounds.inf.theta() || i.w() != bounds.inf.w() {
        return Err(Error::UniverseMismatch);
    }
    for a in i.theta().powerset_with_cap(cap)? {
        let value = i.value(&a)?;
        if !bounds.inf.value(&a)?.is_subset_of(&value)?
            || !value.is_subset_of(&bounds.sup.value(&a)?)?
        {
            return Ok(Some(a));
        }
    }
    Ok(None)
}
