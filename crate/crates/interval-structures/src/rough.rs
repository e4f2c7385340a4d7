//! Approximation spaces: partitions of a universe, lower and upper
//! approximations, and their quotient-level reductions.
//!
//! An equivalence relation partitions Θ into elementary blocks. A concept
//! `A ⊆ Θ` is approximated from below by the union of blocks inside it and
//! from above by the union of blocks meeting it. The same information at the
//! quotient level — which block labels are inside, which are met — is the
//! interval structure induced by the coarsening, and feeds the two decision
//! rules of the space.

use crate::compatibility::CompatibilityRelation;
use crate::error::{Error, Result};
use crate::sets::{Subset, Universe};
use crate::synthesis::Rule;

/// A partition of a universe into non-empty, pairwise-disjoint blocks that
/// cover it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    theta: Universe,
    blocks: Vec<u64>,
}

impl Partition {
    /// Validates caller-supplied blocks; their order is kept.
    pub fn from_blocks(theta: &Universe, blocks: &[Subset]) -> Result<Self> {
        let mut masks = Vec::with_capacity(blocks.len());
        let mut covered = 0u64;
        for (i, block) in blocks.iter().enumerate() {
            if block.universe() != theta {
                return Err(Error::UniverseMismatch);
            }
            if block.is_empty() {
                return Err(Error::EmptyBlock(i));
            }
            if covered & block.mask() != 0 {
                let other = masks
                    .iter()
                    .position(|&m: &u64| m & block.mask() != 0)
                    .unwrap_or(0);
                return Err(Error::BlockOverlap { a: other, b: i });
            }
            covered |= block.mask();
            masks.push(block.mask());
        }
        if covered != theta.full_mask() {
            let missing = theta.subset_from_mask(!covered & theta.full_mask());
            return Err(Error::PartitionIncomplete {
                missing: missing.to_string(),
            });
        }
        Ok(Partition {
            theta: theta.clone(),
            blocks: masks,
        })
    }

    /// Closes an equivalence pair list reflexively, symmetrically and
    /// transitively, and returns the resulting blocks ordered by least
    /// member index.
    pub fn from_pairs(theta: &Universe, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = theta.size();
        let mut parent: Vec<usize> = (0..n).collect();

        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }

        for &(a, b) in pairs {
            if a >= n {
                return Err(Error::IndexOutOfRange { index: a, size: n });
            }
            if b >= n {
                return Err(Error::IndexOutOfRange { index: b, size: n });
            }
            let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
            if ra != rb {
                // Union by least member keeps roots canonical.
                let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
                parent[hi] = lo;
            }
        }

        let mut blocks: Vec<u64> = Vec::new();
        let mut root_block: Vec<Option<usize>> = vec![None; n];
        for i in 0..n {
            let root = find(&mut parent, i);
            match root_block[root] {
                Some(b) => blocks[b] |= 1 << i,
                None => {
                    root_block[root] = Some(blocks.len());
                    blocks.push(1 << i);
                }
            }
        }
        Ok(Partition {
            theta: theta.clone(),
            blocks,
        })
    }

    pub fn theta(&self) -> &Universe {
        &self.theta
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn blocks(&self) -> impl Iterator<Item = Subset> + '_ {
        self.blocks.iter().map(|&m| self.theta.subset_from_mask(m))
    }

    pub fn block(&self, index: usize) -> Result<Subset> {
        self.blocks
            .get(index)
            .map(|&m| self.theta.subset_from_mask(m))
            .ok_or(Error::IndexOutOfRange {
                index,
                size: self.blocks.len(),
            })
    }
}

/// A partition together with its quotient universe, one label per block.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ApproximationSpace {
    partition: Partition,
    quotient: Universe,
}

impl ApproximationSpace {
    /// Labels blocks `b0, b1, …` in block order.
    pub fn new(partition: Partition) -> Self {
        let quotient = Universe::new((0..partition.len()).map(|i| format!("b{i}")))
            .expect("partitions are non-empty");
        ApproximationSpace {
            partition,
            quotient,
        }
    }

    /// Uses caller-supplied block labels, one per block in block order.
    pub fn with_block_labels<I, S>(partition: Partition, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let quotient = Universe::new(labels)?;
        if quotient.size() != partition.len() {
            return Err(Error::BlockLabelCount {
                expected: partition.len(),
                got: quotient.size(),
            });
        }
        Ok(ApproximationSpace {
            partition,
            quotient,
        })
    }

    pub fn partition(&self) -> &Partition {
        &self.partition
    }

    pub fn theta(&self) -> &Universe {
        self.partition.theta()
    }

    /// The quotient universe; element `i` labels block `i`.
    pub fn quotient(&self) -> &Universe {
        &self.quotient
    }

    fn check_concept(&self, a: &Subset) -> Result<()> {
        if a.universe() != self.theta() {
            return Err(Error::UniverseMismatch);
        }
        Ok(())
    }

    /// The union of blocks contained in `a`: the greatest composed set
    /// inside the concept.
    pub fn lower_approx(&self, a: &Subset) -> Result<Subset> {
        self.check_concept(a)?;
        let mask = a.mask();
        let mut out = 0u64;
        for &block in &self.partition.blocks {
            if block & !mask == 0 {
                out |= block;
            }
        }
        Ok(self.theta().subset_from_mask(out))
    }

    /// The union of blocks meeting `a`: the least composed set containing
    /// the concept.
    pub fn upper_approx(&self, a: &Subset) -> Result<Subset> {
        self.check_concept(a)?;
        let mask = a.mask();
        let mut out = 0u64;
        for &block in &self.partition.blocks {
            if block & mask != 0 {
                out |= block;
            }
        }
        Ok(self.theta().subset_from_mask(out))
    }

    /// The quotient-level approximations: the inner reduction collects the
    /// labels of blocks inside `a`, the outer reduction the labels of blocks
    /// meeting `a`. Expanding either set of labels back to block unions
    /// reproduces the approximations.
    pub fn reductions(&self, a: &Subset) -> Result<(Subset, Subset)> {
        self.check_concept(a)?;
        let mask = a.mask();
        let mut inner = 0u64;
        let mut outer = 0u64;
        for (i, &block) in self.partition.blocks.iter().enumerate() {
            if block & !mask == 0 {
                inner |= 1 << i;
            }
            if block & mask != 0 {
                outer |= 1 << i;
            }
        }
        Ok((
            self.quotient.subset_from_mask(inner),
            self.quotient.subset_from_mask(outer),
        ))
    }

    /// Expands a set of block labels to the union of the named blocks.
    pub fn expand(&self, q: &Subset) -> Result<Subset> {
        if q.universe() != &self.quotient {
            return Err(Error::UniverseMismatch);
        }
        let mut out = 0u64;
        for i in q.indices() {
            out |= self.partition.blocks[i];
        }
        Ok(self.theta().subset_from_mask(out))
    }

    /// The two decision rules a concept admits: the deterministic rule from
    /// the inner reduction and the non-deterministic rule from the outer
    /// reduction.
    pub fn decision_rules(&self, a: &Subset) -> Result<(Rule, Rule)> {
        let (inner, outer) = self.reductions(a)?;
        Ok((
            Rule::deterministic(inner, a.clone()),
            Rule::non_deterministic(outer, a.clone()),
        ))
    }

    /// The coarsening relation: block label `w` is compatible with `θ`
    /// exactly when `θ` lies in block `w`. Its induced interval structure
    /// equals the reductions map.
    pub fn to_compatibility(&self) -> CompatibilityRelation {
        let rows = self.quotient.labels().zip(self.partition.blocks());
        CompatibilityRelation::from_gamma(&self.quotient, self.theta(), rows)
            .expect("partitions induce serial relations")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sets::DEFAULT_ENUM_CAP;
    use crate::synthesis::RuleKind;
    use proptest::prelude::*;

    fn theta3() -> Universe {
        Universe::new(["t1", "t2", "t3"]).unwrap()
    }

    #[test]
    fn no_pairs_gives_singletons() {
        let theta = theta3();
        let p = Partition::from_pairs(&theta, &[]).unwrap();
        assert_eq!(p.len(), 3);
        for (i, block) in p.blocks().enumerate() {
            assert_eq!(block, theta.singleton(i).unwrap());
        }
    }

    #[test]
    fn all_pairs_give_one_block() {
        let theta = theta3();
        let p = Partition::from_pairs(&theta, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(p.len(), 1);
        assert!(p.block(0).unwrap().is_full());
    }

    #[test]
    fn single_pair_closure() {
        let theta = theta3();
        let p = Partition::from_pairs(&theta, &[(0, 1)]).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.block(0).unwrap(), theta.subset(["t1", "t2"]).unwrap());
        assert_eq!(p.block(1).unwrap(), theta.subset(["t3"]).unwrap());
    }

    #[test]
    fn pair_order_does_not_change_blocks() {
        let theta = theta3();
        let a = Partition::from_pairs(&theta, &[(2, 1)]).unwrap();
        let b = Partition::from_pairs(&theta, &[(1, 2)]).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn out_of_range_pairs_are_rejected() {
        let theta = theta3();
        assert!(matches!(
            Partition::from_pairs(&theta, &[(0, 7)]),
            Err(Error::IndexOutOfRange { index: 7, size: 3 })
        ));
    }

    #[test]
    fn invalid_blocks_are_rejected() {
        let theta = theta3();
        let whole = theta.full_set();
        assert!(matches!(
            Partition::from_blocks(&theta, &[whole.clone(), theta.subset(["t1"]).unwrap()]),
            Err(Error::BlockOverlap { .. })
        ));
        assert!(matches!(
            Partition::from_blocks(&theta, &[theta.subset(["t1"]).unwrap()]),
            Err(Error::PartitionIncomplete { .. })
        ));
        assert!(matches!(
            Partition::from_blocks(&theta, &[whole, theta.empty_set()]),
            Err(Error::EmptyBlock(1))
        ));
    }

    fn two_block_space() -> ApproximationSpace {
        let theta = theta3();
        ApproximationSpace::new(Partition::from_pairs(&theta, &[(0, 1)]).unwrap())
    }

    #[test]
    fn composed_sets_are_fixed_points() {
        let space = two_block_space();
        let theta = space.theta().clone();
        let composed = theta.subset(["t1", "t2"]).unwrap();
        assert_eq!(space.lower_approx(&composed).unwrap(), composed);
        assert_eq!(space.upper_approx(&composed).unwrap(), composed);
    }

    #[test]
    fn approximations_of_a_fragment() {
        let space = two_block_space();
        let theta = space.theta().clone();
        let a = theta.subset(["t1"]).unwrap();
        assert!(space.lower_approx(&a).unwrap().is_empty());
        assert_eq!(
            space.upper_approx(&a).unwrap(),
            theta.subset(["t1", "t2"]).unwrap()
        );
    }

    #[test]
    fn approximations_at_the_boundaries() {
        let space = two_block_space();
        let theta = space.theta().clone();
        assert!(space.lower_approx(&theta.empty_set()).unwrap().is_empty());
        assert!(space.upper_approx(&theta.empty_set()).unwrap().is_empty());
        assert!(space.lower_approx(&theta.full_set()).unwrap().is_full());
        assert!(space.upper_approx(&theta.full_set()).unwrap().is_full());
    }

    #[test]
    fn reductions_of_the_full_concept() {
        let space = two_block_space();
        let (inner, outer) = space.reductions(&space.theta().full_set()).unwrap();
        assert!(inner.is_full());
        assert!(outer.is_full());
    }

    #[test]
    fn reductions_of_a_mixed_concept() {
        let space = two_block_space();
        let theta = space.theta().clone();
        let a = theta.subset(["t1", "t3"]).unwrap();
        let (inner, outer) = space.reductions(&a).unwrap();
        assert_eq!(inner, space.quotient().subset(["b1"]).unwrap());
        assert!(outer.is_full());
    }

    #[test]
    fn decision_rules_have_reduction_sides() {
        let space = two_block_space();
        let theta = space.theta().clone();
        let a = theta.subset(["t1", "t3"]).unwrap();
        let (det, nondet) = space.decision_rules(&a).unwrap();
        assert_eq!(det.kind, RuleKind::Deterministic);
        assert_eq!(nondet.kind, RuleKind::NonDeterministic);
        assert_eq!(det.rhs, a);
        assert_eq!(det.lhs, space.quotient().subset(["b1"]).unwrap());
        assert!(nondet.lhs.is_full());
        assert_eq!(det.to_string(), "{b1} -> {t1,t3}");
        assert_eq!(nondet.to_string(), "{b0,b1} ~> {t1,t3}");
    }

    #[test]
    fn full_concept_rule_covers_all_blocks() {
        let space = two_block_space();
        let (det, _) = space.decision_rules(&space.theta().full_set()).unwrap();
        assert!(det.lhs.is_full());
    }

    #[test]
    fn custom_block_labels() {
        let theta = theta3();
        let p = Partition::from_pairs(&theta, &[(0, 1)]).unwrap();
        let space = ApproximationSpace::with_block_labels(p.clone(), ["fever", "rash"]).unwrap();
        assert_eq!(space.quotient().size(), 2);
        assert!(matches!(
            ApproximationSpace::with_block_labels(p, ["only-one"]),
            Err(Error::BlockLabelCount {
                expected: 2,
                got: 1
            })
        ));
    }

    fn arbitrary_space(theta_size: usize, assignment: &[usize]) -> ApproximationSpace {
        let theta = Universe::new((0..theta_size).map(|i| format!("t{i}"))).unwrap();
        let mut pairs = Vec::new();
        // Elements with the same pick join the same block.
        for i in 0..theta_size {
            for j in (i + 1)..theta_size {
                if assignment[i % assignment.len()] == assignment[j % assignment.len()] {
                    pairs.push((i, j));
                }
            }
        }
        ApproximationSpace::new(Partition::from_pairs(&theta, &pairs).unwrap())
    }

    proptest! {
        #[test]
        fn reductions_expand_to_approximations(
            n in 1usize..7,
            assignment in proptest::collection::vec(0usize..4, 7),
        ) {
            let space = arbitrary_space(n, &assignment);
            for a in space.theta().powerset().unwrap() {
                let (inner, outer) = space.reductions(&a).unwrap();
                prop_assert!(inner.is_subset_of(&outer).unwrap());
                prop_assert_eq!(space.expand(&inner).unwrap(), space.lower_approx(&a).unwrap());
                prop_assert_eq!(space.expand(&outer).unwrap(), space.upper_approx(&a).unwrap());
            }
        }

        #[test]
        fn approximations_are_idempotent_and_dual(
            n in 1usize..7,
            assignment in proptest::collection::vec(0usize..4, 7),
        ) {
            let space = arbitrary_space(n, &assignment);
            for a in space.theta().powerset().unwrap() {
                let low = space.lower_approx(&a).unwrap();
                let up = space.upper_approx(&a).unwrap();
                prop_assert!(low.is_subset_of(&a).unwrap());
                prop_assert!(a.is_subset_of(&up).unwrap());
                prop_assert_eq!(space.lower_approx(&low).unwrap(), low.clone());
                prop_assert_eq!(space.upper_approx(&up).unwrap(), up.clone());
                prop_assert_eq!(space.lower_approx(&a.complement()).unwrap(), up.complement());
            }
        }

        // The reductions map is the interval structure induced by the
        // coarsening relation.
        #[test]
        fn reductions_match_coarsening_structure(
            n in 1usize..7,
            assignment in proptest::collection::vec(0usize..4, 7),
        ) {
            let space = arbitrary_space(n, &assignment);
            let rel = space.to_compatibility();
            let structure = rel.interval_structure(DEFAULT_ENUM_CAP).unwrap();
            for a in space.theta().powerset().unwrap() {
                let (inner, outer) = space.reductions(&a).unwrap();
                prop_assert_eq!(structure.lower(&a).unwrap(), inner);
                prop_assert_eq!(structure.upper(&a).unwrap(), outer);
            }
        }
    }
}
