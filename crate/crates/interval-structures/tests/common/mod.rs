//! Random instance generators shared by the integration suites.

use interval_structures::belief::BasicProbabilityAssignment;
use interval_structures::compatibility::CompatibilityRelation;
use interval_structures::rough::Partition;
use interval_structures::synthesis::Assignment;
use interval_structures::{BasicSetAssignment, Subset, Universe};
use rand::rngs::StdRng;
use rand::Rng;

pub fn labelled(prefix: &str, count: usize) -> Universe {
    Universe::new((0..count).map(|i| format!("{prefix}{i}"))).expect("valid labels")
}

pub fn subset_from_mask(universe: &Universe, mask: u64) -> Subset {
    universe
        .subset_from_indices((0..universe.size()).filter(|i| mask & (1 << i) != 0))
        .expect("mask within universe")
}

pub fn mask_of(subset: &Subset) -> u64 {
    subset.indices().fold(0u64, |mask, i| mask | (1 << i))
}

/// Non-empty random mask over `size` bits.
pub fn random_nonempty_mask(rng: &mut StdRng, size: usize) -> u64 {
    rng.random_range(1..(1u64 << size))
}

/// A random basic set assignment: every situation joins the focal set it
/// draws, so the axioms hold by construction.
pub fn random_bsa(rng: &mut StdRng, theta: &Universe, w: &Universe) -> BasicSetAssignment {
    let mut groups: std::collections::BTreeMap<u64, u64> = Default::default();
    for wi in 0..w.size() {
        let focal = random_nonempty_mask(rng, theta.size());
        *groups.entry(focal).or_insert(0) |= 1 << wi;
    }
    BasicSetAssignment::new(
        theta,
        w,
        groups
            .into_iter()
            .map(|(a, v)| (subset_from_mask(theta, a), subset_from_mask(w, v))),
    )
    .expect("grouping yields a valid assignment")
}

/// A random serial relation: every situation draws a non-empty compatible
/// set, and uncovered proposition elements are routed to situation 0.
pub fn random_serial_relation(
    rng: &mut StdRng,
    theta: &Universe,
    w: &Universe,
) -> CompatibilityRelation {
    let mut gamma: Vec<u64> = (0..w.size())
        .map(|_| random_nonempty_mask(rng, theta.size()))
        .collect();
    let covered = gamma.iter().fold(0u64, |acc, g| acc | g);
    let full = (1u64 << theta.size()) - 1;
    gamma[0] |= !covered & full;
    let rows: Vec<(String, Subset)> = (0..w.size())
        .map(|wi| {
            (
                w.label(wi).unwrap().to_string(),
                subset_from_mask(theta, gamma[wi]),
            )
        })
        .collect();
    CompatibilityRelation::from_gamma(w, theta, rows.iter().map(|(l, s)| (l.as_str(), s.clone())))
        .expect("patched relation is serial")
}

/// A random mass assignment over a random family of non-empty focal
/// elements.
pub fn random_bpa(rng: &mut StdRng, theta: &Universe) -> BasicProbabilityAssignment {
    let span = (1u64 << theta.size()) - 1;
    let count = rng.random_range(1..=span.min(8)) as usize;
    let mut weights: std::collections::BTreeMap<u64, f64> = Default::default();
    for _ in 0..count {
        let focal = random_nonempty_mask(rng, theta.size());
        *weights.entry(focal).or_insert(0.0) += rng.random_range(0.05..1.0);
    }
    let total: f64 = weights.values().sum();
    BasicProbabilityAssignment::new(
        theta,
        weights
            .into_iter()
            .map(|(a, m)| (subset_from_mask(theta, a), m / total)),
    )
    .expect("normalized masses form an assignment")
}

/// A random partition, as the kernel of a random block-pick function.
pub fn random_partition(rng: &mut StdRng, theta: &Universe) -> Partition {
    let n = theta.size();
    let picks: Vec<usize> = (0..n).map(|_| rng.random_range(0..n)).collect();
    let mut pairs = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if picks[i] == picks[j] {
                pairs.push((i, j));
            }
        }
    }
    Partition::from_pairs(theta, &pairs).expect("indices are in range")
}

/// A random expert assignment; roughly half of the draws are inconsistent
/// at these sizes.
pub fn random_assignment(rng: &mut StdRng, theta: &Universe, w: &Universe) -> Assignment {
    let mut assignment = Assignment::new(theta, w);
    let span = 1u64 << theta.size();
    let w_span = 1u64 << w.size();
    let mut used_lower = std::collections::BTreeSet::new();
    let mut used_upper = std::collections::BTreeSet::new();
    for _ in 0..rng.random_range(0..=3) {
        let a = rng.random_range(0..span);
        if !used_lower.insert(a) {
            continue;
        }
        let value = rng.random_range(0..w_span);
        assignment
            .set_lower(&subset_from_mask(theta, a), &subset_from_mask(w, value))
            .expect("fresh entry");
    }
    for _ in 0..rng.random_range(0..=3) {
        let a = rng.random_range(0..span);
        if !used_upper.insert(a) {
            continue;
        }
        let value = rng.random_range(0..w_span);
        assignment
            .set_upper(&subset_from_mask(theta, a), &subset_from_mask(w, value))
            .expect("fresh entry");
    }
    assignment
}
