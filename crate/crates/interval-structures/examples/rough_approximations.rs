//! Approximate concepts in a partitioned universe.
//!
//! An indiscernibility relation groups days into weather classes. A concept
//! that does not respect the classes is sandwiched between the union of
//! classes inside it and the union of classes meeting it; at the quotient
//! level the same information is the pair of reductions, which also feed
//! the two decision rules.
//!
//! ```bash
//! cargo run --example rough_approximations
//! ```

use interval_structures::rough::{ApproximationSpace, Partition};
use interval_structures::Universe;

fn main() -> interval_structures::Result<()> {
    let days = Universe::new(["mon", "tue", "wed", "thu", "fri", "sat"])?;
    // mon ≈ tue, wed ≈ thu ≈ fri, sat alone.
    let partition = Partition::from_pairs(&days, &[(0, 1), (2, 3), (3, 4)])?;
    let space = ApproximationSpace::with_block_labels(partition, ["wet", "dry", "storm"])?;

    println!("classes:");
    for (label, block) in space.quotient().labels().zip(space.partition().blocks()) {
        println!("  {label} = {block}");
    }

    let concept = days.subset(["mon", "tue", "wed", "sat"])?;
    println!("\nconcept {concept}:");
    println!("  lower approximation {}", space.lower_approx(&concept)?);
    println!("  upper approximation {}", space.upper_approx(&concept)?);

    let (inner, outer) = space.reductions(&concept)?;
    println!("  inner reduction {inner}, outer reduction {outer}");
    assert_eq!(space.expand(&inner)?, space.lower_approx(&concept)?);
    assert_eq!(space.expand(&outer)?, space.upper_approx(&concept)?);

    let (definite, possible) = space.decision_rules(&concept)?;
    println!("  {definite}");
    println!("  {possible}");

    // Composed concepts are exact: both approximations return the concept.
    let composed = space.expand(&space.quotient().subset(["wet", "storm"])?)?;
    assert_eq!(space.lower_approx(&composed)?, composed);
    assert_eq!(space.upper_approx(&composed)?, composed);
    println!("\ncomposed concept {composed} is its own approximation");

    // The quotient-level view is the interval structure induced by the
    // class-membership relation.
    let relation = space.to_compatibility();
    let structure = relation.interval_structure(16)?;
    for a in days.powerset()? {
        let (inner, outer) = space.reductions(&a)?;
        assert_eq!(structure.lower(&a)?, inner);
        assert_eq!(structure.upper(&a)?, outer);
    }
    println!(
        "reductions equal the coarsening-induced interval structure on all {} concepts",
        1 << days.size()
    );
    Ok(())
}
