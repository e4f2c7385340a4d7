//! Belief and plausibility as the numeric face of interval structures.
//!
//! A mass assignment over subsets of a frame yields a belief table (sum of
//! masses inside each subset) and its dual plausibility. The mass transform
//! recovers the assignment exactly, rejects tables that are not belief
//! functions, and every belief function is realized by a probability pushed
//! through an interval structure.
//!
//! ```bash
//! cargo run --example belief_functions
//! ```

use interval_structures::belief::{
    bel_from_interval, canonical_model, BasicProbabilityAssignment, BeliefTable, ProbabilityOnW,
};
use interval_structures::{BasicSetAssignment, IntervalStructure, Universe, DEFAULT_ENUM_CAP};

fn main() -> interval_structures::Result<()> {
    let suspects = Universe::new(["alice", "bob", "carol"])?;

    let evidence = BasicProbabilityAssignment::new(
        &suspects,
        [
            (suspects.subset(["alice"])?, 0.4),
            (suspects.subset(["alice", "bob"])?, 0.25),
            (suspects.full_set(), 0.35),
        ],
    )?;

    let bel = evidence.belief_table(DEFAULT_ENUM_CAP)?;
    let pl = bel.plausibility();
    println!("belief / plausibility:");
    for a in suspects.powerset()? {
        println!("  {a}: [{}, {}]", bel.value(&a)?, pl.value(&a)?);
    }

    // The mass transform inverts the table construction.
    let recovered = bel.basic_probability_assignment()?;
    assert_eq!(recovered.len(), evidence.len());
    println!(
        "\nmass recovery is exact on {} focal elements",
        recovered.len()
    );

    // Not every monotone-looking table is a belief function.
    let bogus = BeliefTable::new(&suspects, vec![0.0, 0.6, 0.0, 0.5, 0.0, 0.6, 0.0, 1.0])?;
    match bogus.basic_probability_assignment() {
        Err(e) => println!("rejected table: {e}"),
        Ok(_) => unreachable!("the table is not superadditive"),
    }

    // A probability on situations pushed through a structure gives a belief
    // function.
    let reports = Universe::new(["r1", "r2", "r3", "r4"])?;
    let bsa = BasicSetAssignment::new(
        &suspects,
        &reports,
        [
            (suspects.subset(["alice"])?, reports.subset(["r1", "r2"])?),
            (suspects.subset(["bob", "carol"])?, reports.subset(["r3"])?),
            (suspects.full_set(), reports.subset(["r4"])?),
        ],
    )?;
    let structure = IntervalStructure::from_bsa(&bsa, DEFAULT_ENUM_CAP)?;
    let p = ProbabilityOnW::new(&reports, vec![0.1, 0.3, 0.4, 0.2])?;
    let (bel2, pl2) = bel_from_interval(&structure, &p)?;
    println!("\ninduced by a probability on reports:");
    for a in suspects.powerset()? {
        println!("  {a}: [{}, {}]", bel2.value(&a)?, pl2.value(&a)?);
    }

    // And conversely, every belief function has a canonical realization.
    let model = canonical_model(&bel)?;
    println!(
        "\ncanonical model carries {} situations, one per focal element",
        model.w.size()
    );
    for a in suspects.powerset()? {
        let back = model.p.measure(&model.structure.lower(&a)?)?;
        assert!((back - bel.value(&a)?).abs() < 1e-9);
    }
    println!("reconstruction matches the original table on every subset");
    Ok(())
}
