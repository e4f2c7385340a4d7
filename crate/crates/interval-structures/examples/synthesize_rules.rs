//! Turn expert decision rules into consistent tightest bounds.
//!
//! Five observations, three candidate faults. The expert states a few lower
//! assignments ("these observations definitely indicate one of these
//! faults") and upper assignments ("only these observations possibly
//! indicate these faults"). Synthesis folds them into a basic set
//! assignment and derives the tightest bound tables and decision rules.
//!
//! ```bash
//! cargo run --example synthesize_rules
//! ```

use interval_structures::synthesis::{check_inside, max_min_bounds, Assignment};
use interval_structures::{Universe, DEFAULT_ENUM_CAP};

fn main() -> interval_structures::Result<()> {
    let observations = Universe::new(["overheat", "noise", "slow", "crash", "flicker"])?;
    let faults = Universe::new(["fan", "disk", "gpu"])?;

    let mut expert = Assignment::new(&faults, &observations);
    expert.set_lower(
        &faults.subset(["fan", "disk"])?,
        &observations.subset(["overheat", "crash"])?,
    )?;
    expert.set_lower(
        &faults.subset(["fan", "gpu"])?,
        &observations.subset(["overheat", "noise"])?,
    )?;
    expert.set_lower(&faults.full_set(), &observations.subset(["slow"])?)?;
    expert.set_upper(
        &faults.subset(["gpu"])?,
        &observations.subset(["slow", "flicker"])?,
    )?;
    expert.set_upper(
        &faults.subset(["fan"])?,
        &observations.subset(["overheat", "noise", "slow"])?,
    )?;

    println!("normalized lower assignments:");
    for (a, v) in expert.normalize().explicit_entries() {
        println!("  {a} gets at least {v}");
    }

    let bsa = expert.synthesize()?;
    println!("\nbasic set assignment (focal sets):");
    for (a, v) in bsa.focal_sets() {
        println!("  {a} : {v}");
    }

    let bounds = max_min_bounds(&bsa, DEFAULT_ENUM_CAP)?;
    println!("\ntightest bounds and rules:");
    for a in faults.powerset()? {
        let low = bounds.lower(&a)?;
        let up = bounds.upper(&a)?;
        println!("  {a}: lower {low}, upper {up}");
        println!("    {low} -> {a}");
        println!("    {up} ~> {a}");
    }

    assert!(check_inside(&bounds, &expert)?.is_none());
    println!("\nthe derived bounds honor every expert entry");

    // A contradicting rule base: "slow" definitely indicates a fan fault,
    // yet only "overheat" possibly indicates fan or disk.
    let mut contradictory = Assignment::new(&faults, &observations);
    contradictory.set_lower(&faults.subset(["fan"])?, &observations.subset(["slow"])?)?;
    contradictory.set_upper(
        &faults.subset(["fan", "disk"])?,
        &observations.subset(["overheat"])?,
    )?;
    match contradictory.synthesize() {
        Err(e) => println!("\ncontradiction detected as expected: {e}"),
        Ok(_) => unreachable!("this rule base admits no interval structure"),
    }
    Ok(())
}
