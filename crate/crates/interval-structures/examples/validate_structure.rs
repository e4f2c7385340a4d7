//! Check candidate bound tables against the interval-structure axioms.
//!
//! The lower map must preserve intersections and the two boundary sets, the
//! upper map must distribute over unions, and the two must be duals. A
//! failed check names the first counterexample.
//!
//! ```bash
//! cargo run --example validate_structure
//! ```

use interval_structures::interval::{check_lower_axioms, check_upper_axioms};
use interval_structures::{
    BasicSetAssignment, IntervalStructure, SetValuedMap, Universe, DEFAULT_ENUM_CAP,
};

fn main() -> interval_structures::Result<()> {
    let theta = Universe::new(["a", "b", "c"])?;
    let w = Universe::new(["x", "y", "z", "u"])?;

    // A valid pair, built from a basic set assignment.
    let bsa = BasicSetAssignment::new(
        &theta,
        &w,
        [
            (theta.subset(["a"])?, w.subset(["x"])?),
            (theta.subset(["b", "c"])?, w.subset(["y", "z"])?),
            (theta.full_set(), w.subset(["u"])?),
        ],
    )?;
    let structure = IntervalStructure::from_bsa(&bsa, DEFAULT_ENUM_CAP)?;
    println!("derived pair:");
    for a in theta.powerset()? {
        println!(
            "  {a}: lower {}, upper {}",
            structure.lower(&a)?,
            structure.upper(&a)?
        );
    }

    let lower_report = check_lower_axioms(structure.lower_map(), DEFAULT_ENUM_CAP)?;
    let upper_report = check_upper_axioms(structure.upper_map(), DEFAULT_ENUM_CAP)?;
    println!("\nlower axioms: {lower_report}");
    println!("upper axioms: {upper_report}");

    // Duality means either map determines the other.
    assert_eq!(&structure.lower_map().dualize(), structure.upper_map());
    assert_eq!(
        &structure.lower_map().dualize().dualize(),
        structure.lower_map()
    );
    println!("dualizing the lower map reproduces the upper map, and twice is identity");

    // A broken candidate: constant maps cannot hit both boundary values.
    let all = SetValuedMap::constant(&theta, &w.full_set());
    let report = check_lower_axioms(&all, DEFAULT_ENUM_CAP)?;
    println!("\nconstant-full lower map: {report}");

    // Validation of a mismatched pair pinpoints the duality break.
    let none = SetValuedMap::constant(&theta, &w.empty_set());
    match IntervalStructure::new(
        none,
        SetValuedMap::constant(&theta, &w.full_set()),
        DEFAULT_ENUM_CAP,
    ) {
        Err(e) => println!("rejected pair: {e}"),
        Ok(_) => unreachable!("constant maps break the boundary axioms"),
    }
    Ok(())
}
