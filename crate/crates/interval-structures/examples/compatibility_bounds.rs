//! Derive an interval structure from a compatibility relation.
//!
//! Symptoms relate to the diseases they are compatible with. The lower
//! inverse of a disease set collects the symptoms pointing only inside it;
//! the upper inverse collects the symptoms compatible with at least one
//! member. The pair is always a valid interval structure, and its basic set
//! assignment groups symptoms by their exact compatible set.
//!
//! ```bash
//! cargo run --example compatibility_bounds
//! ```

use interval_structures::compatibility::CompatibilityRelation;
use interval_structures::{Universe, DEFAULT_ENUM_CAP};

fn main() -> interval_structures::Result<()> {
    let symptoms = Universe::new(["fever", "cough", "rash", "ache"])?;
    let diseases = Universe::new(["flu", "measles", "cold"])?;

    let relation = CompatibilityRelation::from_gamma(
        &symptoms,
        &diseases,
        [
            ("fever", diseases.subset(["flu", "measles"])?),
            ("cough", diseases.subset(["flu", "cold"])?),
            ("rash", diseases.subset(["measles"])?),
            ("ache", diseases.subset(["flu"])?),
        ],
    )?;

    println!("compatible sets:");
    for label in ["fever", "cough", "rash", "ache"] {
        println!("  {label} ~ {}", relation.gamma(label)?);
    }
    println!(
        "image of {{fever,rash}}: {}",
        relation.image(&symptoms.subset(["fever", "rash"])?)?
    );

    println!("\ninverse images per disease set:");
    for a in diseases.powerset()? {
        println!(
            "  {a}: definitely {}, possibly {}",
            relation.lower_inverse(&a)?,
            relation.upper_inverse(&a)?
        );
    }

    // The induced pair passes full validation.
    let structure = relation.interval_structure(DEFAULT_ENUM_CAP)?;

    // Two routes to the same basic set assignment: group symptoms by their
    // compatible set, or peel the validated lower map.
    let direct = relation.basic_set_assignment();
    assert_eq!(direct, structure.to_bsa());
    println!("\nbasic set assignment (both construction routes agree):");
    for (a, v) in direct.focal_sets() {
        println!("  {a} : {v}");
    }
    Ok(())
}
