//! Incidence structures, boundedness, and the rule-closure oracle.
//!
//! An incidence structure assigns each proposition the exact set of
//! situations where it holds, distributing over union and negation. When
//! only lower and upper assignments are known, consistency means some
//! incidence structure fits between them; the synthesized bounds are the
//! tightest such envelope. The closure oracle derives the same envelope by
//! saturating the decision rules with inference steps, and agrees with the
//! synthesis route.
//!
//! ```bash
//! cargo run --example incidence_bounds
//! ```

use interval_structures::synthesis::{
    check_bounded, check_incidence_structure, closure_oracle, max_min_bounds, Assignment,
    IncidenceBounds, RuleSet,
};
use interval_structures::{SetValuedMap, Universe, DEFAULT_ENUM_CAP};

fn main() -> interval_structures::Result<()> {
    let worlds = Universe::new(["u1", "u2", "u3", "u4"])?;
    let props = Universe::new(["p", "q", "r"])?;

    // Each world settles on one true proposition; the preimage map is an
    // incidence structure.
    let truth = [0usize, 0, 1, 2];
    let incidence = SetValuedMap::from_fn(&props, &worlds, DEFAULT_ENUM_CAP, |a| {
        worlds
            .subset_from_indices(
                truth
                    .iter()
                    .enumerate()
                    .filter(|(_, &t)| a.contains_index(t))
                    .map(|(wi, _)| wi),
            )
            .unwrap()
    })?;
    assert!(check_incidence_structure(&incidence, DEFAULT_ENUM_CAP)?.is_none());
    println!("the preimage map is an incidence structure");

    // A lower bound map alone does not distribute over negation.
    let lower_only = SetValuedMap::from_entries(
        &props,
        &worlds,
        &worlds.empty_set(),
        [(props.full_set(), worlds.full_set())],
    )?;
    if let Some(violation) = check_incidence_structure(&lower_only, DEFAULT_ENUM_CAP)? {
        println!("vacuous lower map alone is not one: {violation}");
    }

    // Expert bounds admit the exact incidence structure above.
    let mut expert = Assignment::new(&props, &worlds);
    expert.set_lower(&props.subset(["p"])?, &worlds.subset(["u1"])?)?;
    expert.set_upper(&props.subset(["q", "r"])?, &worlds.subset(["u3", "u4"])?)?;
    let bounds_structure = max_min_bounds(&expert.synthesize()?, DEFAULT_ENUM_CAP)?;
    let envelope = IncidenceBounds::new(
        bounds_structure.lower_map().clone(),
        bounds_structure.upper_map().clone(),
        DEFAULT_ENUM_CAP,
    )?;
    assert_eq!(
        check_bounded(&incidence, &envelope, DEFAULT_ENUM_CAP)?,
        None
    );
    println!("the tightest envelope admits the true incidence structure");

    // The closure oracle saturates the stated rules and lands on the same
    // envelope.
    let (oracle_lower, oracle_upper) = closure_oracle(&RuleSet::from_assignment(&expert))?;
    for a in props.powerset()? {
        assert_eq!(oracle_lower.value(&a)?, bounds_structure.lower(&a)?);
        assert_eq!(oracle_upper.value(&a)?, bounds_structure.upper(&a)?);
    }
    println!("rule closure and synthesis derive identical bounds:");
    for a in props.powerset()? {
        println!(
            "  {a}: [{}, {}]",
            bounds_structure.lower(&a)?,
            bounds_structure.upper(&a)?
        );
    }
    Ok(())
}
