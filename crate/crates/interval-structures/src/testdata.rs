//! Shared fixture for unit tests: a five-situation, three-proposition
//! knowledge base whose assignment, basic set assignment and bound tables
//! are all known in closed form.

use crate::interval::{BasicSetAssignment, SetValuedMap};
use crate::sets::Universe;
use crate::synthesis::Assignment;

pub(crate) struct GoldenTables {
    pub theta: Universe,
    pub w: Universe,
    pub lower: SetValuedMap,
    pub upper: SetValuedMap,
    pub bsa: BasicSetAssignment,
}

pub(crate) fn golden_universes() -> (Universe, Universe) {
    let w = Universe::new(["w1", "w2", "w3", "w4", "w5"]).unwrap();
    let theta = Universe::new(["t1", "t2", "t3"]).unwrap();
    (w, theta)
}

/// The expert assignment: three lower entries and two upper entries.
pub(crate) fn golden_assignment() -> Assignment {
    let (w, theta) = golden_universes();
    let mut g = Assignment::new(&theta, &w);
    g.set_lower(
        &theta.subset(["t1", "t2"]).unwrap(),
        &w.subset(["w1", "w4"]).unwrap(),
    )
    .unwrap();
    g.set_lower(
        &theta.subset(["t1", "t3"]).unwrap(),
        &w.subset(["w1", "w2"]).unwrap(),
    )
    .unwrap();
    g.set_lower(&theta.full_set(), &w.subset(["w3"]).unwrap())
        .unwrap();
    g.set_upper(
        &theta.subset(["t3"]).unwrap(),
        &w.subset(["w3", "w5"]).unwrap(),
    )
    .unwrap();
    g.set_upper(
        &theta.subset(["t1"]).unwrap(),
        &w.subset(["w1", "w2", "w3"]).unwrap(),
    )
    .unwrap();
    g
}

/// The tables the assignment synthesizes to.
pub(crate) fn golden() -> GoldenTables {
    let (w, theta) = golden_universes();
    let set = |labels: &[&str]| w.subset(labels.to_vec()).unwrap();
    let prop = |labels: &[&str]| theta.subset(labels.to_vec()).unwrap();

    let lower_rows = [
        (prop(&[]), set(&[])),
        (prop(&["t1"]), set(&["w1", "w2"])),
        (prop(&["t2"]), set(&["w4"])),
        (prop(&["t1", "t2"]), set(&["w1", "w2", "w4"])),
        (prop(&["t3"]), set(&[])),
        (prop(&["t1", "t3"]), set(&["w1", "w2"])),
        (prop(&["t2", "t3"]), set(&["w4", "w5"])),
        (
            prop(&["t1", "t2", "t3"]),
            set(&["w1", "w2", "w3", "w4", "w5"]),
        ),
    ];
    let upper_rows = [
        (prop(&[]), set(&[])),
        (prop(&["t1"]), set(&["w1", "w2", "w3"])),
        (prop(&["t2"]), set(&["w3", "w4", "w5"])),
        (prop(&["t1", "t2"]), set(&["w1", "w2", "w3", "w4", "w5"])),
        (prop(&["t3"]), set(&["w3", "w5"])),
        (prop(&["t1", "t3"]), set(&["w1", "w2", "w3", "w5"])),
        (prop(&["t2", "t3"]), set(&["w3", "w4", "w5"])),
        (
            prop(&["t1", "t2", "t3"]),
            set(&["w1", "w2", "w3", "w4", "w5"]),
        ),
    ];

    let lower = SetValuedMap::from_fn(&theta, &w, 16, |a| {
        lower_rows.iter().find(|(k, _)| k == a).unwrap().1.clone()
    })
    .unwrap();
    let upper = SetValuedMap::from_fn(&theta, &w, 16, |a| {
        upper_rows.iter().find(|(k, _)| k == a).unwrap().1.clone()
    })
    .unwrap();

    let bsa = BasicSetAssignment::new(
        &theta,
        &w,
        [
            (prop(&["t1"]), set(&["w1", "w2"])),
            (prop(&["t2"]), set(&["w4"])),
            (prop(&["t2", "t3"]), set(&["w5"])),
            (prop(&["t1", "t2", "t3"]), set(&["w3"])),
        ],
    )
    .unwrap();

    GoldenTables {
        theta,
        w,
        lower,
        upper,
        bsa,
    }
}
