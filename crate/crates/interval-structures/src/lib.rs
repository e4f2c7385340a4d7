//! Paired lower/upper set-valued bounds over finite universes.
//!
//! One abstraction — a pair of maps from subsets of a frame Θ to subsets of
//! a situation space W, where the lower map collects what definitely
//! supports a proposition and the upper map what possibly does — covers
//! rough-set approximation, incidence bounds, and, once a probability is
//! placed on W, belief and plausibility functions. Each valid pair
//! corresponds to exactly one basic set assignment (a partition of W
//! indexed by subsets of Θ), and that correspondence drives everything
//! here: validation, conversion, and the synthesis of consistent tightest
//! bounds from expert decision rules.
//!
//! Modules:
//!
//! * [`sets`] — universes, subset masks, powerset enumeration.
//! * [`interval`] — set-valued maps, the axiom checks, duality, basic set
//!   assignments and both conversion directions.
//! * [`compatibility`] — relations between W and Θ and the structure they
//!   induce.
//! * [`rough`] — partitions, approximations, reductions, decision rules.
//! * [`belief`] — basic probability assignments, belief/plausibility, mass
//!   recovery, and the canonical realization of a belief function.
//! * [`synthesis`] — expert assignments, the consistency check and
//!   basic-set-assignment construction, tightest bounds, the rule-closure
//!   oracle, and incidence checks.
//! * [`cli`] — the document grammar and command dispatch behind `istruct`.
//!
//! Synthesizing bounds from two expert entries:
//!
//! ```
//! use interval_structures::synthesis::{max_min_bounds, Assignment};
//! use interval_structures::{Universe, DEFAULT_ENUM_CAP};
//!
//! let situations = Universe::new(["w1", "w2", "w3"])?;
//! let frame = Universe::new(["t1", "t2"])?;
//!
//! let mut expert = Assignment::new(&frame, &situations);
//! expert.set_lower(&frame.subset(["t1"])?, &situations.subset(["w1"])?)?;
//! expert.set_upper(&frame.subset(["t2"])?, &situations.subset(["w2", "w3"])?)?;
//!
//! let bounds = max_min_bounds(&expert.synthesize()?, DEFAULT_ENUM_CAP)?;
//! assert_eq!(bounds.lower(&frame.subset(["t1"])?)?.to_string(), "{w1}");
//! assert_eq!(bounds.upper(&frame.subset(["t2"])?)?.to_string(), "{w2,w3}");
//! # Ok::<(), interval_structures::Error>(())
//! ```
//!
//! Each capability has a runnable walkthrough under `examples/`:
//!
//! ```bash
//! cargo run --example synthesize_rules
//! cargo run --example validate_structure
//! cargo run --example compatibility_bounds
//! cargo run --example rough_approximations
//! cargo run --example belief_functions
//! cargo run --example incidence_bounds
//! ```

pub mod belief;
pub mod cli;
pub mod compatibility;
mod error;
pub mod interval;
pub mod rough;
pub mod sets;
pub mod synthesis;

#[cfg(test)]
pub(crate) mod testdata;

pub use error::{Error, Result};
pub use interval::{BasicSetAssignment, IntervalStructure, SetValuedMap};
pub use sets::{Subset, Universe, DEFAULT_ENUM_CAP, MAX_UNIVERSE_SIZE};
