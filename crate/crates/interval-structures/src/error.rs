use thiserror::Error;

use crate::interval::AxiomReport;

/// Errors produced by construction and checking operations across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("universe needs at least one label")]
    EmptyUniverse,

    #[error("universe labels must be non-empty strings")]
    EmptyLabel,

    #[error("duplicate label `{0}` in universe")]
    DuplicateLabel(String),

    #[error("universe of {size} labels exceeds the supported maximum of {max}")]
    UniverseTooLarge { size: usize, max: usize },

    #[error("operands belong to different universes")]
    UniverseMismatch,

    #[error("label `{0}` is not declared in the universe")]
    UnknownLabel(String),

    #[error("element index {index} out of range for universe of size {size}")]
    IndexOutOfRange { index: usize, size: usize },

    #[error("universe of {size} elements exceeds the dense-enumeration cap of {cap}")]
    CapExceeded { size: usize, cap: usize },

    #[error("basic set assignment maps the empty set to a non-empty value")]
    BsaEmptyKey,

    #[error("basic set assignment values do not cover the universe; {missing} is unassigned")]
    BsaIncomplete { missing: String },

    #[error("basic set assignment values for {a} and {b} overlap on {common}")]
    BsaOverlap {
        a: String,
        b: String,
        common: String,
    },

    #[error("axiom check failed: {0}")]
    Axioms(AxiomReport),

    #[error("relation is not serial: {0}")]
    NotSerial(String),

    #[error("partition block {0} is empty")]
    EmptyBlock(usize),

    #[error("partition blocks {a} and {b} overlap")]
    BlockOverlap { a: usize, b: usize },

    #[error("partition blocks do not cover the universe; {missing} is unassigned")]
    PartitionIncomplete { missing: String },

    #[error("expected {expected} block labels, got {got}")]
    BlockLabelCount { expected: usize, got: usize },

    #[error("mass for {0} must be non-negative")]
    NegativeMass(String),

    #[error("mass assigned to the empty set")]
    MassOnEmptySet,

    #[error("masses sum to {0}, expected 1")]
    MassSum(f64),

    #[error("point masses sum to {0}, expected 1")]
    ProbabilitySum(f64),

    #[error("belief table has {got} entries, expected {expected}")]
    TableSize { expected: usize, got: usize },

    #[error("not a belief function: value for empty set is {0}, expected 0")]
    BeliefAtEmpty(f64),

    #[error("not a belief function: value for full set is {0}, expected 1")]
    BeliefAtFull(f64),

    #[error("not a belief function: mass transform is {value} at {witness}")]
    NotBelief { witness: String, value: f64 },

    #[error("duplicate assignment entry for {0}")]
    DuplicateEntry(String),

    #[error("lower bound of {witness} is not inside its upper bound")]
    BoundsOrder { witness: String },

    #[error("no interval structure: {w} lies in the lower bounds of {sets}, whose intersection is empty")]
    Inconsistent { w: String, sets: String },

    #[error("rule closure is inconsistent: derived lower bound of {witness} is not inside the derived upper bound")]
    ClosureInconsistent { witness: String },

    #[error("instance exceeds the closure-oracle size bound ({theta} propositions over {w} situations; max {max_theta} and {max_w})")]
    OracleLimit {
        theta: usize,
        w: usize,
        max_theta: usize,
        max_w: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
