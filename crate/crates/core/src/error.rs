use thiserror::Error;

use crate::partition::Partition;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("bead count {beads} is smaller than the number of parts {parts}")]
    BeadCountTooSmall { beads: usize, parts: usize },

    #[error("runner count must be at least 2, got {0}")]
    InvalidRunnerCount(usize),

    #[error("partitions have different sizes ({0} and {1})")]
    SizeMismatch(usize, usize),

    #[error("operation requires a nonempty partition")]
    EmptyPartition,

    #[error("{partition} is not {e}-regular")]
    NotERegular { partition: Partition, e: usize },

    #[error("partition {0} does not lie in the expected block")]
    WrongBlock(Partition),

    #[error("partitions lie in different blocks")]
    DifferentBlock,

    #[error("block context mismatch: {0}")]
    BlockMismatch(String),

    #[error("decoded partition has weight {found}, block has weight {expected}")]
    WeightMismatch { expected: usize, found: usize },

    #[error("syntax error at byte {offset}: {message}")]
    Syntax { offset: usize, message: String },

    #[error("runner {0} appears more than once")]
    DuplicateRunner(usize),

    #[error("runner {runner} out of range for {e} runners")]
    RunnerOutOfRange { runner: usize, e: usize },

    #[error("subscript at byte {offset} is not weakly decreasing")]
    NonPartitionSubscript { offset: usize },

    #[error("characteristic must be 0 or a prime, got {0}")]
    InvalidCharacteristic(usize),

    #[error("abacus position {0} exceeds the supported range")]
    PositionOverflow(usize),

    #[error("quantum factorial division was not exact")]
    NonExactDivision,

    #[error("canonical basis correction diverged for {0}")]
    CorrectionDiverged(Partition),

    #[error("intermediate entry ({lambda}, {mu}) is unresolved")]
    HypothesisUnmet { lambda: Partition, mu: Partition },

    #[error("canonical-basis expansion left a residue at {0}")]
    ExpansionResidue(Partition),

    #[error("expansion coefficient at {0} is not in N0[v+v^-1]")]
    PositivityViolation(Partition),

    #[error("malformed cache file at line {line}: {message}")]
    Cache { line: usize, message: String },

    #[error("malformed fixture: {0}")]
    Fixture(String),

    #[error("{0}")]
    Invariant(String),
}
