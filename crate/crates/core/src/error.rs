use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("letter {letter} is outside the alphabet 1..={n}")]
    LetterOutOfRange { letter: u32, n: usize },

    #[error("letter {letter} occurs {found} times, expected {expected}")]
    MultiplicityMismatch {
        letter: u32,
        expected: u64,
        found: u64,
    },

    #[error("rearrangement class has {size} words, cap is {cap}")]
    ClassTooLarge { size: u64, cap: u64 },

    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),

    #[error("word uses letter {letter} but the relation is on 1..={n}")]
    AlphabetMismatch { letter: u32, n: usize },

    #[error("invalid ordered bipartition: {0}")]
    InvalidBipartition(String),

    #[error("{free} letters of multiplicity 1 exceed the loop-toggle cap of {cap}")]
    SearchSpaceTooLarge { free: usize, cap: usize },

    #[error("|alpha| = {size} exceeds the chain-word cap of {cap}")]
    SizeCapExceeded { size: u64, cap: u64 },

    #[error("invalid arguments: {0}")]
    InvalidArguments(String),

    #[error("sorting conditions not satisfied: {}", .0.join("; "))]
    ConditionsNotSatisfied(Vec<String>),

    #[error("invalid b-code: {0}")]
    InvalidCode(String),

    #[error("relation universe on n = {n} has 2^{} relations; cap is n <= {cap}", n * n)]
    UniverseTooLarge { n: usize, cap: usize },

    #[error("parse error: {0}")]
    Parse(String),
}
