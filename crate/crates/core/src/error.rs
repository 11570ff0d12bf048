use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size {n} outside the supported range 1..={max}")]
    SizeOutOfRange { n: usize, max: usize },

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("partition {0} is crossing")]
    Crossing(String),

    #[error("mismatched ground-set sizes {left} and {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("insertion position {k} outside 0..={max}")]
    InsertPosition { k: usize, max: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("words must be non-empty")]
    EmptyWord,

    #[error("letter {letter} outside alphabet 1..={alphabet}")]
    LetterOutOfRange { letter: u32, alphabet: usize },

    #[error("word of length {len} exceeds truncation order {order}")]
    WordTooLong { len: usize, order: usize },

    #[error("alphabet mismatch: {left} vs {right}")]
    AlphabetMismatch { left: usize, right: usize },

    #[error("truncation order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series is not invertible: degree-1 coefficient of letter {0} is zero")]
    NotInvertible(u32),

    #[error("product of degree {degree} exceeds model order {order}")]
    DegreeOverflow { degree: usize, order: usize },

    #[error("index {index} outside 1..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("matrix dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("entry ({r},{i},{j}) is not a scalar multiple of a single generator")]
    NonGeneratorEntry { r: usize, i: usize, j: usize },

    #[error("argument is not affine in the generators")]
    NotAffine,

    #[error("family is not R-cyclic: {0}")]
    NotRCyclic(String),

    #[error("partial-summation condition fails: {0}")]
    PartialSum(String),

    #[error("chain hypothesis fails: {0}")]
    ChainHypothesis(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
