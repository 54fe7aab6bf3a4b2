use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("interval needs m >= 1, got m = {0}")]
    EmptyInterval(usize),
    #[error("interval of size m = {m} exceeds the supported maximum {max}")]
    TooWide { m: usize, max: usize },
    #[error("index {index} lies outside {what}")]
    OutOfRange { index: i64, what: String },
    #[error("maya diagram elements must be strictly increasing: {0:?}")]
    NotIncreasing(Vec<i64>),
    #[error("maya diagram is not of the form Z_{{<={n}}} together with a nonempty proper subset of the augmented interval")]
    NotInWindow { n: i64 },
    #[error("missing component for diagram {0:?}")]
    MissingComponent(Vec<i64>),
    #[error("duplicate component for diagram {0:?}")]
    DuplicateComponent(Vec<i64>),
    #[error("negative Lusztig entry {value} at ({i},{j})")]
    NegativeEntry { i: i64, j: i64, value: i64 },
    #[error("expected a datum with {expected} normalization")]
    WrongNormalization { expected: &'static str },
    #[error("interval {inner} is not contained in {outer}")]
    NotSubinterval { inner: String, outer: String },
    #[error("rank parameter l must be at least 3, got {0}")]
    RankTooSmall(usize),
    #[error("residue {p} outside 0..{l}")]
    BadResidue { p: i64, l: usize },
    #[error("window radius {radius} exceeds the cap {cap}")]
    WindowCap { radius: i64, cap: i64 },
    #[error("window data did not stabilize: {0}")]
    Unstable(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid datum: {0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
