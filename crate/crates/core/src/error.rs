use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("generator index {index} out of range for {generator_count} generators")]
    InvalidWord { index: usize, generator_count: usize },
    #[error("a presentation needs at least one generator")]
    NoGenerators,
    #[error("Schläfli symbol has no entries")]
    EmptySymbol,
    #[error("Schläfli entry {0} is below 2")]
    BadSchlafliEntry(u64),
    #[error("generator counts differ: {0} vs {1}")]
    GeneratorCountMismatch(usize, usize),
    #[error("parse error at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("coset enumeration needed more than {budget} cosets")]
    BudgetExceeded { budget: usize },
    #[error("coset action has order {action} but the presented group has order {presented}")]
    FaithfulnessFailure { action: String, presented: String },
    #[error("permutation degrees differ: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("ranks differ: {0} vs {1}")]
    RankMismatch(usize, usize),
    #[error("group of order {order} exceeds the element cap {cap}")]
    CapExceeded { order: String, cap: usize },
    #[error("{0} is not a regular convex polytope")]
    NotConvexSeed(String),
    #[error("{flags} flags exceeds the limit of {max_flags}")]
    TooLarge { flags: String, max_flags: usize },
    #[error("f_{k} = {numerator} / {denominator} is not an integer")]
    NonIntegralFaceCount {
        k: usize,
        numerator: String,
        denominator: String,
    },
    #[error("malformed table data: {0}")]
    Table(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
