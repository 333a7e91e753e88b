use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("mixed degrees: expected every term of degree {expected}, found a term of degree {found}")]
    MixedDegree { expected: u32, found: u32 },

    #[error("variable X{index} out of range for {n_vars} variables")]
    VariableOutOfRange { index: usize, n_vars: usize },

    #[error("index {index} out of range (must be < {bound})")]
    IndexOutOfRange { index: usize, bound: usize },

    #[error("division by zero")]
    DivisionByZero,

    #[error("invalid field: {0}")]
    InvalidField(String),

    #[error("field mismatch: {0}")]
    FieldMismatch(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is singular")]
    SingularMatrix,

    #[error("the zero polynomial is not allowed here")]
    ZeroPolynomial,

    #[error("polynomial is not homogeneous")]
    NotHomogeneous,

    #[error("weight vector entries must sum to zero (sum is {0})")]
    NonZeroSum(i64),

    #[error("weight vector must be sorted in nondecreasing order")]
    UnsortedWeights,

    #[error("weight vector must be nonzero")]
    ZeroWeights,

    #[error("invalid weights: {0}")]
    InvalidWeights(String),

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("enumeration budget exceeded: {needed} evaluations needed, budget is {budget}")]
    BudgetExceeded { needed: u64, budget: u64 },

    #[error("no usable prime: {0}")]
    BadPrimes(String),

    #[error("internal inconsistency: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;
