use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: [{left}] vs [{right}]")]
    RingMismatch { left: String, right: String },

    #[error("invalid ring declaration: {0}")]
    InvalidRing(String),

    #[error("unknown variable `{0}`")]
    UnknownVariable(String),

    #[error("variable `{0}` is not invertible")]
    NotInvertible(String),

    #[error("formal variable mismatch: {0}")]
    FormalVariables(String),

    #[error("substituted series for `{0}` has a nonzero constant term")]
    NonzeroConstantTerm(String),

    #[error("series cannot be reversed: {0}")]
    NotReversible(String),

    #[error("truncation order {0} is below the minimum of 2")]
    OrderTooSmall(usize),

    #[error("truncation order {have} is too small; need at least {need}")]
    InsufficientOrder { have: usize, need: usize },

    #[error("unassigned variable `{0}` in ring map")]
    UnassignedVariable(String),

    #[error("specialized law violates the formal group law axioms: {0}")]
    NotAFormalGroupLaw(String),

    #[error("negative dimension {0}")]
    NegativeDimension(i64),

    #[error("invalid variety: {0}")]
    InvalidVariety(String),

    #[error("mixed dimensions {0} and {1}")]
    MixedDimension(usize, usize),

    #[error("partition {partition:?} does not sum to dimension {dim}")]
    BadPartition { partition: Vec<usize>, dim: usize },

    #[error("dimension {dim} is not of the form p^n - 1 for p = {p}")]
    NotPrimePowerDimension { dim: usize, p: u64 },

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("s-number {value} is not divisible by {p}")]
    NotDivisible { value: String, p: u64 },

    #[error("dimension {dim} exceeds the configured bound {bound}")]
    DimensionBound { dim: usize, bound: usize },

    #[error("singular Chern-number matrix in dimension {0}")]
    SingularBasis(usize),

    #[error("independent computations disagree: {0}")]
    OracleDisagreement(String),

    #[error("unsupported theory: {0}")]
    UnsupportedTheory(String),

    #[error("catalog error: {0}")]
    Catalog(String),
}

pub type Result<T> = std::result::Result<T, Error>;
