use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("carrier must contain at least one element")]
    EmptyCarrier,
    #[error("element labels must be nonempty")]
    EmptyLabel,
    #[error("duplicate element label `{0}`")]
    DuplicateLabel(String),
    #[error("unknown element `{0}`")]
    UnknownLabel(String),
    #[error("element index {index} out of range for a carrier of size {size}")]
    IndexOutOfRange { index: usize, size: usize },
    #[error("carrier of size {size} exceeds the supported maximum of {max}")]
    CarrierTooLarge { size: usize, max: usize },
    #[error("carrier of size {size} exceeds the enumeration bound {bound}")]
    EnumerationBound { size: usize, bound: usize },
    #[error("operands live on different carriers")]
    CarrierMismatch,
    #[error("expected {expected} values, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("subset is not contained in the enclosing set")]
    NotSubset,
    #[error("relation is not a predomain: {0}")]
    NotPredomain(String),
    #[error("not a topology: {0}")]
    NotTopology(String),
    #[error("not a round ideal: {0}")]
    NotRoundIdeal(String),
    #[error("not a commutative monoid: {0}")]
    NotMonoid(String),
    #[error("not a preCuntz semigroup: {0}")]
    NotPreCuntz(String),
    #[error("not a partial order: {0}")]
    NotPartialOrder(String),
    #[error("function is not monotone: f({lo}) > f({hi}) although {lo} <= {hi}")]
    NotMonotone { lo: String, hi: String },
    #[error("function is not lower semicontinuous at `{0}`")]
    NotLsc(String),
    #[error("map is not continuous: {0}")]
    NotContinuous(String),
    #[error("not a monoid homomorphism: {0}")]
    NotHomomorphism(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("epsilon must be strictly positive")]
    NonPositiveEpsilon,
    #[error("product {0} is undefined in interval mode")]
    UndefinedProduct(String),
    #[error("invalid rational `{0}`")]
    InvalidRational(String),
    #[error("internal inconsistency: {0}")]
    InternalInconsistency(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
