use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not alternating")]
    NotAlternating,
    #[error("invalid invariant factors: {0}")]
    InvalidInvariantFactors(String),
    #[error("group is infinite")]
    InfiniteGroup,
    #[error("division by zero")]
    DivisionByZero,
    #[error("zero has no multiplicative order")]
    ZeroInput,
    #[error("cannot parse scalar {0:?}")]
    ScalarParse(String),
    #[error("invalid cocycle: {0}")]
    InvalidCocycle(String),
    #[error("operation needs an abelian base group")]
    NonAbelianBase,
    #[error("operation needs a finite base group")]
    UnsupportedInfiniteBase,
    #[error("cocycles live on different groups")]
    IncompatibleCocycles,
    #[error("component out of range: {0}")]
    ComponentOutOfRange(String),
    #[error("element is not central: {0}")]
    NotCentral(String),
    #[error("quotient by the central subgroup is infinite")]
    InfiniteQuotient,
    #[error("point does not match the central subgroup: {0}")]
    PointShapeMismatch(String),
    #[error("element is not supported in the central subgroup")]
    SupportOutsideCenter,
    #[error("radical not representable: {0}")]
    RadicalUnavailable(String),
    #[error("internal consistency check failed: {0}")]
    Internal(String),
}
