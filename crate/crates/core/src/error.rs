use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("modulus {0} is not prime")]
    NonPrimeModulus(u32),
    #[error("characteristic 2 is not supported; q must be an odd prime")]
    EvenCharacteristic,
    #[error("modulus {0} is too small; q must be an odd prime")]
    TooSmall(u32),
    #[error("modulus {0} exceeds the supported maximum")]
    ModulusTooLarge(u32),
    #[error("division by zero")]
    DivisionByZero,

    #[error("dimension {0} is outside the supported range 2..=6")]
    UnsupportedDimension(usize),
    #[error("matrix shapes or groups do not match")]
    DimensionMismatch,
    #[error("matrix is not an element of the group: {0}")]
    NotInGroup(&'static str),
    #[error("code {0} is outside the code space")]
    CodeOutOfRange(u64),
    #[error("group order {order} exceeds the element guard {guard}")]
    ResourceGuardExceeded { order: String, guard: u64 },

    #[error("element list is not a subgroup: {0}")]
    NotASubgroup(&'static str),
    #[error("element {0} is not in the subgroup")]
    ElementNotInSubgroup(u64),
    #[error("subgroup orders differ ({0} vs {1})")]
    OrderMismatch(u64, u64),
    #[error("subgroup order {order} exceeds the size guard {guard}")]
    SizeGuardExceeded { order: u64, guard: u64 },

    #[error("fingerprint collision: expected {expected} types, found {found}")]
    FingerprintCollision { expected: usize, found: usize },
    #[error("equal fingerprints for non-isomorphic centralizers: {0}")]
    NonIsomorphicCollision(String),
    #[error("closure did not stabilise within depth {0}")]
    DepthCapExceeded(usize),

    #[error("no reference data for {0}")]
    UnsupportedGroup(String),
    #[error("k = {0} is outside the supported range 2..=5")]
    UnsupportedK(usize),
    #[error("polynomial parse error at byte {pos}: {msg}")]
    PolyParse { pos: usize, msg: String },

    #[error("empirical matrix has {empirical} types, reference has {reference} present types")]
    DimensionIncompatible { empirical: usize, reference: usize },
    #[error("need at least {needed} sample points, got {got}")]
    InsufficientPoints { needed: usize, got: usize },
    #[error("interpolated coefficients are not integral for entry ({row}, {col})")]
    NonIntegralCoefficients { row: String, col: String },
    #[error("verification precondition failed: {0}")]
    Precondition(String),
}
