use alloc::string::String;

/// Errors raised anywhere in the counting toolkit.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("{0} is not a prime power")]
    NotPrimePower(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field of size {p}^{k} exceeds the supported range")]
    FieldTooLarge { p: u64, k: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("element code {code} is out of range for a field with {q} elements")]
    ElementOutOfRange { code: u64, q: u64 },
    #[error("odd field size required, got q = {0}")]
    EvenField(u64),
    #[error("vertex {vertex} out of range 1..={n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("edge index {index} out of range 1..={m}")]
    EdgeOutOfRange { index: usize, m: usize },
    #[error("graph must be simple")]
    NotSimple,
    #[error("vertex {0} is not an apex")]
    NotApex(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("operation needs about {estimate} field operations, budget is {limit}")]
    BudgetExceeded { estimate: u128, limit: u128 },
    #[error("formula outside its stated range: {0}")]
    BoundaryAmbiguous(String),
    #[error("duplicate abscissa q = {0}")]
    DuplicateAbscissa(u64),
    #[error("insufficient points: {0}")]
    InsufficientPoints(String),
}

pub type Result<T> = core::result::Result<T, Error>;
