use thiserror::Error;

/// Errors raised by ring construction, arithmetic, enumeration and lifting.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("NotPrime: {0} is not a prime")]
    NotPrime(u64),
    #[error("Reducible: defining polynomial {0} is reducible over F_p")]
    Reducible(String),
    #[error("InvalidPolynomial: {0}")]
    InvalidPolynomial(String),
    #[error("DivisionByZero")]
    DivisionByZero,
    #[error("FieldMismatch: operands live in different residue fields")]
    FieldMismatch,
    #[error("CharMismatch: characteristic {0} vs {1}")]
    CharMismatch(u64, u64),
    #[error("NotAUnit: element has positive valuation")]
    NotAUnit,
    #[error("RingMismatch: operands live in different rings")]
    RingMismatch,
    #[error("NotEisenstein: {0}")]
    NotEisenstein(String),
    #[error("InsufficientPrecision: requested {requested}, known to {available}")]
    InsufficientPrecision { requested: u32, available: u32 },
    #[error("PrecisionOverflow: p^{exponent} does not fit the 63-bit coefficient word for p = {p}")]
    PrecisionOverflow { p: u64, exponent: u32 },
    #[error("TooLarge: {size} elements exceed the enumeration cap {cap}")]
    TooLarge { size: u128, cap: u128 },
    #[error("PrecisionTooLow: {0}")]
    PrecisionTooLow(String),
    #[error("Degenerate: {0}")]
    Degenerate(String),
    #[error("PreconditionBound: lifting requires n2 \u{2265} {threshold}, got n2 = {n2}")]
    PreconditionBound { threshold: u32, n2: u32 },
    #[error("NoRoot: no root of the twisted polynomial satisfies the Krasner inequality")]
    NoRoot,
    #[error("MultipleRoots: {0} roots satisfy the Krasner inequality")]
    MultipleRoots(usize),
    #[error("IncompatibleLengths: n1 = {n1}, n2 = {n2}, e1 = {e1}, e2 = {e2}")]
    IncompatibleLengths { n1: u32, n2: u32, e1: u32, e2: u32 },
    #[error("NotComposable: {0}")]
    NotComposable(String),
    #[error("NotAHomomorphism: {0}")]
    NotAHomomorphism(String),
    #[error("Parse: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
