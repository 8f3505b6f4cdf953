use thiserror::Error;

/// Errors produced by field construction, arithmetic, and the analyses built on top.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("{value} is not prime (divisible by {factor})")]
    NotPrime { value: u64, factor: u64 },

    #[error("{0} is not prime (primes are at least 2)")]
    TooSmallForPrime(u64),

    #[error("extension degree must be at least 1")]
    ZeroDegree,

    #[error("field order {p}^{n} exceeds the supported bound of 2^32 elements")]
    OrderTooLarge { p: u64, n: usize },

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("coefficient {coeff} at x^{power} is not reduced modulo {p}")]
    UnreducedCoefficient { coeff: u64, power: usize, p: u64 },

    #[error("polynomial must have degree at least 1")]
    ConstantPolynomial,

    #[error("modulus has degree {found}, expected {expected}")]
    ModulusDegree { expected: usize, found: usize },

    #[error("modulus {modulus} is reducible over F_{p}: divisible by {factor}")]
    ReducibleModulus { modulus: String, factor: String, p: u64 },

    #[error("elements belong to different fields")]
    ContextMismatch,

    #[error("zero has no multiplicative inverse")]
    ZeroInverse,

    #[error("canonical index {index} is out of range for a field of order {order}")]
    IndexOutOfRange { index: u64, order: u64 },

    #[error("coefficient vector has length {found}, expected {expected}")]
    CoefficientLength { expected: usize, found: usize },

    #[error("the zero polynomial vanishes on every element")]
    ZeroPolynomial,

    #[error("fields have different orders: {a_p}^{a_n} vs {b_p}^{b_n}")]
    OrderMismatch { a_p: u64, a_n: usize, b_p: u64, b_n: usize },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error("{0} has no prime factorisation (expected an integer >= 2)")]
    BelowTwo(u64),

    #[error("invalid sweep: {0}")]
    InvalidSweep(String),

    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    #[error("interval map T_{0} requires n > 1")]
    IntervalMapDegree(u64),

    #[error("{num}/{den} is not a point of [0, 1]")]
    NotUnitInterval { num: u64, den: u64 },

    #[error("arithmetic overflow: {0}")]
    Overflow(String),

    #[error("{message} at position {position} (token {token:?})")]
    Parse {
        message: String,
        token: String,
        position: usize,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
