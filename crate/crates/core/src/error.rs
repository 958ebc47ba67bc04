use thiserror::Error;

/// Errors raised by construction and audit routines.
///
/// Audit *outcomes* (a check that does not hold) are not errors; they are
/// recorded in reports. These variants signal misuse, unsupported input, or
/// a broken internal invariant.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("cannot parse group spec {input:?} at byte {position}: {reason}")]
    SpecParse {
        input: String,
        position: usize,
        reason: String,
    },

    #[error("unsupported group type: {0}")]
    UnsupportedType(String),

    #[error("unsupported group for this operation: {0}")]
    UnsupportedGroup(String),

    #[error("Weyl group of order {order} exceeds the enumeration cap {cap}; audit reflections individually instead")]
    WeylTooLarge { order: u128, cap: u128 },

    #[error("structure constant validation failed: {0}")]
    StructureConstant(String),

    #[error("degree {0} of the height grading is empty")]
    EmptyDegree(i64),

    #[error("divided power (ad y)^{power}/{power}! is not integral")]
    NonIntegralDividedPower { power: usize },

    #[error("no integral complement over Z[1/N] with N = {n}: {reason}")]
    NoIntegralComplement { n: String, reason: String },

    #[error("invariant form is degenerate: Gram determinant has prime factors {primes:?} not inverted in the working ring")]
    DegenerateForm { primes: Vec<u64> },

    #[error("condition violated: {0}")]
    ConditionViolation(String),

    #[error("brute-force envelope exceeded: {0}")]
    BruteForceTooLarge(String),

    #[error("truncation overflow: result degree {degree} exceeds cap {cap}")]
    TruncationOverflow { degree: usize, cap: usize },

    #[error("invalid configuration: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
