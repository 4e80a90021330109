use thiserror::Error;

/// Errors raised by every fallible operation in the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid group: {0}")]
    InvalidGroup(String),

    #[error("element has {found} coordinates but the group has {expected} components")]
    CoordinateMismatch { expected: usize, found: usize },

    #[error("residue {value} at component {component} is out of range for modulus {modulus}")]
    ResidueOutOfRange {
        component: usize,
        value: i64,
        modulus: u32,
    },

    #[error("zero element not allowed in a support set")]
    ZeroElement,

    #[error("duplicate element {0} in support set")]
    DuplicateElement(String),

    #[error("sequence has {found} exponents but the support set has {expected} elements")]
    SupportMismatch { expected: usize, found: usize },

    #[error("sequence does not divide the dividend")]
    NotDivisor,

    #[error("sequence is not zero-sum (sum is {0})")]
    NotZeroSum(String),

    #[error("{what} budget exceeded: required {required}, budget {budget}")]
    BudgetExceeded {
        what: &'static str,
        required: u128,
        budget: u128,
    },

    #[error("parse error at position {position}: expected {expected}, found {found}")]
    Parse {
        position: usize,
        expected: String,
        found: String,
    },

    #[error("support set is not minimal non-half-factorial")]
    NotMinimalNonHalfFactorial,

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("internal consistency fault: {0}")]
    Inconsistent(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
