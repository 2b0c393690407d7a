//! Crate-wide error type.

use std::fmt;

/// Errors raised by series arithmetic, the congruence pipeline, and corpus I/O.
#[derive(Debug)]
pub enum Error {
    /// Binary series operation on operands over different rings.
    RingMismatch,
    /// Constant term is not invertible in the coefficient ring.
    NonUnitConstant,
    /// Ring parameters out of range (modulus < 2 or >= 2^63).
    InvalidModulus(u64),
    /// An operation that needs a nonzero exponent vector received the zero vector.
    ZeroVector,
    /// Asymptotic profile requested for a vector with a negative entry
    /// (the asymptotic formula requires e_m >= 0 for all m).
    NegativeEntry { index: usize, value: i64 },
    /// A modulus that must be prime is not.
    NotPrime(u64),
    /// Legendre symbol and the residue-class sets are undefined for ell = 2.
    EvenPrimeUnsupported,
    /// For ell in {2, 3} the Type-2 machinery requires ell | alpha.
    AlphaNotDivisible { ell: u64, alpha: i64 },
    /// The c-vector construction ran out of fix-up branches.
    ConstructionFailure(String),
    /// A derived quantity violated an invariant the pipeline relies on.
    InvariantBreach(String),
    /// Exact-expansion request beyond the configured budget.
    BudgetExceeded { requested: usize, budget: usize },
    /// Alternating-group series coefficient failed its parity requirement.
    ParityViolation { index: usize },
    /// Claim or residue outside its admissible range.
    InvalidClaim(String),
    /// Corpus file violated the documented schema.
    CorpusSchema(String),
    Io(std::io::Error),
    Json(serde_json::Error),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::RingMismatch => write!(f, "operands live in different coefficient rings"),
            Error::NonUnitConstant => {
                write!(f, "constant term is not a unit in the coefficient ring")
            }
            Error::InvalidModulus(m) => write!(f, "invalid modulus {m} (need 2 <= m < 2^63)"),
            Error::ZeroVector => write!(f, "operation requires a nonzero exponent vector"),
            Error::NegativeEntry { index, value } => write!(
                f,
                "asymptotics require nonnegative entries, found e_{index} = {value}"
            ),
            Error::NotPrime(n) => write!(f, "{n} is not prime"),
            Error::EvenPrimeUnsupported => {
                write!(f, "ell = 2 is unsupported: the Legendre symbol mod 2 is undefined")
            }
            Error::AlphaNotDivisible { ell, alpha } => write!(
                f,
                "ell = {ell} requires ell | alpha, but alpha = {alpha}"
            ),
            Error::ConstructionFailure(msg) => write!(f, "c-vector construction failed: {msg}"),
            Error::InvariantBreach(msg) => write!(f, "invariant breach: {msg}"),
            Error::BudgetExceeded { requested, budget } => write!(
                f,
                "exact expansion of {requested} terms exceeds the budget of {budget}"
            ),
            Error::ParityViolation { index } => write!(
                f,
                "parity violation at index {index}: p(n)_(2) + p(n)_(0,1) must be even"
            ),
            Error::InvalidClaim(msg) => write!(f, "invalid claim: {msg}"),
            Error::CorpusSchema(msg) => write!(f, "corpus schema violation: {msg}"),
            Error::Io(e) => write!(f, "io error: {e}"),
            Error::Json(e) => write!(f, "json error: {e}"),
        }
    }
}

impl std::error::Error for Error {
    fn source(&self) -> Option<&(dyn std::error::Error + 'static)> {
        match self {
            Error::Io(e) => Some(e),
            Error::Json(e) => Some(e),
            _ => None,
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e)
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Json(e)
    }
}

pub type Result<T> = std::result::Result<T, Error>;
