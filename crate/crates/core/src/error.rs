use alloc::string::String;
use core::fmt;

/// Everything that can go wrong in this crate.
///
/// Several variants (`NonExactDivision`, `NoUniqueMaximum`,
/// `LeadingCoefficientNotOne`, `NonTermination`, `SingularSystem`) can only be
/// produced by an internal bug; they are surfaced instead of panicking so the
/// CLI can report them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// A textual input could not be parsed. `pos` is a byte offset.
    Parse { token: String, pos: usize, reason: &'static str },
    /// Structurally invalid input (bad rank, out-of-range vertex, ...).
    Invalid(String),
    /// Operands live over different cyclic quivers.
    RankMismatch { left: usize, right: usize },
    /// Hall vectors with different basis tags were combined.
    BasisMismatch,
    NegativeArgument,
    NonExactDivision,
    NoUniqueMaximum,
    InputNotStronglyPeriodic,
    InputNotAperiodic,
    NotPyramidic,
    LeadingCoefficientNotOne,
    NonTermination,
    SingularSystem,
    /// An enumeration grew past the configured bound.
    BudgetExceeded { budget: u64 },
}

pub type Result<T> = core::result::Result<T, Error>;

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::Parse { token, pos, reason } => {
                write!(f, "parse error at position {pos}: {reason} (token `{token}`)")
            }
            Error::Invalid(msg) => write!(f, "invalid input: {msg}"),
            Error::RankMismatch { left, right } => {
                write!(f, "rank mismatch: n={left} vs n={right}")
            }
            Error::BasisMismatch => f.write_str("hall vectors use different bases"),
            Error::NegativeArgument => f.write_str("negative argument"),
            Error::NonExactDivision => f.write_str("polynomial division is not exact"),
            Error::NoUniqueMaximum => f.write_str("no unique maximal extension"),
            Error::InputNotStronglyPeriodic => f.write_str("matrix is not strongly periodic"),
            Error::InputNotAperiodic => f.write_str("matrix is not aperiodic"),
            Error::NotPyramidic => f.write_str("sequence is not pyramidic"),
            Error::LeadingCoefficientNotOne => {
                f.write_str("leading coefficient of a monomial is not 1")
            }
            Error::NonTermination => f.write_str("canonical basis iteration did not terminate"),
            Error::SingularSystem => f.write_str("singular linear system"),
            Error::BudgetExceeded { budget } => {
                write!(f, "enumeration exceeded budget of {budget}")
            }
        }
    }
}

impl core::error::Error for Error {}
