use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("series order mismatch: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("series has a zero constant term and is not invertible")]
    NotInvertible,

    #[error("coefficient a_{index} = {value} is not an integer")]
    NonIntegral { index: usize, value: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("{0} is not alternating")]
    NotAlternating(String),

    #[error("{perm} is outside the domain: {reason}")]
    OutsideDomain { perm: String, reason: String },

    #[error("malformed decomposition: {0}")]
    MalformedDecomposition(String),

    #[error("degree {n} is out of range: {reason}")]
    DegreeOutOfRange { n: usize, reason: &'static str },

    #[error("Euler prefix holds E_0..E_{have} but E_{need} is required")]
    EulerPrefixTooShort { have: usize, need: usize },

    #[error("max-n {max_n} exceeds the enumeration cap {cap} (raise with --cap or EULER_REFINE_CAP)")]
    CapExceeded { max_n: usize, cap: usize },

    #[error("unknown sequence '{0}'; valid names: E, Ene, Enw, Eup, Edown, Dup, Ddown")]
    UnknownSequence(String),

    #[error("{0}")]
    Usage(String),

    #[error("routes disagree on {column} at n={n}: {detail}")]
    RouteDisagreement { n: usize, column: &'static str, detail: String },

    #[error("malformed b-file line {line}: {text}")]
    BFile { line: usize, text: String },
}

impl Error {
    /// Process exit status for the command-line front end: 2 for bad
    /// arguments, 1 for everything else.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Usage(_)
            | Error::UnknownSequence(_)
            | Error::CapExceeded { .. }
            | Error::DegreeOutOfRange { .. }
            | Error::InvalidPermutation(_) => 2,
            _ => 1,
        }
    }
}
