use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at `{token}`: {reason}")]
    Parse { token: String, reason: String },

    #[error("field mismatch: expected {expected}, found {found}")]
    FieldMismatch { expected: String, found: String },

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("singular form or matrix")]
    Singular,

    #[error("matrix is not symmetric")]
    NotSymmetric,

    #[error("zero argument where a nonzero element is required")]
    ZeroArgument,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("{0} is not a unit at the requested prime")]
    NotUnit(String),

    #[error("dyadic place is resolved by reciprocity and cannot be evaluated directly")]
    DyadicPlace,

    #[error("cannot factor {0} within the configured prime bound")]
    Factorization(String),

    #[error("isotropy over Q(sqrt 5) is undecided for this form")]
    Undecided,

    #[error("matrix does not preserve the target form")]
    NotIsometry,

    #[error("witness failed verification")]
    WitnessCheck,

    #[error("unknown section `{0}`")]
    UnknownSection(String),
}

impl Error {
    pub(crate) fn parse(token: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Parse {
            token: token.into(),
            reason: reason.into(),
        }
    }
}
