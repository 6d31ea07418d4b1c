use thiserror::Error;

/// Errors surfaced by every module of the crate.
///
/// Each variant has a stable machine-readable [`code`](Error::code) used by
/// the command-line frontend.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("field mismatch: {0}")]
    FieldMismatch(String),
    #[error("ring mismatch: {0}")]
    RingMismatch(String),
    #[error("polynomial has a nonzero constant term")]
    NotInMaximalIdeal,
    #[error("characteristic {p} is too small for a polynomial of degree {degree}")]
    CharTooSmall { p: u64, degree: u64 },
    #[error("quasi-homogeneity of the zero polynomial is undefined")]
    QhOfZeroUndefined,
    #[error("element is not in the ideal")]
    NotInIdeal,
    #[error("degree mismatch: {0}")]
    DegreeMismatch(String),
    #[error("not homogeneous: {0}")]
    NotHomogeneous(String),
    #[error("cofactors do not reproduce sigma")]
    BadCoefficients,
    #[error("matrix factorisations have different potentials")]
    SigmaMismatch,
    #[error("variable clash: {0}")]
    VariableClash(String),
    #[error("the field does not contain a square root of -1")]
    FieldLacksI,
    #[error("polynomial is not a quadratic form")]
    NotQuadratic,
    #[error("requested window {window} needs truncation bound > {needed}, got {bound}")]
    WindowExceedsBound {
        window: i64,
        bound: usize,
        needed: i64,
    },
    #[error("element is not idempotent")]
    NotIdempotent,
    #[error("weight is not quasi-dominant at vertex {0}")]
    NotQuasiDominant(usize),
    #[error("algebra is not augmented: {0}")]
    NotAugmented(String),
    #[error("coalgebra is not conilpotent")]
    NotConilpotent,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("internal bound exceeded: {0}")]
    BoundExceeded(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::FieldMismatch(_) => "FieldMismatch",
            Error::RingMismatch(_) => "RingMismatch",
            Error::NotInMaximalIdeal => "NotInMaximalIdeal",
            Error::CharTooSmall { .. } => "CharTooSmall",
            Error::QhOfZeroUndefined => "QHofZeroUndefined",
            Error::NotInIdeal => "NotInIdeal",
            Error::DegreeMismatch(_) => "DegreeMismatch",
            Error::NotHomogeneous(_) => "NotHomogeneous",
            Error::BadCoefficients => "BadCoefficients",
            Error::SigmaMismatch => "SigmaMismatch",
            Error::VariableClash(_) => "VariableClash",
            Error::FieldLacksI => "FieldLacksI",
            Error::NotQuadratic => "NotQuadratic",
            Error::WindowExceedsBound { .. } => "WindowExceedsBound",
            Error::NotIdempotent => "NotIdempotent",
            Error::NotQuasiDominant(_) => "NotQuasiDominant",
            Error::NotAugmented(_) => "NotAugmented",
            Error::NotConilpotent => "NotConilpotent",
            Error::Parse(_) => "Parse",
            Error::Invalid(_) => "Invalid",
            Error::BoundExceeded(_) => "BoundExceeded",
        }
    }

    /// Process exit code: 2 for malformed input, 3 for refused computations,
    /// 4 for exceeded internal bounds.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_)
            | Error::Invalid(_)
            | Error::FieldMismatch(_)
            | Error::RingMismatch(_)
            | Error::VariableClash(_)
            | Error::SigmaMismatch
            | Error::DegreeMismatch(_)
            | Error::BadCoefficients => 2,
            Error::WindowExceedsBound { .. } | Error::BoundExceeded(_) => 4,
            _ => 3,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
