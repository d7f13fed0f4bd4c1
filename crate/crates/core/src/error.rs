use thiserror::Error;

/// Domain errors. Every variant carries a stable machine-readable code (see [`Error::code`]).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),
    #[error("unknown preset `{0}` (expected GL(n), SL(n), PGL(n), Sp(4) or GSp(4))")]
    UnknownPreset(String),
    #[error("vector {0} is not dominant")]
    NotDominant(String),
    #[error("Weyl group has more than {0} elements")]
    GroupTooLarge(usize),
    #[error("bad Levi subset: {0}")]
    BadLeviSubset(String),
    #[error("Kottwitz class does not match the Newton point: {0}")]
    KappaMismatch(String),
    #[error("no integral lift to the centralizer Levi: {0}")]
    NotIntegral(String),
    #[error("non-integral renormalization shift {0}")]
    NonIntegralShift(String),
    #[error("parameter shape outside the classifier: {0}")]
    UnsupportedShape(String),
    #[error("parameter is not generous: {0}")]
    NotGenerous(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("target minus 2rho is not dominant: {0}")]
    NotInShiftedCone(String),
    #[error("window is not closed: {0}")]
    WindowNotClosed(String),
    #[error("ambiguous extension at stratum {0}")]
    AmbiguousExtension(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    /// Stable identifier used by the CLI on standard error.
    pub fn code(&self) -> &'static str {
        match self {
            Error::InvalidCartan(_) => "InvalidCartan",
            Error::UnknownPreset(_) => "UnknownPreset",
            Error::NotDominant(_) => "NotDominant",
            Error::GroupTooLarge(_) => "GroupTooLarge",
            Error::BadLeviSubset(_) => "BadLeviSubset",
            Error::KappaMismatch(_) => "KappaMismatch",
            Error::NotIntegral(_) => "NotIntegral",
            Error::NonIntegralShift(_) => "NonIntegralShift",
            Error::UnsupportedShape(_) => "UnsupportedShape",
            Error::NotGenerous(_) => "NotGenerous",
            Error::DimensionMismatch(_) => "DimensionMismatch",
            Error::NotInShiftedCone(_) => "NotInShiftedCone",
            Error::WindowNotClosed(_) => "WindowNotClosed",
            Error::AmbiguousExtension(_) => "AmbiguousExtension",
            Error::Parse(_) => "Parse",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
