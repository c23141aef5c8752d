use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// Domain errors. The variant name doubles as the error name reported by the CLI.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid root system type: {0}")]
    InvalidType(String),
    #[error("weight is not dominant integral: {0}")]
    Dominance(String),
    #[error("peel-off failed: {0}")]
    Peel(String),
    #[error("not a Hermitian real form: {0}")]
    NotHermitian(String),
    #[error("exceptional Hermitian data not supported: {0}")]
    UnsupportedExceptional(String),
    #[error("highest weight is not of scalar type: {0}")]
    NotScalarType(String),
    #[error("parameter is not a holomorphic discrete series: {0}")]
    NotHoloDs(String),
    #[error("invalid highest weight: {0}")]
    InvalidHw(String),
    #[error("parameter out of range: {0}")]
    Parameter(String),
    #[error("node is not of pan type: {0}")]
    NonPan(String),
    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub fn name(&self) -> &'static str {
        match self {
            Error::InvalidType(_) => "InvalidTypeError",
            Error::Dominance(_) => "DominanceError",
            Error::Peel(_) => "PeelError",
            Error::NotHermitian(_) => "NotHermitianError",
            Error::UnsupportedExceptional(_) => "UnsupportedExceptionalError",
            Error::NotScalarType(_) => "NotScalarTypeError",
            Error::NotHoloDs(_) => "NotHoloDSError",
            Error::InvalidHw(_) => "InvalidHWError",
            Error::Parameter(_) => "ParameterError",
            Error::NonPan(_) => "NonPanError",
            Error::Parse(_) => "ParseError",
        }
    }
}
