use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("argument must be nonzero")]
    ZeroArgument,
    #[error("polynomial has fewer than two finite Newton points")]
    DegeneratePolynomial,
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("roots require an extension of the local field: {0}")]
    NeedsExtension(String),
    #[error("Hensel hypothesis fails at the approximation")]
    HenselHypothesisFailed,
    #[error("twist parameter must be nonzero")]
    ZeroTwist,
    #[error("argument must be non-constant")]
    ConstantArgument,
    #[error("point is not in the filled Julia set")]
    NotInJuliaSet,
    #[error("no annihilator of degree <= {budget} found (point did not escape)")]
    BudgetExceeded { budget: u32 },
    #[error("input set is not an additive subgroup")]
    NotASubgroup,
    #[error("component data incomplete at {0}")]
    IncompleteComponentData(String),
    #[error("conductor is trivial")]
    TrivialConductor,
    #[error("record is not semistable")]
    NotSemistable,
    #[error("n must exceed the Szpiro ratio")]
    NTooSmall,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("row {row}: {msg}")]
    InvariantViolation { row: usize, msg: String },
    #[error("invalid module: {0}")]
    InvalidModule(String),
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("io error: {0}")]
    Io(String),
}

impl Error {
    /// Stable identifier used in machine-readable error lines.
    pub fn code(&self) -> &'static str {
        match self {
            Error::ZeroArgument => "ZeroArgument",
            Error::DegeneratePolynomial => "DegeneratePolynomial",
            Error::PrecisionExhausted(_) => "PrecisionExhausted",
            Error::NeedsExtension(_) => "NeedsExtension",
            Error::HenselHypothesisFailed => "HenselHypothesisFailed",
            Error::ZeroTwist => "ZeroTwist",
            Error::ConstantArgument => "ConstantArgument",
            Error::NotInJuliaSet => "NotInJuliaSet",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::NotASubgroup => "NotASubgroup",
            Error::IncompleteComponentData(_) => "IncompleteComponentData",
            Error::TrivialConductor => "TrivialConductor",
            Error::NotSemistable => "NotSemistable",
            Error::NTooSmall => "NTooSmall",
            Error::Parse(_) => "ParseError",
            Error::InvariantViolation { .. } => "InvariantViolation",
            Error::InvalidModule(_) => "InvalidModule",
            Error::Invalid(_) => "InvalidInput",
            Error::Io(_) => "IOError",
        }
    }
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
