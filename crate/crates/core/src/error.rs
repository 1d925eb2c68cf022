use thiserror::Error;

/// Errors raised by the engine.
///
/// Branch and coordinate indices carried by the variants are zero-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("conductor {0} exceeds the supported maximum of {max}", max = crate::scalar::MAX_CONDUCTOR)]
    ConductorTooLarge(u64),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("branch {branch} is not in Puiseux normal form: {detail}")]
    NotPuiseuxForm { branch: String, detail: String },

    #[error("branch {branch} has a non-primitive parametrization (all exponents divisible by {gcd})")]
    NonPrimitiveParametrization { branch: String, gcd: u64 },

    #[error("tangent branches {0} and {1} share no special coordinate")]
    IncompatibleSystem(usize, usize),

    #[error("branches {0} and {1} have the same image")]
    DuplicateBranch(usize, usize),

    #[error("vectors are linearly dependent")]
    DependentVectors,

    #[error("operation requires ambient dimension {expected}, curve has dimension {found}")]
    UnsupportedDimension { expected: usize, found: usize },

    #[error("cone is a line, not a union of planes")]
    DegenerateCone,

    #[error("branch {0} is not a plane branch")]
    NotPlaneCurve(String),

    #[error("{numerator} is not divisible by {denominator}")]
    NonIntegralResult { numerator: u64, denominator: u64 },

    #[error("contact structure mismatch: {0}")]
    StructureMismatch(String),

    #[error("{found} branches exceed the limit of {limit} for equivalence search")]
    TooManyBranches { found: usize, limit: usize },

    #[error("no coordinate is special for every branch")]
    NoCommonSpecialCoordinate,

    #[error("projection is not of the form (x_s, linear form) with s special for every branch")]
    NotNormalForm,

    #[error("matrix has rank {found}, expected {expected}")]
    RankDeficient { expected: usize, found: usize },

    #[error("no generic projection found with coefficients up to {0}")]
    SearchExhausted(i64),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    /// Stable machine-readable name of the variant.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::DivisionByZero => "DivisionByZero",
            Error::ConductorTooLarge(_) => "ConductorTooLarge",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NotPuiseuxForm { .. } => "NotPuiseuxForm",
            Error::NonPrimitiveParametrization { .. } => "NonPrimitiveParametrization",
            Error::IncompatibleSystem(..) => "IncompatibleSystem",
            Error::DuplicateBranch(..) => "DuplicateBranch",
            Error::DependentVectors => "DependentVectors",
            Error::UnsupportedDimension { .. } => "UnsupportedDimension",
            Error::DegenerateCone => "DegenerateCone",
            Error::NotPlaneCurve(_) => "NotPlaneCurve",
            Error::NonIntegralResult { .. } => "NonIntegralResult",
            Error::StructureMismatch(_) => "StructureMismatch",
            Error::TooManyBranches { .. } => "TooManyBranches",
            Error::NoCommonSpecialCoordinate => "NoCommonSpecialCoordinate",
            Error::NotNormalForm => "NotNormalForm",
            Error::RankDeficient { .. } => "RankDeficient",
            Error::SearchExhausted(_) => "SearchExhausted",
            Error::InvalidInput(_) => "InvalidInput",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
