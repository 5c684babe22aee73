use thiserror::Error;

/// Errors raised by the library.
///
/// Validation never errors; it returns a report. Everything else fails loudly
/// with one of these variants.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("image of the circle passes through infinity")]
    ImageIsLine,
    #[error("closed discs overlap or are nested (inversive distance {inversive})")]
    DiscsOverlapOrNested { inversive: f64 },
    #[error("the map is the identity")]
    IsIdentity,
    #[error("degenerate Möbius matrix (determinant {det})")]
    Degenerate { det: f64 },
    #[error("radius must be positive and finite, got {0}")]
    BadRadius(f64),
    #[error("configuration is not admissible")]
    NotAdmissible,
    #[error("enumeration needs {needed} items, budget is {cap}")]
    BudgetExceeded { needed: u64, cap: u64 },
    #[error("circles cannot be placed with the requested margin: {0}")]
    InfeasibleMargin(&'static str),
    #[error("orthogeodesic length {length} at index {index} is not positive")]
    BadLengths { index: usize, length: f64 },
    #[error("invalid parameter: {0}")]
    BadParameter(&'static str),
    #[error("argument {value} outside the domain {domain}")]
    OutOfDomain { value: f64, domain: &'static str },
    #[error("hypothesis violated: {0}")]
    HypothesisViolated(&'static str),
    #[error("interpolated map is not a homeomorphism (angular derivative {min_derivative})")]
    NotAHomeomorphism { min_derivative: f64 },
}

impl Error {
    /// Stable machine-readable name of the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ImageIsLine => "ImageIsLine",
            Error::DiscsOverlapOrNested { .. } => "DiscsOverlapOrNested",
            Error::IsIdentity => "IsIdentity",
            Error::Degenerate { .. } => "Degenerate",
            Error::BadRadius(_) => "BadRadius",
            Error::NotAdmissible => "NotAdmissible",
            Error::BudgetExceeded { .. } => "BudgetExceeded",
            Error::InfeasibleMargin(_) => "InfeasibleMargin",
            Error::BadLengths { .. } => "BadLengths",
            Error::BadParameter(_) => "BadParameter",
            Error::OutOfDomain { .. } => "OutOfDomain",
            Error::HypothesisViolated(_) => "HypothesisViolated",
            Error::NotAHomeomorphism { .. } => "NotAHomeomorphism",
        }
    }
}

pub type Result<T, E = Error> = core::result::Result<T, E>;
