use thiserror::Error;

/// Errors raised by the geometry routines.
///
/// Variants are grouped by the module that raises them; the CLI maps every
/// variant to exit status 1.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point is not a proper (interior) point of the model")]
    NonProperPoint,
    #[error("precondition violated: {0}")]
    PreconditionViolated(&'static str),

    #[error("parameters a={a}, b={b} fall outside every class of the {family} table")]
    UnclassifiableParameters {
        family: &'static str,
        a: f64,
        b: f64,
    },
    #[error("parameter map divides by a zero parameter")]
    DivisionByZeroParameter,
    #[error("conic matrix is singular at the given parameters")]
    SingularConic,
    #[error("point lies on the ideal line (third coordinate is zero)")]
    IdealPoint,
    #[error("invalid conic parameters: {0}")]
    InvalidParameters(&'static str),

    #[error("point is not external to the conic: no real tangents")]
    NotExternalPoint,
    #[error("closed-form tangent denominator vanishes at this point")]
    DegenerateDenominator,
    #[error("pencil through the point has no real tangent to the conic")]
    NoRealTangent,

    #[error("isoptic quotient denominator vanishes at this point")]
    SingularDenominator,
    #[error("point lies in no branch of the compound isoptic")]
    InvalidRegion,
    #[error("generalized angle of the tangent pair is undefined")]
    UndefinedAngle,
    #[error("alpha must lie in the open interval (0, pi), got {0}")]
    InvalidAlpha(f64),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
