use thiserror::Error;

/// Errors raised anywhere in the crate.
///
/// Negative mathematical answers (a locus is non-empty, a lift does not
/// exist) are ordinary return values, never errors.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("coordinate vector has length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("division by zero")]
    DivideByZero,
    #[error("cyclotomic orders differ: {0} vs {1}")]
    OrderMismatch(u32, u32),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("square root of zero requested")]
    ZeroRadicand,
    #[error("values live in different quadratic extensions")]
    RadicandMismatch,
    #[error("matrix is singular")]
    SingularMatrix,
    #[error("Groebner computation exceeded {0} reductions")]
    Timeout(usize),
    #[error("binary quadratic is not a square (discriminant nonzero)")]
    NotDoubleRoot,
    #[error("binary form is zero")]
    ZeroForm,
    #[error("discriminant Q2^2 - Q1*Q3 vanishes identically")]
    DegenerateDiscriminant,
    #[error("singular points of the discriminant are not all defined over the working field")]
    IncompleteSingularLocus,
    #[error("constraint violated: {0}")]
    ConstraintViolated(String),
    #[error("matrix does not preserve the discriminant quartic")]
    NotInAutDelta,
    #[error("group closure exceeded cap of {0} elements")]
    CapExceeded(usize),
    #[error("discriminant quartic is not smooth")]
    DeltaNotSmooth,
    #[error("conic fiber over the point vanishes identically")]
    FiberDegenerate,
    #[error("computation needs more than one quadratic extension")]
    ExtensionTooDeep,
    #[error("supplied elements are not closed under composition")]
    NotAGroup,
    #[error("unknown catalog entry `{0}`")]
    UnknownName(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("validation error: {0}")]
    Validation(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse { .. }
            | Error::Validation(_)
            | Error::LengthMismatch { .. }
            | Error::UnknownName(_)
            | Error::ConstraintViolated(_)
            | Error::SingularMatrix
            | Error::OrderMismatch(..)
            | Error::DegenerateDiscriminant
            | Error::NotInAutDelta
            | Error::DeltaNotSmooth
            | Error::NotAGroup
            | Error::FiberDegenerate
            | Error::NotDoubleRoot
            | Error::ZeroForm
            | Error::ZeroRadicand
            | Error::DivideByZero => 2,
            Error::Unsupported(_)
            | Error::Timeout(_)
            | Error::IncompleteSingularLocus
            | Error::ExtensionTooDeep
            | Error::CapExceeded(_)
            | Error::RadicandMismatch => 3,
            Error::Invariant(_) => 4,
        }
    }
}
