use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

/// How a failure should be reported to a caller that needs a coarse verdict
/// (the CLI maps these onto exit codes).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ErrorClass {
    /// The input is well formed but the property asked about does not hold.
    Verdict,
    /// The input itself is malformed or references unknown objects.
    Input,
    /// An internal consistency check failed.
    Internal,
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}: {error}")]
    AtLine { line: usize, error: Box<Error> },
    #[error("cannot read {0}")]
    Io(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("unknown arrow `{0}`")]
    UnknownArrow(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("duplicate arrow `{0}`")]
    DuplicateArrow(String),
    #[error("paths are not composable: `{left}` ends at {end}, `{right}` starts at {start}")]
    NotComposable {
        left: String,
        right: String,
        end: String,
        start: String,
    },
    #[error("quiver is not connected")]
    NotConnected,
    #[error("relation `{0}` is not uniform: its terms do not share source and target")]
    NonUniformRelation(String),
    #[error("relation has no nonzero terms after combining coefficients")]
    EmptyRelation,
    #[error("relation `{relation}` has term `{term}` of length < 2 (not contained in J^2)")]
    NonAdmissibleGenerator { relation: String, term: String },
    #[error("algebra is not finite dimensional within length bound {max_len}: {reason}")]
    NotFiniteDimensional { max_len: usize, reason: String },
    #[error("`{0}` is not a basis path")]
    UnknownBasisPath(String),
    #[error("`{0}` is not a basis path")]
    NotBasisPath(String),
    #[error("invalid splitting datum: {}", .0.join("; "))]
    InvalidSplittingDatum(Vec<String>),
    #[error("radical embedding witness failed at path `{path}`: {reason}")]
    WitnessFailure { path: String, reason: String },
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
    #[error("presentation is not monomial")]
    NotMonomial,
    #[error("presentation is not special multiserial: {0}")]
    NotSpecialMultiserial(String),
    #[error("module violates relation `{0}`")]
    RelationViolated(String),
    #[error("isomorphism test inconclusive: {0}")]
    Inconclusive(String),
    #[error("semisimple quotient is not split over the rationals: {0}")]
    NonSplitQuotient(String),
    #[error("idempotent splitting exhausted its trial budget: {0}")]
    LiftingExhausted(String),
    #[error("socle quotient cannot be presented on a subquiver: {0}")]
    SocleQuotientNotPresentable(String),
    #[error("vertex name `{0}` produced by splitting is already in use")]
    VertexNameCollision(String),
    #[error("repdim bound check failed: {0}")]
    AssertionFailed(String),
    #[error("internal invariant violated: {0}")]
    InternalInvariantViolation(String),
}

impl Error {
    /// The underlying error with any line information stripped.
    pub fn root(&self) -> &Error {
        match self {
            Error::AtLine { error, .. } => error.root(),
            e => e,
        }
    }

    pub fn class(&self) -> ErrorClass {
        use Error::*;
        match self {
            AtLine { error, .. } => error.class(),
            Syntax { .. }
            | Io(_)
            | UnknownVertex(_)
            | UnknownArrow(_)
            | DuplicateVertex(_)
            | DuplicateArrow(_)
            | NotComposable { .. }
            | NotConnected
            | NonUniformRelation(_)
            | EmptyRelation
            | NonAdmissibleGenerator { .. }
            | UnknownBasisPath(_)
            | NotBasisPath(_)
            | VertexNameCollision(_) => ErrorClass::Input,
            NotFiniteDimensional { .. }
            | InvalidSplittingDatum(_)
            | PreconditionFailed(_)
            | NotMonomial
            | NotSpecialMultiserial(_)
            | NonSplitQuotient(_)
            | SocleQuotientNotPresentable(_)
            | AssertionFailed(_) => ErrorClass::Verdict,
            WitnessFailure { .. }
            | RelationViolated(_)
            | Inconclusive(_)
            | LiftingExhausted(_)
            | InternalInvariantViolation(_) => ErrorClass::Internal,
        }
    }
}
