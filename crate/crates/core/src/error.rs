use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Every failure the library reports.
///
/// Display strings follow a `Variant(detail)` shape so that command-line
/// diagnostics can be matched by scripts.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("SyntaxError(line {line}: {message})")]
    Syntax { line: usize, message: String },
    #[error("DuplicateIdentifier({0})")]
    DuplicateIdentifier(String),
    #[error("DanglingEndpoint({0})")]
    DanglingEndpoint(String),
    #[error("ReservedIdentifier({0})")]
    ReservedIdentifier(String),
    #[error("UnknownVertex({0})")]
    UnknownVertex(String),
    #[error("UnknownGenerator({0})")]
    UnknownGenerator(String),
    #[error("UnknownPath({0})")]
    UnknownPath(String),
    #[error("InvalidField({0})")]
    InvalidField(String),
    #[error("InvalidScalar({0})")]
    InvalidScalar(String),
    #[error("AlgebraMismatch")]
    AlgebraMismatch,
    #[error("NotHomogeneous")]
    NotHomogeneous,
    #[error("ZeroHasNoDegree")]
    ZeroHasNoDegree,
    #[error("NotApplicable({0})")]
    NotApplicable(String),
    #[error("NoWitnessWithinBound({0})")]
    NoWitnessWithinBound(usize),
    #[error("GraphHasSource({0})")]
    GraphHasSource(String),
    #[error("DecompositionFailure(degree {0})")]
    DecompositionFailure(i64),
    #[error("InternalInvariantBreach({0})")]
    InternalInvariantBreach(String),
    #[error("NotASource({0})")]
    NotASource(String),
    #[error("IsolatedVertex({0})")]
    IsolatedVertex(String),
    #[error("NotIsolated({0})")]
    NotIsolated(String),
    #[error("InfiniteEmitter({0})")]
    InfiniteEmitter(String),
    #[error("DepthTooSmall(need {needed}, got {given})")]
    DepthTooSmall { needed: usize, given: usize },
    #[error("MultiEntryUnsupported")]
    MultiEntryUnsupported,
    #[error("ShapeMismatch({0})")]
    ShapeMismatch(String),
}
