use thiserror::Error;

/// Errors surfaced by the symbolic engine and its front ends.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("parity or form-degree mismatch: {0}")]
    ParityMismatch(String),
    #[error("division by zero: {0}")]
    DivisionByZero(String),
    #[error("fermionic representation dimension {0} exceeds bound {1}")]
    DimensionOverflow(usize, usize),
    #[error("index not found: {0}")]
    IndexNotFound(String),
    #[error("index kind mismatch: {0}")]
    KindMismatch(String),
    #[error("expression depends on {0} which has no declared x-dependence rule")]
    UnknownDependency(String),
    #[error("homogeneity violation: {0}")]
    HomogeneityViolation(String),
    #[error("spinors are proportional: {0}")]
    ProportionalSpinors(String),
    #[error("components carry mixed homogeneity degrees: {0}")]
    MixedHomogeneity(String),
    #[error("essential singularity: {0}")]
    EssentialSingularity(String),
    #[error("no pole of the expression at {0}")]
    PoleNotFound(String),
    #[error("two denominator factors share the pole at {0}")]
    OverlappingPoles(String),
    #[error("selected pole sits at the excluded chart point: {0}")]
    ChartPoleAtInfinity(String),
    #[error("field is not massless: {0}")]
    MasslessnessRequired(String),
    #[error("R-weight mismatch: {0}")]
    WeightMismatch(String),
    #[error("syntax error at line {line}, column {col}: {msg}")]
    SyntaxError { line: usize, col: usize, msg: String },
    #[error("unknown symbol family `{0}`")]
    UnknownSymbolFamily(String),
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
}
