use thiserror::Error;

/// Errors raised by the ring layer and the determinant/adjoint pipeline.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("element {0} is not a unit")]
    NotUnit(String),

    #[error("series constant term {0} is not a unit")]
    NonUnitConstantTerm(String),

    #[error("truncated series orders differ: {left} vs {right}")]
    OrderMismatch { left: usize, right: usize },

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("sequence is generated by a recurrence of degree {0} only")]
    ShortRecurrence(usize),

    #[error("Hankel matrix is singular")]
    SingularHankel,

    #[error("constant coefficient f0 of the minimum polynomial is not a unit")]
    NonUnitF0,

    #[error("projections are degenerate: minimum polynomial has degree {degree} < {n}")]
    DegenerateProjection { degree: usize, n: usize },

    #[error("no admissible projections after {attempts} attempts (last minimum polynomial degree {last_degree} < {n})")]
    RetriesExhausted {
        attempts: usize,
        last_degree: usize,
        n: usize,
    },

    #[error("input matrix is singular (determinant is zero)")]
    SingularInput,

    #[error("determinant trace is incomplete: {0}")]
    TraceIncomplete(String),

    #[error("setup invariant violated: {0}")]
    SetupInvariantViolation(String),

    #[error("degree contract violated: {0}")]
    DegreeContractViolation(String),

    #[error("tape instruction {0} divides by zero")]
    DivisionInTapeAtZero(usize),
}

pub type Result<T> = std::result::Result<T, Error>;
