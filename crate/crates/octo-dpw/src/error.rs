//! Crate-wide error type.
//!
//! Variant names mirror the failure modes of the geometric and analytic
//! pipeline: frame validation, orbit classification, loop-group
//! factorization, and surface extraction.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// A frame or plane fails the isotropy equations (unit norms and
    /// vanishing bilinear form) beyond tolerance.
    #[error("not isotropic: {0}")]
    NotIsotropic(String),

    /// A construction degenerated (zero vector where a direction was
    /// required, vanishing denominator, ambiguous normal form).
    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    /// The inverse-orbit construction received a frame from the singular
    /// orbit class, where the two-parameter family collapses.
    #[error("reconstruction requires a regular frame, got a type-P1 input: {0}")]
    TypeP1Input(String),

    /// Inputs that must be orthogonal are not.
    #[error("not orthogonal: {0}")]
    NotOrthogonal(String),

    /// A tangent frame fails the conformality conditions.
    #[error("non-conformal frame: {0}")]
    NonConformalFrame(String),

    /// A surface/connection does not satisfy the vertical-system reduction
    /// expected by the caller.
    #[error("not in the vertical-system class: {0}")]
    NotSigmaV(String),

    /// A loop violates the order-four twisting (coefficient at power k must
    /// lie in the k mod 4 eigenspace).
    #[error("twisted-grading violation: {0}")]
    GradingViolation(String),

    /// The lowest-order coefficient of the potential vanishes somewhere, so
    /// the associated map fails to be an immersion.
    #[error("immersion condition fails: {0}")]
    ImmersionConditionFail(String),

    /// A meromorphic potential has a pole inside the requested domain.
    #[error("pole in domain: {0}")]
    PoleInDomain(String),

    /// Adaptive integration could not meet the error budget within the
    /// subdivision limit.
    #[error("step size too coarse: {0}")]
    StepSizeTooCoarse(String),

    /// An iterative factorization failed to meet its residual target.
    #[error("factorization diverged: {0}")]
    FactorizationDiverged(String),

    /// Birkhoff splitting hit a loop outside the big cell.
    #[error("loop is off the big cell: {0}")]
    OffBigCell(String),

    /// A pointwise surface quantity is undefined (vanishing differential,
    /// zero denominator) at a grid node.
    #[error("degenerate point: {0}")]
    DegeneratePoint(String),

    /// A moving frame extracted from a surface fails isotropy.
    #[error("non-isotropic frame: {0}")]
    NonIsotropicFrame(String),

    /// Malformed configuration or input data.
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),

    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
