//! Crate-wide error type.

use thiserror::Error;

/// Errors reported by exact arithmetic, map construction and the
/// decomposition pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// Two values built over different session bases were combined.
    #[error("basis mismatch: values belong to different sessions")]
    BasisMismatch,
    /// Interval refinement could not separate a value from zero within the
    /// precision budget. Usually means the declared generators are not
    /// actually independent over the rationals.
    #[error("precision budget exhausted after {bits} bits without separating a sign; the basis independence declaration may be violated")]
    PrecisionExhausted { bits: u32 },
    /// A declared square-root generator is rational, so it cannot be
    /// independent from 1.
    #[error("sqrt generator {0} is the square of a rational")]
    RationalSquareRoot(String),
    /// Malformed generator declaration (empty oracle, inverted interval, ...).
    #[error("invalid generator declaration: {0}")]
    InvalidGenerator(String),
    #[error("division by a non-positive denominator")]
    NonPositiveDenominator,

    #[error("pieces overlap near {0}")]
    OverlappingPieces(String),
    #[error("pieces leave a gap near {0}")]
    CoverageGap(String),
    #[error("image intervals do not tile the unit interval")]
    ImagesNotTiling,
    #[error("piece count {count} exceeds the session cap {cap}")]
    PieceCapExceeded { count: usize, cap: usize },
    #[error("map parameter out of range: {0}")]
    ParameterOutOfRange(String),
    #[error("interval rescaling factor is irrational")]
    IrrationalScale,
    #[error("maps have different combinatorics (m or permutation differ)")]
    DomainMismatch,
    #[error("operation requires a flip-free map")]
    FlipPresent,
    #[error("map is not periodic (or periodicity was not established)")]
    NotPeriodic,
    #[error("factor support is not contained in the right half of the working interval")]
    SupportNotInRightHalf,
    #[error("epsilon must lie strictly between 0 and 1")]
    EpsilonOutOfRange,
    #[error("support shrinking failed to meet its bounds after {0} retries")]
    RetryExhausted(u32),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
