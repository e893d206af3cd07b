use thiserror::Error;

/// Errors surfaced by geometry construction and the sensing/estimation
/// pipelines.
#[derive(Debug, Error)]
pub enum Error {
    /// A constructor or operation received an out-of-range parameter.
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    /// A beam-pattern cross-section has no local minimum in (0, 2].
    #[error("no local minimum in the pattern cross-section (degenerate aperture)")]
    NoLocalMinimum,

    /// A virtual signal did not cover the contiguous lag segment an
    /// operation requires.
    #[error("virtual signal lags are not the expected contiguous segment: {0}")]
    NonContiguousLags(String),

    /// A linear system was singular or numerically unusable, typically from
    /// coincident estimated angles.
    #[error("singular system: {0}")]
    SingularSystem(String),

    /// Request exceeded a documented size limit (e.g. exhaustive pairing).
    #[error("unsupported size: {0}")]
    UnsupportedSize(String),

    /// A pilot-phase operation was handed a block without pilot symbols.
    #[error("snapshot block carries no pilot symbols")]
    MissingPilots,
}
