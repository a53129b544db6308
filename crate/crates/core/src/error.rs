use crate::model::PairKind;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("x must be > 0 and finite (got {0})")]
    InvalidRatio(f64),
    #[error("R out of (0,1) (got {0})")]
    InvalidReflectivity(f64),
    #[error("delta_nu must be finite and >= 0 (got {0})")]
    InvalidBeatFrequency(f64),
    #[error("tau grid must be non-empty")]
    EmptyTauGrid,
    #[error("tau grid must be finite and strictly increasing (violated at index {0})")]
    TauGridNotIncreasing(usize),
    #[error("invalid path probabilities: {0}")]
    InvalidProbabilities(String),
    #[error("invalid extrema: g2_max = {max}, g2_min = {min}")]
    InvalidExtrema { max: f64, min: f64 },
    #[error("degenerate curve: {0}")]
    DegenerateCurve(String),
    #[error("fitted oscillation amplitude {amplitude} is negative beyond noise ({noise}); sign convention violated")]
    NegativeAmplitude { amplitude: f64, noise: f64 },
    #[error(
        "fitted oscillation amplitude {amplitude} exceeds constant term {constant} beyond noise"
    )]
    AmplitudeExceedsConstant { amplitude: f64, constant: f64 },
    #[error("phase vector has {got} entries, alternative set needs {expected}")]
    PhaseCountMismatch { expected: usize, got: usize },
    #[error("n_realizations must be >= 1")]
    NoRealizations,
    #[error("threshold analysis is only defined for sl and st, not {0}")]
    UnsupportedPair(PairKind),
    #[error("invalid search range: {0}")]
    InvalidRange(String),
}
