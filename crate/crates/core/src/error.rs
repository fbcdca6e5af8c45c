use thiserror::Error;

/// Errors reported by configuration validation and the spectral operations.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("M = {m} and N = {n} are not co-prime (gcd = {gcd})")]
    NotCoprime { m: u32, n: u32, gcd: u32 },

    #[error("compression factor {p} is invalid for M = {m}: p must lie in [1, M] and divide M")]
    InvalidCompression { m: u32, p: u32 },

    #[error("degenerate configuration: need M >= 2 and N >= 2, got M = {m}, N = {n}")]
    DegenerateConfig { m: u32, n: u32 },

    #[error("the closed-form window is not defined for p = 1; transform the weight table instead")]
    UnsupportedCompression,

    #[error("grid of {grid_size} points cannot resolve lags up to {span}; need at least {required} points")]
    GridTooCoarse {
        grid_size: usize,
        span: i64,
        required: usize,
    },

    #[error("signal has {got} samples but {needed} are required for {snapshots} snapshots")]
    InsufficientSignal {
        got: usize,
        needed: usize,
        snapshots: usize,
    },

    #[error("signal model needs at least one component")]
    EmptySignalModel,

    #[error("signal model has {frequencies} frequencies but {amplitudes} amplitudes")]
    MismatchedSignalModel {
        frequencies: usize,
        amplitudes: usize,
    },

    #[error("frequency {value} rad/sample is outside (-pi, pi]")]
    FrequencyOutOfRange { value: f64 },

    #[error("amplitude {value} must be positive")]
    NonPositiveAmplitude { value: f64 },

    #[error("malformed CSV at line {line}: {message}")]
    MalformedCsv { line: usize, message: String },
}

pub type Result<T> = core::result::Result<T, Error>;
