use std::path::PathBuf;

use thiserror::Error;

/// Errors raised by state construction, channel building, integration and I/O.
///
/// Numeric variants carry the measured defect so callers can report how far
/// off an input was.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (defect {defect:.3e})")]
    NotHermitian { defect: f64 },

    #[error("trace deviates from 1 by {defect:.3e}")]
    TraceDefect { defect: f64 },

    #[error("state is not positive: {detail} (value {value:.3e})")]
    NotPositive { value: f64, detail: String },

    #[error("{what} = {value} is outside {range}")]
    OutOfRange {
        what: &'static str,
        value: f64,
        range: &'static str,
    },

    #[error("negative radicand in {term}: {value:.3e}")]
    NumericalDomain { term: &'static str, value: f64 },

    #[error("Choi matrix is not positive (min eigenvalue {min_eigenvalue:.3e})")]
    NotCP { min_eigenvalue: f64 },

    #[error("channel is not trace preserving (trace defect {defect:.3e})")]
    ChannelNotTP { defect: f64 },

    #[error("Kraus set has completeness defect {defect:.3e}; only apply_local_channels_raw accepts it")]
    DefectiveKrausSet { defect: f64 },

    #[error("integrator did not reach tolerance {tol:.1e} (best {achieved:.3e} with {steps} steps)")]
    IntegratorFailure { tol: f64, achieved: f64, steps: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("Kraus set has no closed-form amplitudes (provenance {0})")]
    MissingAmplitudes(&'static str),

    #[error("empty time series")]
    EmptySeries,

    #[error("invalid reservoir parameters: {0}")]
    InvalidParams(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
}

impl Error {
    /// Short stable identifier used in the CLI's one-line error output.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "not-hermitian",
            Error::TraceDefect { .. } => "trace-defect",
            Error::NotPositive { .. } => "not-positive",
            Error::OutOfRange { .. } => "out-of-range",
            Error::NumericalDomain { .. } => "numerical-domain",
            Error::NotCP { .. } => "not-cp",
            Error::ChannelNotTP { .. } => "channel-not-tp",
            Error::DefectiveKrausSet { .. } => "defective-kraus-set",
            Error::IntegratorFailure { .. } => "integrator-failure",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::MissingAmplitudes(_) => "missing-amplitudes",
            Error::EmptySeries => "empty-series",
            Error::InvalidParams(_) => "invalid-params",
            Error::InvalidConfig(_) => "invalid-config",
            Error::Io { .. } => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
