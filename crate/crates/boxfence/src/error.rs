//! Crate-wide error type. Every fallible operation returns `Result<T>`;
//! the CLI prints these as one-line `error: ...` messages with a nonzero exit.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("empty input: at least one observation is required")]
    EmptyInput,

    #[error("non-finite value at input index {index}")]
    NonFiniteValue { index: usize },

    #[error("sample too small: n = {n}, need n >= {required} for this operation")]
    SampleTooSmall { n: usize, required: usize },

    #[error("degenerate IQR: Q1 == Q3, quartile-based fences are undefined")]
    DegenerateIqr,

    #[error("degenerate variance: sample standard deviation is zero")]
    DegenerateVariance,

    #[error("domain error: {what}")]
    Domain { what: String },

    #[error("invalid distribution parameters: {what}")]
    InvalidParameters { what: String },

    #[error("root finding failed to converge: {what}")]
    ConvergenceFailure { what: String },

    #[error("non-positive data: the gamma family requires strictly positive observations")]
    NonPositiveData,

    #[error("non-positive mean: the chi-square moment fit requires a positive sample mean")]
    NonPositiveMean,

    #[error("sample variance {variance} is at most 1: the t moment equation nu/(nu-2) = S^2 has no solution with nu > 2")]
    VarianceAtMostOne { variance: f64 },

    #[error("n = {n} is outside the validity domain of this coefficient (requires n = 4m+1 with m in 2..=124, i.e. n in {{9, 13, ..., 497}})")]
    OutsideValidityDomain { n: usize },

    #[error("inverted fences: lower {lower} is not below upper {upper}")]
    InvertedFences { lower: f64, upper: f64 },

    #[error("inconsistent outer fences: the outer pair must contain the inner pair")]
    InconsistentOuter,

    #[error("invalid configuration: {what}")]
    InvalidConfig { what: String },

    #[error("empty plot spec: at least one panel is required")]
    EmptySpec,

    #[error("inconsistent panel {panel}: report labels do not match the sample size")]
    InconsistentPanel { panel: usize },

    #[error("parse error at line {line}: {what}")]
    Parse { line: usize, what: String },

    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(what: impl Into<String>) -> Self {
        Error::Domain { what: what.into() }
    }

    pub(crate) fn invalid_params(what: impl Into<String>) -> Self {
        Error::InvalidParameters { what: what.into() }
    }

    pub(crate) fn invalid_config(what: impl Into<String>) -> Self {
        Error::InvalidConfig { what: what.into() }
    }
}
