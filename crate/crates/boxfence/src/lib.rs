//! Boxplot fences with sample-size-aware coefficients.
//!
//! The classic boxplot flags everything outside `[Q1 - 1.5 IQR, Q3 + 1.5 IQR]`.
//! That rule ignores the sample size, so the expected number of false flags
//! grows linearly with n. This crate implements fence coefficients that adapt
//! to n, the measurement-rejection rule they descend from, and the machinery
//! to compare all of them: exact coefficient formulas, outlier detection with
//! labeled reports, Monte Carlo error-rate studies, and SVG boxplot rendering.
//!
//! Entry points:
//! - [`build_sample`] to validate data and compute order statistics,
//! - [`compute_fences`] / [`FenceMethod`] for fence construction,
//! - [`classify`] for per-observation labels,
//! - [`run_simulation`] / [`estimate_outside_rate`] for error-rate studies,
//! - [`render_boxplots`] for plots.

pub mod cli;
pub mod datasets;
pub mod detect;
pub mod dist;
pub mod error;
pub mod fences;
pub mod ingest;
pub mod render;
pub mod sample;
pub mod sim;
pub mod special;

pub use detect::{classify, DetectionReport, Label};
pub use dist::{
    cdf_of, fit_chi_square_mom, fit_gamma_mom, fit_t_mom, normal_quantile, quantile_of,
    upper_quantile_of, DistributionModel,
};
pub use error::{Error, Result};
pub use fences::{
    af_coefficient, chauvenet_coefficient, chauvenet_interval, chauvenet_threshold,
    compute_fences, ec_coefficient, er_coefficient, fences_from_quartiles,
    non_normal_coefficients, tl_coefficient, FenceMethod, FencePair,
};
pub use render::{render_boxplots, PlotPanel, PlotSpec};
pub use sample::{build_sample, Sample};
pub use sim::{
    draw_replicate, estimate_outside_rate, run_simulation, Family, MethodSummary, RateEstimate,
    SimConfig, SimResult,
};
