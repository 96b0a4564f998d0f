//! Monte Carlo studies of flagging rates: draw replicates from a chosen
//! family, optionally append known contamination, run every requested fence
//! method, and aggregate flag counts with standard errors.
//!
//! Determinism contract: each replicate's generator stream is a pure function
//! of (seed, replicate index), and aggregation folds the per-replicate
//! outcomes in index order after the parallel section. Identical configs give
//! bit-identical results under any thread count or scheduling.

use crate::detect::classify;
use crate::dist::{fit_chi_square_mom, fit_gamma_mom, fit_t_mom, DistributionModel};
use crate::error::{Error, Result};
use crate::fences::{compute_fences, FenceMethod};
use crate::sample::build_sample;
use crate::special;
use rand_chacha::ChaCha8Rng;
use rand_core::{Rng, SeedableRng};
use rayon::prelude::*;
use serde::Serialize;
use std::fmt;

/// Data-generating family for simulations.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "family", rename_all = "snake_case")]
pub enum Family {
    Normal { mean: f64, sd: f64 },
    ChiSquare { dof: f64 },
    StudentT { dof: f64 },
    Gamma { shape: f64, scale: f64 },
    Beta { alpha: f64, beta: f64 },
    Exponential { mean: f64 },
    LogNormal { mu: f64, sigma: f64 },
}

impl Family {
    fn validate(&self) -> Result<()> {
        let ok = match *self {
            Family::Normal { mean, sd } => mean.is_finite() && sd > 0.0,
            Family::ChiSquare { dof } | Family::StudentT { dof } => dof > 0.0,
            Family::Gamma { shape, scale } => shape > 0.0 && scale > 0.0,
            Family::Beta { alpha, beta } => alpha > 0.0 && beta > 0.0,
            Family::Exponential { mean } => mean > 0.0,
            Family::LogNormal { mu, sigma } => mu.is_finite() && sigma > 0.0,
        };
        if ok {
            Ok(())
        } else {
            Err(Error::invalid_config(format!("bad family parameters: {self:?}")))
        }
    }

    fn draw(&self, rng: &mut ChaCha8Rng) -> f64 {
        match *self {
            Family::Normal { mean, sd } => mean + sd * standard_normal(rng),
            Family::ChiSquare { dof } => gamma_draw(rng, 0.5 * dof, 2.0),
            Family::StudentT { dof } => {
                let z = standard_normal(rng);
                let chi2 = gamma_draw(rng, 0.5 * dof, 2.0);
                z / (chi2 / dof).sqrt()
            }
            Family::Gamma { shape, scale } => gamma_draw(rng, shape, scale),
            Family::Beta { alpha, beta } => {
                let g1 = gamma_draw(rng, alpha, 1.0);
                let g2 = gamma_draw(rng, beta, 1.0);
                g1 / (g1 + g2)
            }
            Family::Exponential { mean } => -mean * uniform(rng).ln(),
            Family::LogNormal { mu, sigma } => (mu + sigma * standard_normal(rng)).exp(),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Normal { mean, sd } => write!(f, "normal({mean}, {sd})"),
            Family::ChiSquare { dof } => write!(f, "chi_square({dof})"),
            Family::StudentT { dof } => write!(f, "student_t({dof})"),
            Family::Gamma { shape, scale } => write!(f, "gamma({shape}, {scale})"),
            Family::Beta { alpha, beta } => write!(f, "beta({alpha}, {beta})"),
            Family::Exponential { mean } => write!(f, "exponential({mean})"),
            Family::LogNormal { mu, sigma } => write!(f, "log_normal({mu}, {sigma})"),
        }
    }
}

// uniform on (0,1), never returning either endpoint
fn uniform(rng: &mut ChaCha8Rng) -> f64 {
    ((rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / 9_007_199_254_740_992.0)
}

fn standard_normal(rng: &mut ChaCha8Rng) -> f64 {
    special::inv_norm_cdf(uniform(rng))
}

// Marsaglia-Tsang squeeze; the alpha < 1 case boosts through alpha + 1.
fn gamma_draw(rng: &mut ChaCha8Rng, shape: f64, scale: f64) -> f64 {
    if shape < 1.0 {
        let boost = uniform(rng).powf(1.0 / shape);
        return gamma_draw(rng, shape + 1.0, scale) * boost;
    }
    let d = shape - 1.0 / 3.0;
    let c = 1.0 / (9.0 * d).sqrt();
    loop {
        let x = standard_normal(rng);
        let t = 1.0 + c * x;
        if t <= 0.0 {
            continue;
        }
        let v = t * t * t;
        let u = uniform(rng);
        if u.ln() < 0.5 * x * x + d * (1.0 - v + v.ln()) {
            return d * v * scale;
        }
    }
}

/// One simulation request.
#[derive(Debug, Clone, Serialize)]
pub struct SimConfig {
    pub family: Family,
    /// Total sample size per replicate, contamination included.
    pub n: usize,
    /// (value, count) pairs appended after the genuine draws.
    pub contamination: Vec<(f64, usize)>,
    pub replicates: usize,
    pub seed: u64,
    /// Methods evaluated on every replicate. A `ChauvenetTypeNonNormal`
    /// entry is re-fitted per replicate: its model's family picks the
    /// fitter and the carried parameter values are ignored.
    pub methods: Vec<FenceMethod>,
}

impl SimConfig {
    fn contamination_total(&self) -> usize {
        self.contamination.iter().map(|&(_, c)| c).sum()
    }

    fn validate(&self) -> Result<()> {
        self.family.validate()?;
        if self.replicates < 1 {
            return Err(Error::invalid_config("replicates must be >= 1".to_string()));
        }
        if self.n < 4 {
            return Err(Error::invalid_config(format!(
                "n = {} is too small for quartile fences (need >= 4)",
                self.n
            )));
        }
        if self.methods.is_empty() {
            return Err(Error::invalid_config("no methods requested".to_string()));
        }
        for &(value, _) in &self.contamination {
            if !value.is_finite() {
                return Err(Error::invalid_config(format!(
                    "contamination value {value} is not finite"
                )));
            }
        }
        let total = self.contamination_total();
        // stay under the quartile breakdown point
        if 4 * total >= self.n {
            return Err(Error::invalid_config(format!(
                "{total} contaminated observations is not below n/4 = {}",
                self.n as f64 / 4.0
            )));
        }
        Ok(())
    }
}

/// Per-method aggregate over all replicates.
#[derive(Debug, Clone, Serialize)]
pub struct MethodSummary {
    pub method: FenceMethod,
    pub mean_flagged: f64,
    pub se_flagged: f64,
    pub mean_false_positives: f64,
    pub se_false_positives: f64,
    pub mean_true_positives: f64,
    pub se_true_positives: f64,
    /// Mean flagged-genuine count divided by n: the per-observation rate.
    pub outside_rate: f64,
    pub outside_rate_se: f64,
    /// Replicates where an infeasible t fit fell back to a normal model.
    pub fallbacks: usize,
}

/// Aggregated simulation outcome.
#[derive(Debug, Clone, Serialize)]
pub struct SimResult {
    pub family: Family,
    pub n: usize,
    pub replicates: usize,
    pub seed: u64,
    pub methods: Vec<MethodSummary>,
}

impl SimResult {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("simulation results always serialize")
    }

    /// Aligned-column text table, one row per method.
    pub fn to_table(&self) -> String {
        let mut rows: Vec<[String; 6]> = vec![[
            "method".to_string(),
            "flagged".to_string(),
            "false_pos".to_string(),
            "true_pos".to_string(),
            "rate".to_string(),
            "rate_se".to_string(),
        ]];
        for m in &self.methods {
            rows.push([
                method_name(&m.method),
                format!("{:.4}", m.mean_flagged),
                format!("{:.4}", m.mean_false_positives),
                format!("{:.4}", m.mean_true_positives),
                format!("{:.6}", m.outside_rate),
                format!("{:.6}", m.outside_rate_se),
            ]);
        }
        let mut widths = [0usize; 6];
        for row in &rows {
            for (w, cell) in widths.iter_mut().zip(row) {
                *w = (*w).max(cell.len());
            }
        }
        let mut out = String::new();
        for row in &rows {
            for (i, (w, cell)) in widths.iter().zip(row).enumerate() {
                if i > 0 {
                    out.push_str("  ");
                }
                out.push_str(cell);
                out.push_str(&" ".repeat(w - cell.len()));
            }
            while out.ends_with(' ') {
                out.pop();
            }
            out.push('\n');
        }
        out
    }
}

/// Stable human-readable method name for tables and CLI output.
pub fn method_name(method: &FenceMethod) -> String {
    match method {
        FenceMethod::Tukey { k } => format!("tukey(k={k})"),
        FenceMethod::ChauvenetType => "chauvenet_type".to_string(),
        FenceMethod::ExactRate => "exact_rate".to_string(),
        FenceMethod::ToleranceLimit { gamma } => format!("tolerance_limit(gamma={gamma})"),
        FenceMethod::Asymptotic { alpha } => format!("asymptotic(alpha={alpha})"),
        FenceMethod::Empirical => "empirical".to_string(),
        FenceMethod::ChauvenetInterval => "chauvenet_interval".to_string(),
        FenceMethod::ChauvenetTypeNonNormal { model } => {
            let family = match model {
                DistributionModel::Normal { .. } => "normal",
                DistributionModel::Gamma { .. } => "gamma",
                DistributionModel::ChiSquare { .. } => "chi_square",
                DistributionModel::StudentT { .. } => "student_t",
            };
            format!("non_normal({family})")
        }
    }
}

// 32-byte ChaCha key expanded from (seed, replicate) by SplitMix64.
fn replicate_key(seed: u64, replicate: u64) -> [u8; 32] {
    let mut state = seed ^ replicate.wrapping_mul(0x9E3779B97F4A7C15);
    let mut key = [0u8; 32];
    for chunk in key.chunks_exact_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    key
}

pub(crate) fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E3779B97F4A7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58476D1CE4E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D049BB133111EB);
    z ^ (z >> 31)
}

#[derive(Clone, Copy, Default)]
struct Counts {
    flagged: usize,
    fp: usize,
    tp: usize,
    fallback: bool,
}

fn fit_for_replicate(
    template: &DistributionModel,
    sample: &crate::sample::Sample,
) -> Result<(DistributionModel, bool)> {
    match template {
        DistributionModel::Gamma { .. } => Ok((fit_gamma_mom(sample)?, false)),
        DistributionModel::ChiSquare { .. } => Ok((fit_chi_square_mom(sample)?, false)),
        DistributionModel::StudentT { .. } => match fit_t_mom(sample) {
            Ok(m) => Ok((m, false)),
            Err(Error::VarianceAtMostOne { .. }) => Ok((
                DistributionModel::Normal {
                    mean: sample.mean(),
                    sd: sample.sd(),
                },
                true,
            )),
            Err(e) => Err(e),
        },
        DistributionModel::Normal { .. } => Ok((
            DistributionModel::Normal {
                mean: sample.mean(),
                sd: sample.sd(),
            },
            false,
        )),
    }
}

/// The genuine-data vector that replicate `replicate` of a simulation with
/// this family, size, and seed draws, exposed so studies can inspect the
/// exact inputs behind a summary (or reuse the stream for their own
/// statistics).
pub fn draw_replicate(family: &Family, n: usize, seed: u64, replicate: u64) -> Result<Vec<f64>> {
    family.validate()?;
    let mut rng = ChaCha8Rng::from_seed(replicate_key(seed, replicate));
    Ok((0..n).map(|_| family.draw(&mut rng)).collect())
}

fn simulate_replicate(config: &SimConfig, replicate: u64, genuine: usize) -> Result<Vec<Counts>> {
    let mut data = draw_replicate(&config.family, genuine, config.seed, replicate)?;
    data.reserve(config.n - genuine);
    let mut truth = vec![false; genuine];
    for &(value, count) in &config.contamination {
        for _ in 0..count {
            data.push(value);
            truth.push(true);
        }
    }
    let sample = build_sample(&data)?;

    let mut out = Vec::with_capacity(config.methods.len());
    for method in &config.methods {
        let (fences, fallback) = match method {
            FenceMethod::ChauvenetTypeNonNormal { model } => {
                let (fitted, fell_back) = fit_for_replicate(model, &sample)?;
                (
                    compute_fences(
                        &sample,
                        &FenceMethod::ChauvenetTypeNonNormal { model: fitted },
                    )?,
                    fell_back,
                )
            }
            other => (compute_fences(&sample, other)?, false),
        };
        let report = classify(&sample, &fences, None)?.attach_contamination(truth.clone())?;
        let (fp, tp) = report.split_flags();
        debug_assert_eq!(fp + tp, report.n_flagged);
        out.push(Counts {
            flagged: report.n_flagged,
            fp,
            tp,
            fallback,
        });
    }
    Ok(out)
}

fn mean_and_se(values: impl Iterator<Item = f64> + Clone, replicates: usize) -> (f64, f64) {
    let r = replicates as f64;
    let mean = values.clone().sum::<f64>() / r;
    if replicates < 2 {
        return (mean, 0.0);
    }
    let ss: f64 = values.map(|x| (x - mean) * (x - mean)).sum();
    (mean, (ss / (r - 1.0)).sqrt() / r.sqrt())
}

/// Runs the full Monte Carlo study described by `config`.
///
/// Replicates execute in parallel; aggregation is in replicate order, so the
/// result is bit-identical for a given config regardless of scheduling.
pub fn run_simulation(config: &SimConfig) -> Result<SimResult> {
    config.validate()?;
    let genuine = config.n - config.contamination_total();
    let per_replicate: Result<Vec<Vec<Counts>>> = (0..config.replicates as u64)
        .into_par_iter()
        .map(|r| simulate_replicate(config, r, genuine))
        .collect();
    let per_replicate = per_replicate?;

    let mut methods = Vec::with_capacity(config.methods.len());
    for (mi, method) in config.methods.iter().enumerate() {
        let col = |f: fn(&Counts) -> f64| per_replicate.iter().map(move |row| f(&row[mi]));
        let (mean_flagged, se_flagged) =
            mean_and_se(col(|c| c.flagged as f64), config.replicates);
        let (mean_fp, se_fp) = mean_and_se(col(|c| c.fp as f64), config.replicates);
        let (mean_tp, se_tp) = mean_and_se(col(|c| c.tp as f64), config.replicates);
        let fallbacks = per_replicate.iter().filter(|row| row[mi].fallback).count();
        methods.push(MethodSummary {
            method: *method,
            mean_flagged,
            se_flagged,
            mean_false_positives: mean_fp,
            se_false_positives: se_fp,
            mean_true_positives: mean_tp,
            se_true_positives: se_tp,
            outside_rate: mean_fp / config.n as f64,
            outside_rate_se: se_fp / config.n as f64,
            fallbacks,
        });
    }
    Ok(SimResult {
        family: config.family,
        n: config.n,
        replicates: config.replicates,
        seed: config.seed,
        methods,
    })
}

/// Per-observation flagging rate on clean data.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RateEstimate {
    pub rate: f64,
    pub se: f64,
}

/// Convenience wrapper: clean-data simulation of one method, reduced to the
/// per-observation rate (mean flagged genuine count over n) and its Monte
/// Carlo standard error.
pub fn estimate_outside_rate(
    family: Family,
    n: usize,
    method: FenceMethod,
    replicates: usize,
    seed: u64,
) -> Result<RateEstimate> {
    let result = run_simulation(&SimConfig {
        family,
        n,
        contamination: Vec::new(),
        replicates,
        seed,
        methods: vec![method],
    })?;
    let m = &result.methods[0];
    Ok(RateEstimate {
        rate: m.outside_rate,
        se: m.outside_rate_se,
    })
}
