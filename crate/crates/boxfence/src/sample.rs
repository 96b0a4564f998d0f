//! Validated samples with cached order statistics.
//!
//! Everything downstream (fences, detection, simulation) consumes a
//! [`Sample`]: data sorted ascending with the mean, standard deviation, and
//! quartiles computed once. The original input order is retained so reports
//! can label observations by their input index.

use crate::error::{Error, Result};

/// An immutable, validated sample.
///
/// All statistics are computed from the sorted values, so two samples built
/// from permutations of the same multiset are bitwise identical.
#[derive(Debug, Clone)]
pub struct Sample {
    original: Vec<f64>,
    sorted: Vec<f64>,
    mean: f64,
    sd: f64,
    q1: f64,
    q3: f64,
}

/// Validates raw data and computes the cached statistics.
///
/// Accepts any non-empty, all-finite sequence, including a single
/// observation (fence construction imposes its own larger minimums).
pub fn build_sample(raw: &[f64]) -> Result<Sample> {
    if raw.is_empty() {
        return Err(Error::EmptyInput);
    }
    for (index, &x) in raw.iter().enumerate() {
        if !x.is_finite() {
            return Err(Error::NonFiniteValue { index });
        }
    }
    let original = raw.to_vec();
    let mut sorted = raw.to_vec();
    sorted.sort_by(f64::total_cmp);

    let n = sorted.len();
    let mean = sorted.iter().sum::<f64>() / n as f64;
    // divisor n-1; a lone observation has no dispersion and the methods
    // that need S reject n=1 anyway
    let sd = if n > 1 {
        let ss = sorted.iter().map(|x| (x - mean) * (x - mean)).sum::<f64>();
        (ss / (n - 1) as f64).sqrt()
    } else {
        0.0
    };
    let q1 = quantile_sorted(&sorted, 0.25);
    let q3 = quantile_sorted(&sorted, 0.75);
    Ok(Sample {
        original,
        sorted,
        mean,
        sd,
        q1,
        q3,
    })
}

// Linear interpolation at rank h = (n-1)p + 1 (the convention whose Q1 on a
// sorted 9-point sample is exactly the 3rd observation).
fn quantile_sorted(sorted: &[f64], p: f64) -> f64 {
    let n = sorted.len();
    let h = (n - 1) as f64 * p + 1.0;
    let lo = (h.floor() as usize).clamp(1, n);
    let frac = h - h.floor();
    if frac == 0.0 || lo == n {
        return sorted[lo - 1];
    }
    sorted[lo - 1] + frac * (sorted[lo] - sorted[lo - 1])
}

impl Sample {
    /// Number of observations.
    pub fn n(&self) -> usize {
        self.sorted.len()
    }

    /// Values in the original input order.
    pub fn original(&self) -> &[f64] {
        &self.original
    }

    /// Values sorted ascending.
    pub fn sorted(&self) -> &[f64] {
        &self.sorted
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// Sample standard deviation (divisor n-1); 0 when n = 1.
    pub fn sd(&self) -> f64 {
        self.sd
    }

    pub fn q1(&self) -> f64 {
        self.q1
    }

    pub fn q3(&self) -> f64 {
        self.q3
    }

    pub fn iqr(&self) -> f64 {
        self.q3 - self.q1
    }

    pub fn min(&self) -> f64 {
        self.sorted[0]
    }

    pub fn max(&self) -> f64 {
        self.sorted[self.sorted.len() - 1]
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    /// Quantile at probability `p` by linear interpolation at rank
    /// h = (n-1)p + 1; p = 0 gives the minimum, p = 1 the maximum.
    ///
    /// Panics if `p` is outside [0, 1].
    pub fn quantile(&self, p: f64) -> f64 {
        assert!((0.0..=1.0).contains(&p), "quantile requires 0 <= p <= 1");
        quantile_sorted(&self.sorted, p)
    }
}
