//! Per-observation classification against fences, whisker computation, and
//! the detection report.
//!
//! Boundary convention: a value exactly on a fence is an inlier (the interval
//! is closed). `far_out` exists only when an outer fence pair is supplied.

use crate::error::{Error, Result};
use crate::fences::FencePair;
use crate::sample::Sample;
use serde::Serialize;
use serde_json::json;

/// Classification of one observation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Label {
    Inlier,
    Outside,
    FarOut,
}

impl std::fmt::Display for Label {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Label::Inlier => "inlier",
            Label::Outside => "outside",
            Label::FarOut => "far_out",
        })
    }
}

/// Everything `classify` determined about a sample, in input order.
#[derive(Debug, Clone)]
pub struct DetectionReport {
    /// One label per observation, indexed like the original input.
    pub labels: Vec<Label>,
    /// The inner fences the labels were computed against.
    pub fence: FencePair,
    /// Outer fences, when far-out classification was requested.
    pub outer: Option<FencePair>,
    /// Smallest observation at or above the lower fence (Q1 if none).
    pub whisker_low: f64,
    /// Largest observation at or below the upper fence (Q3 if none).
    pub whisker_high: f64,
    /// Count of labels other than `Inlier`.
    pub n_flagged: usize,
    /// True when either whisker had no qualifying observation and collapsed
    /// to its quartile.
    pub degenerate_whiskers: bool,
    /// Ground-truth contamination markers, when the caller knows them.
    pub contamination_flags: Option<Vec<bool>>,
    /// Human-readable warnings (degenerate whiskers, model fallbacks).
    pub notes: Vec<String>,
}

/// Labels every observation of `sample` against `inner` (and optionally
/// `outer`) fences and computes whisker endpoints.
pub fn classify(
    sample: &Sample,
    inner: &FencePair,
    outer: Option<&FencePair>,
) -> Result<DetectionReport> {
    if !(inner.lower < inner.upper) {
        return Err(Error::InvertedFences {
            lower: inner.lower,
            upper: inner.upper,
        });
    }
    if let Some(o) = outer {
        if !(o.lower <= inner.lower && o.upper >= inner.upper) {
            return Err(Error::InconsistentOuter);
        }
    }

    let labels: Vec<Label> = sample
        .original()
        .iter()
        .map(|&x| {
            if (inner.lower..=inner.upper).contains(&x) {
                Label::Inlier
            } else if let Some(o) = outer {
                if x < o.lower || x > o.upper {
                    Label::FarOut
                } else {
                    Label::Outside
                }
            } else {
                Label::Outside
            }
        })
        .collect();
    let n_flagged = labels.iter().filter(|&&l| l != Label::Inlier).count();

    let mut notes = Vec::new();
    let mut degenerate = false;
    // whiskers per the classic rule, off the sorted values
    let whisker_low = match sample.sorted().iter().find(|&&x| x >= inner.lower) {
        Some(&x) => x,
        None => {
            degenerate = true;
            sample.q1()
        }
    };
    let whisker_high = match sample.sorted().iter().rev().find(|&&x| x <= inner.upper) {
        Some(&x) => x,
        None => {
            degenerate = true;
            sample.q3()
        }
    };
    if degenerate {
        notes.push(
            "no observation inside the fences on at least one side; whisker collapsed to its quartile"
                .to_string(),
        );
    }

    Ok(DetectionReport {
        labels,
        fence: *inner,
        outer: outer.copied(),
        whisker_low,
        whisker_high,
        n_flagged,
        degenerate_whiskers: degenerate,
        contamination_flags: None,
        notes,
    })
}

impl DetectionReport {
    /// Attaches ground-truth contamination markers (one per observation).
    pub fn attach_contamination(mut self, flags: Vec<bool>) -> Result<Self> {
        if flags.len() != self.labels.len() {
            return Err(Error::invalid_params(format!(
                "{} contamination flags for {} observations",
                flags.len(),
                self.labels.len()
            )));
        }
        self.contamination_flags = Some(flags);
        Ok(self)
    }

    /// Flag counts split by ground truth: (false positives, true positives).
    ///
    /// Without contamination flags every flag counts as a false positive.
    pub fn split_flags(&self) -> (usize, usize) {
        match &self.contamination_flags {
            None => (self.n_flagged, 0),
            Some(flags) => {
                let mut fp = 0;
                let mut tp = 0;
                for (label, &truth) in self.labels.iter().zip(flags) {
                    if *label != Label::Inlier {
                        if truth {
                            tp += 1;
                        } else {
                            fp += 1;
                        }
                    }
                }
                (fp, tp)
            }
        }
    }

    /// Line-oriented JSON: one object per observation (index, value, label),
    /// then one summary object.
    pub fn to_jsonl(&self, sample: &Sample) -> String {
        let mut out = String::new();
        for (index, (&value, label)) in sample.original().iter().zip(&self.labels).enumerate() {
            let mut line = json!({
                "index": index,
                "value": value,
                "label": label,
            });
            if let Some(flags) = &self.contamination_flags {
                line["contaminated"] = json!(flags[index]);
            }
            out.push_str(&line.to_string());
            out.push('\n');
        }
        let summary = json!({
            "summary": {
                "n": self.labels.len(),
                "n_flagged": self.n_flagged,
                "fences": { "lower": self.fence.lower, "upper": self.fence.upper },
                "outer_fences": self.outer.map(|o| json!({ "lower": o.lower, "upper": o.upper })),
                "whiskers": { "low": self.whisker_low, "high": self.whisker_high },
                "degenerate_whiskers": self.degenerate_whiskers,
                "notes": self.notes,
            }
        });
        out.push_str(&summary.to_string());
        out.push('\n');
        out
    }
}
