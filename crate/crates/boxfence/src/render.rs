//! SVG boxplot rendering. One document per call, one panel per
//! (title, sample, report) triple, drawn side by side on a shared value axis.
//!
//! The output is deliberately plain: every figure element is a separate tag
//! with a class naming its role, each panel group records its value-to-y
//! affine transform in `data-` attributes, and all coordinates are printed
//! with two decimals. Identical input gives byte-identical output; the
//! horizontal jitter applied to glyphs that share a value is driven by a
//! fixed constant seed.

use crate::detect::{DetectionReport, Label};
use crate::error::{Error, Result};
use crate::sample::Sample;
use crate::sim::splitmix64;
use std::fmt::Write as _;

const MARGIN_LEFT: f64 = 64.0;
const MARGIN_RIGHT: f64 = 16.0;
const MARGIN_TOP: f64 = 24.0;
const MARGIN_BOTTOM: f64 = 44.0;
const GLYPH_RADIUS: f64 = 3.5;
const JITTER_SEED: u64 = 0xC0FF_EE11_D00D_2A17;

/// One boxplot column: its axis label, the data, and the detection outcome
/// whose box, whiskers, and flags the drawing must reproduce.
#[derive(Debug, Clone)]
pub struct PlotPanel {
    pub title: String,
    pub sample: Sample,
    pub report: DetectionReport,
}

impl PlotPanel {
    pub fn new(title: impl Into<String>, sample: Sample, report: DetectionReport) -> Self {
        PlotPanel {
            title: title.into(),
            sample,
            report,
        }
    }
}

/// A figure request: panels plus geometry in abstract (SVG user) units.
#[derive(Debug, Clone)]
pub struct PlotSpec {
    pub panels: Vec<PlotPanel>,
    /// Horizontal room per panel.
    pub panel_width: f64,
    /// Total document height.
    pub height: f64,
    /// Value-axis override; default is data min/max padded by 5% per side.
    pub range: Option<(f64, f64)>,
}

impl PlotSpec {
    pub fn new(panels: Vec<PlotPanel>) -> Self {
        PlotSpec {
            panels,
            panel_width: 170.0,
            height: 420.0,
            range: None,
        }
    }

    pub fn with_range(mut self, lo: f64, hi: f64) -> Self {
        self.range = Some((lo, hi));
        self
    }
}

fn xml_escape(s: &str) -> String {
    let mut out = String::with_capacity(s.len());
    for c in s.chars() {
        match c {
            '&' => out.push_str("&amp;"),
            '<' => out.push_str("&lt;"),
            '>' => out.push_str("&gt;"),
            '"' => out.push_str("&quot;"),
            '\'' => out.push_str("&apos;"),
            _ => out.push(c),
        }
    }
    out
}

fn default_range(panels: &[PlotPanel]) -> (f64, f64) {
    let mut lo = f64::INFINITY;
    let mut hi = f64::NEG_INFINITY;
    for p in panels {
        lo = lo.min(p.sample.min());
        hi = hi.max(p.sample.max());
    }
    let span = hi - lo;
    // all-equal data still needs a drawable axis
    let pad = if span > 0.0 {
        0.05 * span
    } else {
        (0.05 * hi.abs()).max(0.5)
    };
    (lo - pad, hi + pad)
}

struct Transform {
    scale: f64,
    offset: f64,
}

impl Transform {
    // y = scale * v + offset, with larger values higher on the page
    fn new(lo: f64, hi: f64, plot_height: f64) -> Transform {
        let scale = -plot_height / (hi - lo);
        Transform {
            scale,
            offset: MARGIN_TOP - scale * hi,
        }
    }

    fn y(&self, v: f64) -> f64 {
        self.scale * v + self.offset
    }
}

/// Renders `spec` to a standalone SVG document string.
///
/// Per panel: a rect spanning Q1 to Q3 with a median line, whisker lines at
/// the report's whisker endpoints, a circle per flagged observation, and a
/// cross per known-contaminated observation (a flagged contaminated point
/// gets both, concentric). Glyphs sharing an exact value are spread
/// horizontally with seeded jitter; everything else sits on the panel
/// center line.
pub fn render_boxplots(spec: &PlotSpec) -> Result<String> {
    if spec.panels.is_empty() {
        return Err(Error::EmptySpec);
    }
    for (i, p) in spec.panels.iter().enumerate() {
        let n = p.sample.n();
        let labels_ok = p.report.labels.len() == n;
        let flags_ok = p
            .report
            .contamination_flags
            .as_ref()
            .is_none_or(|f| f.len() == n);
        if !labels_ok || !flags_ok {
            return Err(Error::InconsistentPanel { panel: i });
        }
    }
    let (lo, hi) = spec.range.unwrap_or_else(|| default_range(&spec.panels));
    if !(lo.is_finite() && hi.is_finite() && lo < hi) {
        return Err(Error::invalid_params(format!(
            "plot range [{lo}, {hi}] must be finite with lo < hi"
        )));
    }
    let plot_h = spec.height - MARGIN_TOP - MARGIN_BOTTOM;
    let t = Transform::new(lo, hi, plot_h);
    let width = MARGIN_LEFT + MARGIN_RIGHT + spec.panel_width * spec.panels.len() as f64;
    let height = spec.height;

    let mut doc = String::new();
    let _ = writeln!(
        doc,
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{width:.2}\" height=\"{height:.2}\" viewBox=\"0 0 {width:.2} {height:.2}\">"
    );
    doc.push_str(
        "<style>\n\
         .bg { fill: #ffffff; }\n\
         .axis, .tick { stroke: #333333; stroke-width: 1; }\n\
         .box { fill: none; stroke: #333333; stroke-width: 1.2; }\n\
         .median { stroke: #333333; stroke-width: 1.8; }\n\
         .whisker, .cap { stroke: #333333; stroke-width: 1; }\n\
         .outlier { fill: none; stroke: #bb2222; stroke-width: 1.3; }\n\
         .contamination { fill: none; stroke: #224466; stroke-width: 1.3; }\n\
         .tick-label, .title { font: 11px sans-serif; fill: #333333; }\n\
         </style>\n",
    );
    let _ = writeln!(
        doc,
        "<rect class=\"bg\" x=\"0\" y=\"0\" width=\"{width:.2}\" height=\"{height:.2}\"/>"
    );

    // shared value axis on the left with five evenly spaced ticks
    let _ = writeln!(
        doc,
        "<line class=\"axis\" x1=\"{MARGIN_LEFT:.2}\" y1=\"{:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{:.2}\"/>",
        t.y(hi),
        t.y(lo)
    );
    for i in 0..=4 {
        let v = lo + (hi - lo) * i as f64 / 4.0;
        let y = t.y(v);
        let _ = writeln!(
            doc,
            "<line class=\"tick\" x1=\"{:.2}\" y1=\"{y:.2}\" x2=\"{MARGIN_LEFT:.2}\" y2=\"{y:.2}\"/>",
            MARGIN_LEFT - 4.0
        );
        let _ = writeln!(
            doc,
            "<text class=\"tick-label\" x=\"{:.2}\" y=\"{:.2}\" text-anchor=\"end\">{v:.2}</text>",
            MARGIN_LEFT - 7.0,
            y + 3.5
        );
    }

    for (i, panel) in spec.panels.iter().enumerate() {
        render_panel(&mut doc, panel, i, spec, &t);
    }
    doc.push_str("</svg>\n");
    Ok(doc)
}

fn render_panel(doc: &mut String, panel: &PlotPanel, index: usize, spec: &PlotSpec, t: &Transform) {
    let cx = MARGIN_LEFT + spec.panel_width * (index as f64 + 0.5);
    let box_w = 0.5 * spec.panel_width;
    let s = &panel.sample;
    let r = &panel.report;

    let _ = writeln!(
        doc,
        "<g class=\"panel\" data-index=\"{index}\" data-y-scale=\"{}\" data-y-offset=\"{}\">",
        t.scale, t.offset
    );

    let (yq1, yq3) = (t.y(s.q1()), t.y(s.q3()));
    let _ = writeln!(
        doc,
        "<rect class=\"box\" x=\"{:.2}\" y=\"{yq3:.2}\" width=\"{box_w:.2}\" height=\"{:.2}\"/>",
        cx - box_w / 2.0,
        yq1 - yq3
    );
    let ymed = t.y(s.median());
    let _ = writeln!(
        doc,
        "<line class=\"median\" x1=\"{:.2}\" y1=\"{ymed:.2}\" x2=\"{:.2}\" y2=\"{ymed:.2}\"/>",
        cx - box_w / 2.0,
        cx + box_w / 2.0
    );

    for (from, to) in [(s.q1(), r.whisker_low), (s.q3(), r.whisker_high)] {
        let (y1, y2) = (t.y(from), t.y(to));
        let _ = writeln!(
            doc,
            "<line class=\"whisker\" x1=\"{cx:.2}\" y1=\"{y1:.2}\" x2=\"{cx:.2}\" y2=\"{y2:.2}\"/>"
        );
        let _ = writeln!(
            doc,
            "<line class=\"cap\" x1=\"{:.2}\" y1=\"{y2:.2}\" x2=\"{:.2}\" y2=\"{y2:.2}\"/>",
            cx - box_w / 4.0,
            cx + box_w / 4.0
        );
    }

    // glyph rows: any observation that is flagged, known-contaminated, or both
    let flags = r.contamination_flags.as_deref();
    let glyph_rows: Vec<(usize, f64, bool, bool)> = s
        .original()
        .iter()
        .enumerate()
        .map(|(j, &v)| {
            let flagged = r.labels[j] != Label::Inlier;
            let contaminated = flags.map(|f| f[j]).unwrap_or(false);
            (j, v, flagged, contaminated)
        })
        .filter(|&(_, _, flagged, contaminated)| flagged || contaminated)
        .collect();

    // points sharing an exact value get spread by seeded jitter
    let mut state = JITTER_SEED ^ index as u64;
    for &(_, v, flagged, contaminated) in &glyph_rows {
        let shared = glyph_rows
            .iter()
            .filter(|&&(_, w, _, _)| w.to_bits() == v.to_bits())
            .count()
            > 1;
        let x = if shared {
            let u = (splitmix64(&mut state) >> 11) as f64 * (1.0 / 9_007_199_254_740_992.0);
            cx + (u - 0.5) * 0.8 * box_w
        } else {
            cx
        };
        let y = t.y(v);
        if flagged {
            let _ = writeln!(
                doc,
                "<circle class=\"outlier\" cx=\"{x:.2}\" cy=\"{y:.2}\" r=\"{GLYPH_RADIUS}\"/>"
            );
        }
        if contaminated {
            let a = GLYPH_RADIUS;
            let _ = writeln!(
                doc,
                "<path class=\"contamination\" d=\"M {:.2} {:.2} L {:.2} {:.2} M {:.2} {:.2} L {:.2} {:.2}\"/>",
                x - a,
                y - a,
                x + a,
                y + a,
                x - a,
                y + a,
                x + a,
                y - a
            );
        }
    }

    let _ = writeln!(
        doc,
        "<text class=\"title\" x=\"{cx:.2}\" y=\"{:.2}\" text-anchor=\"middle\">{}</text>",
        spec.height - MARGIN_BOTTOM + 18.0,
        xml_escape(&panel.title)
    );
    doc.push_str("</g>\n");
}
