// Renders the bundled pay series as side-by-side annotated boxplots and
// writes the SVG next to the current directory. Flagged observations get
// circle glyphs; the two bands share one value axis so their boxes are
// directly comparable.
//
//   cargo run --example svg_boxplot

use boxfence::datasets::{hk_pay_junior, hk_pay_senior};
use boxfence::{build_sample, classify, compute_fences, render_boxplots, FenceMethod};
use boxfence::{PlotPanel, PlotSpec};

fn main() -> boxfence::Result<()> {
    let mut panels = Vec::new();
    for (title, values) in [("junior", hk_pay_junior()), ("senior", hk_pay_senior())] {
        let sample = build_sample(&values)?;
        let fence = compute_fences(&sample, &FenceMethod::ChauvenetType)?;
        let report = classify(&sample, &fence, None)?;
        println!("{title}: {} of {} observations flagged", report.n_flagged, sample.n());
        panels.push(PlotPanel::new(title, sample, report));
    }

    let svg = render_boxplots(&PlotSpec::new(panels))?;
    let path = "pay_boxplots.svg";
    std::fs::write(path, &svg).expect("write svg");
    println!(
        "wrote {path} ({} bytes, {} outlier glyphs)",
        svg.len(),
        svg.matches("class=\"outlier\"").count()
    );
    Ok(())
}
