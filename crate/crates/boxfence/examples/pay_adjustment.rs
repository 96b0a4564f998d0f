// Runs three detection rules over the bundled civil-service pay adjustment
// series (18 tax years, junior and senior bands) and prints which years each
// rule flags.
//
//   cargo run --example pay_adjustment

use boxfence::datasets::{hk_pay_junior, hk_pay_senior, hk_pay_years};
use boxfence::sim::method_name;
use boxfence::{build_sample, classify, compute_fences, FenceMethod, Label};

fn main() -> boxfence::Result<()> {
    let years = hk_pay_years();
    let methods = [
        FenceMethod::tukey(),
        FenceMethod::ChauvenetType,
        FenceMethod::ChauvenetInterval,
    ];

    for (band, values) in [("junior", hk_pay_junior()), ("senior", hk_pay_senior())] {
        let sample = build_sample(&values)?;
        println!("{band} band: n = {}, range [{:.2}, {:.2}]", sample.n(), sample.min(), sample.max());
        for method in &methods {
            let fence = compute_fences(&sample, method)?;
            let report = classify(&sample, &fence, None)?;
            let hits: Vec<String> = report
                .labels
                .iter()
                .enumerate()
                .filter(|(_, l)| **l != Label::Inlier)
                .map(|(i, _)| format!("{} ({:+.2}%)", years[i], values[i]))
                .collect();
            println!(
                "  {:<24} [{:>7.3}, {:>6.3}]  {}",
                method_name(method),
                fence.lower,
                fence.upper,
                if hits.is_empty() { "no years flagged".to_string() } else { hits.join(", ") }
            );
        }
        println!();
    }

    // the junior band's three pay freezes sit exactly on 0.00, below the
    // size-adjusted fence but inside the fixed tukey fence; the senior
    // band's -5.38% cut is flagged by every rule
    Ok(())
}
