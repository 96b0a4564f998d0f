// The classic masking failure: two identical gross errors inflate the mean
// and standard deviation enough that a mean +/- c_n s interval covers them
// both, while quartile-based fences (which the contamination barely moves)
// flag them immediately.
//
//   cargo run --example toy_contamination

use boxfence::{build_sample, classify, compute_fences, FenceMethod, Label};

fn main() -> boxfence::Result<()> {
    let data = vec![-1.938, -1.177, -0.854, -0.353, 0.890, 0.916, 1.741, 100.0, 100.0];
    let sample = build_sample(&data)?;

    println!("seven N(0,1) draws plus two copies of 100.0, n = {}", sample.n());
    println!("mean = {:.3}  sd = {:.3}  Q1 = {:.3}  Q3 = {:.3}\n",
        sample.mean(), sample.sd(), sample.q1(), sample.q3());

    for method in [FenceMethod::ChauvenetInterval, FenceMethod::ChauvenetType] {
        let fence = compute_fences(&sample, &method)?;
        let report = classify(&sample, &fence, None)?;
        println!("{method:?}");
        println!("  bounds  [{:.3}, {:.3}]", fence.lower, fence.upper);
        let flagged: Vec<String> = report
            .labels
            .iter()
            .zip(sample.original())
            .filter(|(l, _)| **l != Label::Inlier)
            .map(|(_, v)| format!("{v}"))
            .collect();
        if flagged.is_empty() {
            println!("  flagged nothing: both 100s sit inside the interval\n");
        } else {
            println!("  flagged {}\n", flagged.join(", "));
        }
    }

    Ok(())
}
