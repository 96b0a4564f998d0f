// Monte Carlo check of the design property behind the size-adjusted fences:
// on clean normal data they flag about 0.5 observations per sample at any n
// (a per-observation rate of 0.5/n), where fixed k = 1.5 fences keep flagging
// at a roughly constant 0.7% per observation, i.e. ever more points as n
// grows.
//
//   cargo run --release --example false_positive_rates

use boxfence::{estimate_outside_rate, Family, FenceMethod};

fn main() -> boxfence::Result<()> {
    let replicates = 300;
    let seed = 31;

    println!("clean N(0,1) data, {replicates} replicates per cell\n");
    println!(
        "{:>7}  {:>22}  {:>22}  {:>10}",
        "n", "tukey(k=1.5)", "chauvenet_type", "0.5/n"
    );
    for n in [500usize, 5_000, 50_000] {
        let tukey = estimate_outside_rate(
            Family::Normal { mean: 0.0, sd: 1.0 },
            n,
            FenceMethod::tukey(),
            replicates,
            seed,
        )?;
        let chau = estimate_outside_rate(
            Family::Normal { mean: 0.0, sd: 1.0 },
            n,
            FenceMethod::ChauvenetType,
            replicates,
            seed,
        )?;
        println!(
            "{:>7}  {:>12.6} ({:.1e})  {:>12.6} ({:.1e})  {:>10.6}",
            n,
            tukey.rate,
            tukey.se,
            chau.rate,
            chau.se,
            0.5 / n as f64
        );
    }

    println!("\nper-sample expected flag counts (rate * n):");
    println!("  tukey grows linearly with n; chauvenet_type stays near 0.5");
    Ok(())
}
