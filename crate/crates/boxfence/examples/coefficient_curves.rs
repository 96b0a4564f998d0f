// Tabulates how the fence coefficient grows with sample size under each
// family: the size-adjusted k_n, the exact-rate and tolerance-limit
// approximations (only defined on n = 4m + 1), the asymptotic fence, and
// the empirical growth curve, with fixed k = 1.5 as the baseline.
//
//   cargo run --example coefficient_curves

use boxfence::{
    af_coefficient, chauvenet_coefficient, ec_coefficient, er_coefficient, tl_coefficient,
};

fn cell(r: boxfence::Result<f64>) -> String {
    match r {
        Ok(v) => format!("{v:7.3}"),
        Err(_) => format!("{:>7}", "-"),
    }
}

fn main() {
    println!("{:>8}  {:>7}  {:>7}  {:>7}  {:>7}  {:>7}", "n", "k_n", "er", "tl", "af", "ec");
    for n in [9usize, 13, 25, 49, 50, 72, 101, 497, 1000, 5000, 217_282] {
        println!(
            "{:>8}  {}  {}  {}  {}  {}",
            n,
            cell(chauvenet_coefficient(n)),
            cell(er_coefficient(n)),
            cell(tl_coefficient(n)),
            cell(af_coefficient(n, 0.05)),
            cell(ec_coefficient(n)),
        );
    }

    // three landmarks of the k_n curve
    println!();
    for (n, note) in [
        (50usize, "matches the 1.41 often quoted for mid-size samples"),
        (72, "crosses the classic 1.5"),
        (217_282, "reaches 3.0, the far-out coefficient"),
    ] {
        println!("k_{n} = {:.4}  <- {note}", chauvenet_coefficient(n).unwrap());
    }

    // er/tl are gated to their published validity grid
    println!();
    match er_coefficient(100) {
        Err(e) => println!("er_coefficient(100): error: {e}"),
        Ok(_) => unreachable!("n = 100 is not of the form 4m + 1"),
    }
}
