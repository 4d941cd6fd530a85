//! Paired zeros of the two truncated expansions around a zero of zeta:
//! their real parts straddle the critical line symmetrically and contract
//! onto it as the truncation order grows.
//!
//! Run with: cargo run --release --example zero_pairs

use zeta_lab::zeros::pair_analysis;
use zeta_lab::NumericContext;

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    println!("seed ordinate 40.918719\n");
    println!("{:>6} {:>14} {:>14} {:>12} {:>12}",
        "N", "sep", "defect", "|dz'|", "|dz''|");
    for n in [100u64, 1_000, 10_000] {
        let r = pair_analysis(n, 40.918719, &ctx).unwrap();
        println!(
            "{n:>6} {:>14.3e} {:>14.3e} {:>12.3e} {:>12.3e}",
            r.epsilon_sep.to_f64(),
            r.pair_defect.to_f64(),
            r.displacement_prime.to_f64(),
            r.displacement_dprime.to_f64()
        );
    }
    println!("\nsep = Re(prime zero) - Re(reflected zero); defect = |sum of real parts - 1|");
}
