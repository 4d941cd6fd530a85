//! Evaluate both truncated expansions of zeta(s) against the reference
//! value at a point deep in the critical strip, and print the quotient of
//! their moduli.
//!
//! Run with: cargo run --release --example pair_evaluation

use zeta_lab::expansions::{evaluate_pair, EpsilonMode};
use zeta_lab::{Complex, Float, NumericContext, StripPoint};

fn main() {
    let ctx = NumericContext::new(50).unwrap();
    let s = StripPoint::parse("0.01+100i").unwrap();
    let wp = ctx.working_prec();

    println!("s = 0.01 + 100i, 50 digits\n");
    for n in [1_000u64, 100_000] {
        let pair = evaluate_pair(n, &s, EpsilonMode::MinusOne24, &ctx).unwrap();
        let d_prime = Float::with_val(wp, Complex::with_val(wp, &pair.zn_prime - &pair.zeta).abs_ref());
        let d_dprime = Float::with_val(wp, Complex::with_val(wp, &pair.zn_dprime - &pair.zeta).abs_ref());
        println!("N = {n}");
        println!("  zeta      = {}", pair.zeta.to_string_radix(10, Some(25)));
        println!("  forward   = {}", pair.zn_prime.to_string_radix(10, Some(25)));
        println!("  reflected = {}", pair.zn_dprime.to_string_radix(10, Some(25)));
        println!("  |forward - zeta|   = {:.3e}", d_prime.to_f64());
        println!("  |reflected - zeta| = {:.3e}", d_dprime.to_f64());
        println!("  q1 = {}", pair.q1.to_string_radix(10, Some(25)));
        println!();
    }
}
