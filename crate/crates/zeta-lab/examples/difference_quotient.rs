//! The difference quotient (forward - zeta)/(reflected - zeta) measured
//! directly against its closed form at the published evaluation point.
//!
//! Run with: cargo run --release --example difference_quotient

use zeta_lab::expansions::EpsilonMode;
use zeta_lab::quotient::difference_quotient;
use zeta_lab::{NumericContext, StripPoint};

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    let s = StripPoint::parse("0.7+30i").unwrap();
    let r = difference_quotient(100_000, &s, EpsilonMode::MinusOne24, &ctx).unwrap();
    println!("N = 100000, s = 0.7+30i, 40 digits\n");
    println!("forward deviation    = {}", r.diff_prime.to_string_radix(10, Some(15)));
    println!("reflected deviation  = {}", r.diff_dprime.to_string_radix(10, Some(15)));
    println!("quotient (measured)  = {}", r.measured.to_string_radix(10, Some(11)));
    println!("quotient (closed)    = {}", r.closed_form.to_string_radix(10, Some(11)));
    println!("residual             = {:.3e}", r.residual.to_f64());
}
