//! The critical-line modulus identity: on s = 1/2 + it the closed-form
//! difference quotient has modulus one, factor by factor.
//!
//! Run with: cargo run --release --example critical_line

use zeta_lab::quotient::critical_line_identity;
use zeta_lab::NumericContext;

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    println!("{:>6}  {:>12} {:>12} {:>12} {:>12} {:>12}",
        "t", "identity", "gamma form", "cos factor", "pow factor", "two factor");
    for t in [0.0, 1.0, 2.0, 10.0, 100.0] {
        let c = critical_line_identity(t, &ctx).unwrap();
        println!(
            "{t:>6}  {:>12.2e} {:>12.2e} {:>12.2e} {:>12.2e} {:>12.2e}",
            c.deviation.to_f64(),
            c.gamma_form_deviation.to_f64(),
            c.cos_factor.to_f64(),
            c.pow_factor.to_f64(),
            c.two_factor.to_f64()
        );
    }
    println!("\nall residuals are relative; zero means below the rounding floor");
}
