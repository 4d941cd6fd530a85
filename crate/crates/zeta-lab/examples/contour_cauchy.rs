//! Verify Cauchy's theorem numerically: the two contour legs must add up
//! to 2 pi i times the residue sum, to quadrature accuracy.
//!
//! Run with: cargo run --release --example contour_cauchy

use zeta_lab::contour::cauchy_check;
use zeta_lab::{NumericContext, StripPoint};

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    for (n, text) in [(1u64, "0.5+2i"), (2, "0.3+1i"), (3, "0.7+4i")] {
        let s = StripPoint::parse(text).unwrap();
        let b = cauchy_check(n, &s, &ctx).unwrap();
        println!("N = {n}, s = {text}");
        println!("  I1 (numeric)  = {}", b.i1_numeric.to_string_radix(10, Some(20)));
        println!("  I2 (numeric)  = {}", b.i2_numeric.to_string_radix(10, Some(20)));
        println!("  I2 (model)    = {}", b.i2_model.to_string_radix(10, Some(20)));
        println!("  residue sum   = {}", b.sn.to_string_radix(10, Some(20)));
        println!("  |I1 + I2 - 2 pi i S_N| = {:.3e}\n", b.cauchy_residual.to_f64());
    }
}
