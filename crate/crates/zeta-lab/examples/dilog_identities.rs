//! The real dilogarithm and its reduction identities: inversion,
//! reciprocal shift and the large-argument expansion.
//!
//! Run with: cargo run --release --example dilog_identities

use zeta_lab::numeric::dilog_as;
use zeta_lab::{Float, NumericContext};
use rug::ops::Pow;

fn main() {
    let ctx = NumericContext::new(40).unwrap();

    let d2 = dilog_as(&ctx.float(2), &ctx).unwrap();
    let target = -ctx.pi().square() / 12u32;
    println!("dilog(2)            = {}", d2.to_string_radix(10, Some(30)));
    println!("-pi^2/12            = {}", target.to_string_radix(10, Some(30)));

    // inversion: dilog(x) + dilog(1/x) = -ln(x)^2 / 2
    let x = ctx.float(10);
    let sum = dilog_as(&x, &ctx).unwrap() + dilog_as(&(ctx.float(1) / &x), &ctx).unwrap();
    let expect = -x.clone().ln().square() / 2u32;
    println!("\ninversion residual at x=10:          {:.3e}",
        (sum - expect).abs().to_f64());

    // reciprocal shift: dilog(1/x+1) + dilog(x+1) + ln(x)^2/2 + pi^2/6 = 0
    for xv in ["0.1", "1", "7", "100"] {
        let xf = ctx.float_from_str(xv).unwrap();
        let a = dilog_as(&(ctx.float(1) / &xf + ctx.float(1)), &ctx).unwrap();
        let b = dilog_as(&(xf.clone() + 1u32), &ctx).unwrap();
        let r = a + b + xf.ln().square() / 2u32 + ctx.pi().square() / 6u32;
        println!("reciprocal-shift residual at x={xv:>4}: {:.3e}", r.abs().to_f64());
    }

    // large arguments: dilog(1/X + 1) = -1/X + 1/(4 X^2) + O(1/X^3)
    println!();
    for exp in [2u32, 3, 4] {
        let x_big = ctx.float(10).pow(exp);
        let v = dilog_as(&(ctx.float(1) / &x_big + ctx.float(1)), &ctx).unwrap();
        let model = -ctx.float(1) / &x_big + ctx.float(1) / (ctx.float(4) * x_big.clone().square());
        let third_order: Float = (v - model).abs() * x_big.pow(3u32);
        println!("X = 1e{exp}: measured 1/X^3 coefficient = {:.6}", third_order.to_f64());
    }
}
