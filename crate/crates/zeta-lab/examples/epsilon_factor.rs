//! The dilogarithmic correction factor epsilon_v: exact values against the
//! asymptotic constant -1/24 and the first exponential correction.
//!
//! Run with: cargo run --release --example epsilon_factor

use zeta_lab::expansions::{epsilon_v, EpsilonMode};
use zeta_lab::{Complex, Float, NumericContext, StripPoint};

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    let wp = ctx.working_prec();
    let s = StripPoint::parse("0.3+2i").unwrap();
    println!("epsilon_v at s = 0.3+2i\n");
    println!("{:>4}  {:>24} {:>14} {:>14}", "v", "exact (re)", "|exact+1/24|", "|exact-first|");
    for v in [0.0, 0.5, 1.0, 2.0, 3.0] {
        let vf = ctx.float(v);
        let exact = epsilon_v(&s, &vf, EpsilonMode::Exact, &ctx).unwrap();
        let first = epsilon_v(&s, &vf, EpsilonMode::FirstCorrection, &ctx).unwrap();
        let dev24 = Complex::with_val(wp, &exact + &ctx.complex_from_f(ctx.float(1) / 24u32));
        let devf = Complex::with_val(wp, &exact - &first);
        println!(
            "{v:>4}  {:>24.16e} {:>14.3e} {:>14.3e}",
            exact.real().to_f64(),
            Float::with_val(wp, dev24.abs_ref()).to_f64(),
            Float::with_val(wp, devf.abs_ref()).to_f64()
        );
    }
    println!("\nthe gap to -1/24 decays like e^(-2 v pi); the first correction absorbs it");
}
