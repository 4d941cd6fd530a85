//! The two independent reference paths for zeta(s) and the functional
//! equation they satisfy.
//!
//! Run with: cargo run --release --example zeta_reference

use zeta_lab::zeta::{functional_eq_rhs, zeta_ref, zeta_ref_with_method, ZetaMethod};
use zeta_lab::{Complex, Float, NumericContext, StripPoint};

fn main() {
    let ctx = NumericContext::new(40).unwrap();
    let wp = ctx.working_prec();
    for text in ["0.5+14.134725i", "0.2+1i", "0.8+30i", "0.01+100i"] {
        let s = StripPoint::parse(text).unwrap();
        let em = zeta_ref(&s, &ctx).unwrap();
        let eta = zeta_ref_with_method(&s, ZetaMethod::EtaAccelerated, &ctx).unwrap();
        let fe = functional_eq_rhs(&s, &ctx).unwrap();
        let method_gap = Float::with_val(wp, Complex::with_val(wp, &em.value - &eta.value).abs_ref());
        let fe_gap = Float::with_val(wp, Complex::with_val(wp, &em.value - &fe).abs_ref());
        println!("s = {text}");
        println!("  zeta          = {}", em.value.to_string_radix(10, Some(25)));
        println!("  method gap    = {:.2e}   (certified digits: {})", method_gap.to_f64(), em.certified_digits);
        println!("  functional eq = {:.2e}\n", fe_gap.to_f64());
    }
}
