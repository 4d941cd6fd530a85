//! Arbitrary-precision special functions used by every other module:
//! complex powers of positive real bases, the complex gamma function and
//! the real dilogarithm.
//!
//! All complex powers in this crate are powers of positive real bases and
//! use the principal real logarithm; no other branch ever arises.

mod dilog;
mod gamma;

pub use dilog::dilog_as;
pub(crate) use dilog::dilog_raw;
pub use gamma::gamma;
pub(crate) use gamma::gamma_raw;

use crate::context::NumericContext;
use crate::error::{Error, Result};
use rug::{Complex, Float};

/// base^exponent for a positive real base, via exp(exponent * ln base).
pub fn cpow(base: &Float, exponent: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let r = cpow_raw(base, exponent, ctx)?;
    Ok(ctx.round_out(r))
}

/// Working-precision variant used internally by other modules.
pub(crate) fn cpow_raw(
    base: &Float,
    exponent: &Complex,
    ctx: &NumericContext,
) -> Result<Complex> {
    if !base.is_finite() || base.is_sign_negative() || base.is_zero() {
        return Err(Error::Domain(format!(
            "cpow requires a positive real base, got {base}"
        )));
    }
    let wp = ctx.working_prec();
    let ln_base = Float::with_val(wp, base.ln_ref());
    let z = Complex::with_val(wp, exponent * &ln_base).exp();
    ctx.ensure_finite(&z, "cpow")?;
    Ok(z)
}

/// Convenience for integer bases.
pub(crate) fn cpow_u64(n: u64, exponent: &Complex, ctx: &NumericContext) -> Result<Complex> {
    cpow_raw(&ctx.float_u64(n), exponent, ctx)
}

/// exp(i * pi * c * s) at working precision, for rational program constants c.
pub(crate) fn exp_i_pi(c: &Float, s: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wp = ctx.working_prec();
    let phase = Complex::with_val(wp, s * c) * ctx.pi();
    let z = Complex::with_val(wp, (-phase.imag().clone(), phase.real().clone())).exp();
    ctx.ensure_finite(&z, "exp_i_pi")?;
    Ok(z)
}

/// cos(s * pi / 2) at working precision.
pub(crate) fn cos_half_pi(s: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wp = ctx.working_prec();
    let arg = Complex::with_val(wp, s * &ctx.pi()) / 2u32;
    let z = arg.cos();
    ctx.ensure_finite(&z, "cos_half_pi")?;
    Ok(z)
}

/// sin(s * pi / 2) at working precision.
pub(crate) fn sin_half_pi(s: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wp = ctx.working_prec();
    let arg = Complex::with_val(wp, s * &ctx.pi()) / 2u32;
    let z = arg.sin();
    ctx.ensure_finite(&z, "sin_half_pi")?;
    Ok(z)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::NumericContext;

    fn ctx40() -> NumericContext {
        NumericContext::new(40).unwrap()
    }

    fn assert_close_f64(actual: &Complex, re: f64, im: f64, tol: f64) {
        let ar = actual.real().to_f64();
        let ai = actual.imag().to_f64();
        assert!(
            (ar - re).abs() <= tol && (ai - im).abs() <= tol,
            "expected about {re}+{im}i, got {ar}+{ai}i"
        );
    }

    #[test]
    fn cpow_identity_cases() {
        let ctx = ctx40();
        let one = cpow(&ctx.float(7), &ctx.complex_zero(), &ctx).unwrap();
        assert_close_f64(&one, 1.0, 0.0, 1e-30);

        // e^(1+0i) = e
        let e = ctx.float(1).exp();
        let r = cpow(&e, &ctx.complex_from_f(ctx.float(1)), &ctx).unwrap();
        let expect = ctx.float(1).exp();
        let diff = (r.real().clone() - expect).abs();
        assert!(diff < ctx.float(1e-38));
        assert!(r.imag().clone().abs() < ctx.float(1e-38));
    }

    #[test]
    fn cpow_matches_independent_composition_at_doubled_precision() {
        // oracle: the same exp/ln composition evaluated directly on rug
        // values at twice the digits
        let ctx = ctx40();
        let hi = NumericContext::new(100).unwrap();
        let s = ctx.complex(ctx.float(0.5), ctx.float(2));
        let got = cpow(&ctx.float(3), &s, &ctx).unwrap();

        let wp = hi.working_prec();
        let ln3 = Float::with_val(wp, 3).ln();
        let s_hi = Complex::with_val(wp, (0.5, 2.0));
        let oracle = Complex::with_val(wp, s_hi * ln3).exp();

        let diff = Complex::with_val(wp, &got - &oracle).abs();
        let tol = Float::with_val(wp, 1e-39);
        assert!(diff.real() < &tol, "diff {}", diff.real().to_f64());
    }

    #[test]
    fn cpow_rejects_nonpositive_base() {
        let ctx = ctx40();
        let s = ctx.complex_from_f(ctx.float(1));
        assert!(cpow(&ctx.float(0), &s, &ctx).is_err());
        assert!(cpow(&ctx.float(-2), &s, &ctx).is_err());
    }

    #[test]
    fn cpow_conjugate_symmetry() {
        let ctx = ctx40();
        for (re, im) in [(0.3, 1.0), (0.9, 17.5), (0.5, -3.25)] {
            let s = ctx.complex(ctx.float(re), ctx.float(im));
            let sc = ctx.complex(ctx.float(re), ctx.float(-im));
            let a = cpow(&ctx.float(5), &s, &ctx).unwrap();
            let b = cpow(&ctx.float(5), &sc, &ctx).unwrap();
            let conj_a = a.conj();
            let diff = Complex::with_val(ctx.working_prec(), &conj_a - &b).abs();
            assert!(diff.real().to_f64() < 1e-38);
        }
    }
}
