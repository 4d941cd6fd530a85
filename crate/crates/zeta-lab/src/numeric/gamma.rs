//! Complex gamma function.
//!
//! Spouge's approximation with the term count chosen from the working
//! precision, plus the reflection formula for Re(z) < 1/2. The error bound
//! of the Spouge series is explicit, so the term count and the internal
//! precision scale directly with the requested digits.

use crate::context::NumericContext;
use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// log10(2*pi); one Spouge term buys about this many decimal digits.
const LOG10_TWO_PI: f64 = 0.798_179_868_358_115;

type CoefficientMap = HashMap<(u32, u32), Arc<Vec<Float>>>;

fn coefficient_cache() -> &'static Mutex<CoefficientMap> {
    static CACHE: OnceLock<Mutex<CoefficientMap>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Spouge parameters for a context: term count `a` and the internal binary
/// precision. The alternating coefficients cancel roughly 1.85 bits per
/// term, which the internal precision must absorb.
fn spouge_params(ctx: &NumericContext) -> (u32, u32) {
    let a = (ctx.working_digits() as f64 / LOG10_TWO_PI).ceil() as u32 + 3;
    let internal = ctx.working_prec() + (a as f64 * 1.9).ceil() as u32 + 64;
    (a, internal)
}

fn spouge_coefficients(a: u32, prec: u32) -> Arc<Vec<Float>> {
    if let Some(c) = coefficient_cache().lock().unwrap().get(&(a, prec)) {
        return Arc::clone(c);
    }
    let mut coeffs = Vec::with_capacity(a as usize);
    // c0 = sqrt(2 pi)
    let two_pi = Float::with_val(prec, rug::float::Constant::Pi) * 2u32;
    coeffs.push(two_pi.sqrt());
    let mut factorial = Float::with_val(prec, 1); // (k-1)! running
    for k in 1..a {
        if k > 1 {
            factorial *= k - 1;
        }
        let amk = Float::with_val(prec, a - k);
        let exponent = Float::with_val(prec, k) - 0.5f32;
        let half_pow = Float::with_val(prec, (&amk).pow(&exponent));
        let e_amk = amk.exp();
        let mut c = half_pow * e_amk / &factorial;
        if k % 2 == 0 {
            c = -c;
        }
        coeffs.push(c);
    }
    let arc = Arc::new(coeffs);
    coefficient_cache()
        .lock()
        .unwrap()
        .insert((a, prec), Arc::clone(&arc));
    arc
}

/// Gamma(z) for complex z away from the poles at 0, -1, -2, ...
pub fn gamma(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let r = gamma_raw(z, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn gamma_raw(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    if z.imag().is_zero() && z.real().is_integer() && *z.real() <= 0 {
        return Err(Error::Pole(format!("gamma pole at {}", z.real())));
    }
    let wp = ctx.working_prec();
    let (a, internal) = spouge_params(ctx);
    let zi = Complex::with_val(internal, z);

    let value = if z.real().to_f64() < 0.5 {
        // reflection: gamma(z) = pi / (sin(pi z) gamma(1 - z))
        let pi = Float::with_val(internal, rug::float::Constant::Pi);
        let sin_piz = Complex::with_val(internal, &zi * &pi).sin();
        let one_minus = Complex::with_val(internal, 1u32 - &zi);
        let g = spouge_core(&one_minus, a, internal);
        let denom = sin_piz * g;
        if denom.real().is_zero() && denom.imag().is_zero() {
            return Err(Error::Pole(format!("gamma pole near {z}")));
        }
        Complex::with_val(internal, pi) / denom
    } else {
        spouge_core(&zi, a, internal)
    };
    let out = Complex::with_val(wp, &value);
    ctx.ensure_finite(&out, "gamma")?;
    Ok(out)
}

/// Spouge series for Re(z) >= 1/2.
fn spouge_core(z: &Complex, a: u32, prec: u32) -> Complex {
    let coeffs = spouge_coefficients(a, prec);
    let w = Complex::with_val(prec, z - 1u32);
    let mut sum = Complex::with_val(prec, &coeffs[0]);
    for (k, c) in coeffs.iter().enumerate().skip(1) {
        let denom = Complex::with_val(prec, &w + k as u32);
        sum += Complex::with_val(prec, c / denom);
    }
    // (w + a)^(w + 1/2) e^-(w + a) * sum
    let wa = Complex::with_val(prec, &w + a);
    let exponent = Complex::with_val(prec, &w + 0.5f32);
    let pow = Complex::with_val(prec, (&wa).pow(&exponent));
    let neg_wa = -wa;
    let decay = neg_wa.exp();
    pow * decay * sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::NumericContext;

    fn ctx40() -> NumericContext {
        NumericContext::new(40).unwrap()
    }

    fn tolerance(ctx: &NumericContext) -> Float {
        // context precision with one digit of slack
        let d = ctx.precision_digits() as i32;
        let mut t = ctx.float(10);
        t = t.pow(1 - d);
        t
    }

    #[test]
    fn factorial_value() {
        let ctx = ctx40();
        let g = gamma(&ctx.complex_from_f(ctx.float(5)), &ctx).unwrap();
        let diff = (g.real().clone() - 24u32).abs();
        assert!(diff < tolerance(&ctx) * 24u32, "gamma(5) = {g}");
        assert!(g.imag().clone().abs() < tolerance(&ctx));
    }

    #[test]
    fn half_integer_value() {
        let ctx = ctx40();
        let g = gamma(&ctx.complex_from_f(ctx.float(0.5)), &ctx).unwrap();
        let sqrt_pi = ctx.pi().sqrt();
        let diff = (g.real().clone() - sqrt_pi).abs();
        assert!(diff < tolerance(&ctx), "gamma(1/2) = {g}");
    }

    #[test]
    fn modulus_on_critical_line() {
        // |gamma(1/2 + 10i)|^2 = pi / cosh(10 pi)
        let ctx = ctx40();
        let g = gamma(&ctx.complex(ctx.float(0.5), ctx.float(10)), &ctx).unwrap();
        let wp = ctx.working_prec();
        let m2 = Float::with_val(wp, g.abs_ref()).square();
        let expect = ctx.pi() / (ctx.float(10) * ctx.pi()).cosh();
        let rel = (m2.clone() - &expect).abs() / expect;
        assert!(rel.to_f64() < 1e-38, "relative deviation {}", rel.to_f64());
    }

    #[test]
    fn recurrence_on_complex_grid() {
        // gamma(z+1) = z gamma(z) on a 10-point grid spanning both
        // reflection branches
        let ctx = ctx40();
        let wp = ctx.working_prec();
        let grid = [
            (0.25, 0.0),
            (0.75, 0.5),
            (1.5, -2.0),
            (-1.3, 0.7),
            (-3.6, -1.1),
            (0.5, 10.0),
            (2.0, 5.0),
            (-0.2, 0.1),
            (3.25, -7.0),
            (-2.5, 30.0),
        ];
        for (re, im) in grid {
            let z = ctx.complex(ctx.float(re), ctx.float(im));
            let z1 = Complex::with_val(wp, &z + 1u32);
            let lhs = gamma(&z1, &ctx).unwrap();
            let rhs = Complex::with_val(wp, &z * &gamma(&z, &ctx).unwrap());
            let scale = Float::with_val(wp, lhs.abs_ref());
            let diff = Complex::with_val(wp, &lhs - &rhs).abs().into_real_imag().0;
            let rel = diff / scale;
            assert!(
                rel.to_f64() < 1e-38,
                "recurrence fails at {re}+{im}i: rel {}",
                rel.to_f64()
            );
        }
    }

    #[test]
    fn pole_is_reported() {
        let ctx = ctx40();
        for n in [0i32, -1, -4] {
            let z = ctx.complex_from_f(ctx.float(n));
            assert!(matches!(gamma(&z, &ctx), Err(Error::Pole(_))));
        }
    }

    #[test]
    fn conjugate_symmetry() {
        let ctx = ctx40();
        let wp = ctx.working_prec();
        for (re, im) in [(0.3, 2.0), (1.7, 5.5), (-2.3, 11.0)] {
            let z = ctx.complex(ctx.float(re), ctx.float(im));
            let zc = ctx.complex(ctx.float(re), ctx.float(-im));
            let a = gamma(&z, &ctx).unwrap().conj();
            let b = gamma(&zc, &ctx).unwrap();
            let scale = Float::with_val(wp, a.abs_ref());
            let diff = Complex::with_val(wp, &a - &b).abs().into_real_imag().0;
            assert!((diff / scale).to_f64() < 1e-38);
        }
    }

    #[test]
    fn doubling_precision_tightens_residuals() {
        // the recurrence residual shrinks by at least
        // 10^(precision - guard) when the precision doubles
        let lo = NumericContext::new(30).unwrap();
        let hi = NumericContext::new(60).unwrap();
        let rel_residual = |ctx: &NumericContext| {
            let wp = ctx.working_prec();
            let z = ctx.complex(ctx.float(0.3), ctx.float(2));
            let z1 = Complex::with_val(wp, &z + 1u32);
            let lhs = gamma(&z1, ctx).unwrap();
            let rhs = Complex::with_val(wp, &z * &gamma(&z, ctx).unwrap());
            let diff = Complex::with_val(wp, &lhs - &rhs).abs().into_real_imag().0;
            let scale = Float::with_val(wp, lhs.abs_ref());
            (diff / scale).to_f64()
        };
        let r_lo = rel_residual(&lo).max(1e-300);
        let r_hi = rel_residual(&hi).max(1e-300);
        let gain = 10f64.powi(-((lo.precision_digits() - lo.guard_digits()) as i32));
        assert!(
            r_hi <= r_lo * gain,
            "insufficient tightening: {r_lo} -> {r_hi}"
        );
    }
}
