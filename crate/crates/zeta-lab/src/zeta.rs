//! Reference evaluation of zeta(s) in the critical strip.
//!
//! The primary path is Euler-Maclaurin summation with a tail-error bound
//! that scales with |t|; a second, independent path accelerates the
//! alternating Dirichlet series with a Chebyshev-polynomial scheme and is
//! kept as a cross-check oracle. The two paths share no code beyond basic
//! arithmetic.

use crate::context::NumericContext;
use crate::error::{Error, Result};
use crate::numeric::{self, cpow_u64};
use crate::strip::StripPoint;
use rug::ops::Pow;
use rug::{Complex, Float, Integer, Rational};
use std::sync::{Mutex, OnceLock};

/// Evaluation method of a [`ZetaValue`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ZetaMethod {
    EulerMaclaurin,
    EtaAccelerated,
}

/// A zeta value together with the digits the evaluator stands behind.
#[derive(Debug, Clone)]
pub struct ZetaValue {
    pub value: Complex,
    pub method: ZetaMethod,
    pub certified_digits: u32,
}

// --- Bernoulli numbers -----------------------------------------------------

fn bernoulli_cache() -> &'static Mutex<Vec<Rational>> {
    static CACHE: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(vec![Rational::from(1), Rational::from((-1, 2))]))
}

/// B_n in the convention B_1 = -1/2, via the defining recurrence.
pub(crate) fn bernoulli(n: usize) -> Rational {
    let mut cache = bernoulli_cache().lock().unwrap();
    while cache.len() <= n {
        let m = cache.len();
        // B_m = -(1/(m+1)) sum_{j=0}^{m-1} C(m+1, j) B_j
        let mut acc = Rational::new();
        let mut binom = Integer::from(1); // C(m+1, 0)
        for (j, b) in cache.iter().enumerate() {
            if j > 0 {
                // C(m+1, j) = C(m+1, j-1) * (m+2-j) / j
                binom *= (m + 2 - j) as u64;
                binom /= j as u64;
            }
            acc += Rational::from((binom.clone(), Integer::from(1))) * b;
        }
        let b_m = -acc / Rational::from(((m + 1) as u64, 1u64));
        cache.push(b_m);
    }
    cache[n].clone()
}

// --- Euler-Maclaurin -------------------------------------------------------

/// zeta(z) by Euler-Maclaurin for complex z away from the pole at 1.
///
/// Splits the Dirichlet series at a cutoff M, integrates the tail and
/// corrects with Bernoulli terms. M and the correction depth are chosen so
/// the standard remainder bound sits below the working accuracy; when the
/// bound cannot be met within the budget, a budget error is returned.
pub fn zeta_at(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wd = ctx.working_digits();
    if z.imag().is_zero() && *z.real() == 1 {
        return Err(Error::Pole("zeta pole at s = 1".into()));
    }

    let abs_z = Float::with_val(53, z.abs_ref()).to_f64();
    let wp = ctx.working_prec();
    let target = Float::with_val(wp, 10u32).pow(-(wd as i32 + 2));

    let mut j_terms = ((wd as f64) * 0.85) as u32 + 8;
    let mut cutoff = (((abs_z + 2.0 * j_terms as f64) / std::f64::consts::PI) as u64).max(10);
    for _attempt in 0..5 {
        if let Some(v) = euler_maclaurin_once(z, cutoff, j_terms, &target, ctx)? {
            ctx.ensure_finite(&v, "zeta_at")?;
            return Ok(v);
        }
        cutoff *= 2;
        j_terms += j_terms / 4;
    }
    Err(Error::Budget(format!(
        "euler-maclaurin bound not met for s = {z} within term budget"
    )))
}

/// One Euler-Maclaurin evaluation; `None` when the remainder bound fails.
fn euler_maclaurin_once(
    z: &Complex,
    cutoff: u64,
    j_terms: u32,
    target: &Float,
    ctx: &NumericContext,
) -> Result<Option<Complex>> {
    let wp = ctx.working_prec();
    let neg_z = Complex::with_val(wp, -z.clone());

    // sum_{n=1}^{M-1} n^-z under the context's summation policy
    let direct = if cutoff > 1 {
        let partial: Result<Vec<Complex>> =
            (1..cutoff).map(|n| cpow_u64(n, &neg_z, ctx)).collect();
        let partial = partial?;
        ctx.sum_complex(cutoff - 1, |i| partial[i as usize].clone())
    } else {
        ctx.complex_zero()
    };

    let m_f = ctx.float_u64(cutoff);
    let m_pow_negz = numeric::cpow_raw(&m_f, &neg_z, ctx)?; // M^-z
    let z_minus_1 = Complex::with_val(wp, z - 1u32);
    let integral = Complex::with_val(wp, &m_pow_negz * &m_f) / &z_minus_1; // M^(1-z)/(z-1)
    let half_term = Complex::with_val(wp, &m_pow_negz / 2u32);

    // Bernoulli corrections: T_j = B_2j/(2j)! * z(z+1)...(z+2j-2) * M^(-z-2j+1)
    let mut corrections = ctx.complex_zero();
    let mut pochhammer = Complex::with_val(wp, z);
    let mut m_power = Complex::with_val(wp, &m_pow_negz * &m_f); // M^(1-z)
    let m_sq = Float::with_val(wp, m_f.square_ref());
    let mut factorial = Float::with_val(wp, 2); // (2j)!
    for j in 1..=j_terms as usize {
        if j > 1 {
            let a = Complex::with_val(wp, z + (2 * j as u32 - 3));
            let b = Complex::with_val(wp, z + (2 * j as u32 - 2));
            pochhammer = Complex::with_val(wp, &pochhammer * &a);
            pochhammer = Complex::with_val(wp, &pochhammer * &b);
            factorial *= (2 * j as u32 - 1) * (2 * j as u32);
        }
        m_power = Complex::with_val(wp, &m_power / &m_sq); // M^(-z-2j+1)
        let b2j = Float::with_val(wp, &bernoulli(2 * j));
        let coeff = b2j / &factorial;
        let term = Complex::with_val(wp, &pochhammer * &m_power) * coeff;
        corrections += term;
    }

    // remainder bound |R| <= |z + 2J + 1| / (Re z + 2J + 1) * |next term|
    let j = j_terms as usize;
    let a = Complex::with_val(wp, z + (2 * j as u32 - 1));
    let b = Complex::with_val(wp, z + (2 * j as u32));
    let next_poch = Complex::with_val(wp, Complex::with_val(wp, &pochhammer * &a) * b);
    let next_m = Complex::with_val(wp, &m_power / &m_sq);
    let next_fact = factorial * ((2 * j as u32 + 1) * (2 * j as u32 + 2));
    let b_next = Float::with_val(wp, &bernoulli(2 * j + 2)).abs();
    let next_mag = Float::with_val(wp, next_poch.abs_ref())
        * Float::with_val(wp, next_m.abs_ref())
        * b_next
        / next_fact;
    let z21 = Complex::with_val(wp, z + (2 * j as u32 + 1));
    let denom = Float::with_val(wp, z.real() + (2 * j as u32 + 1));
    let factor = Float::with_val(wp, z21.abs_ref()) / denom;
    let bound = next_mag * factor;
    if bound > *target {
        return Ok(None);
    }

    Ok(Some(direct + integral + half_term + corrections))
}

// --- accelerated alternating series ---------------------------------------

/// eta(z) accelerated with Chebyshev coefficients, then converted to zeta.
///
/// The error decays like (3 + sqrt 8)^-n with an extra e^(pi |t|) factor
/// for complex arguments, which the term count absorbs.
pub(crate) fn zeta_eta_accelerated_at(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wp = ctx.working_prec();
    let wd = ctx.working_digits();
    let t_abs = z.imag().to_f64().abs();
    let n = ((wd as f64 * std::f64::consts::LN_10 + 1.6 * t_abs) / 1.762_747_174_039_086).ceil()
        as u64
        + 6;

    let neg_z = Complex::with_val(wp, -z.clone());
    // d = ((3 + sqrt 8)^n + (3 - sqrt 8)^n) / 2
    let sqrt8 = Float::with_val(wp, 8).sqrt();
    let big = (Float::with_val(wp, 3) + &sqrt8).pow(n as u32);
    let small = Float::with_val(wp, big.recip_ref());
    let d = (big + small) / 2u32;

    let mut b = Float::with_val(wp, -1);
    let mut c = Float::with_val(wp, -&d);
    let mut sum = ctx.complex_zero();
    for k in 0..n {
        c = b.clone() - &c;
        let term = cpow_u64(k + 1, &neg_z, ctx)?;
        sum += Complex::with_val(wp, &term * &c);
        // b *= (k + n)(k - n) / ((k + 1/2)(k + 1))
        let num =
            Float::with_val(wp, (k + n) as f64) * Float::with_val(wp, k as f64 - n as f64);
        let den = (Float::with_val(wp, k) + 0.5f32) * Float::with_val(wp, k + 1);
        b = b * num / den;
    }
    let eta = sum / d;

    // zeta = eta / (1 - 2^(1-z))
    let one_minus_z = Complex::with_val(wp, 1u32 - z);
    let two_pow = numeric::cpow_raw(&ctx.float(2), &one_minus_z, ctx)?;
    let denom = Complex::with_val(wp, 1u32 - &two_pow);
    if denom.real().is_zero() && denom.imag().is_zero() {
        return Err(Error::Division("eta conversion factor vanished".into()));
    }
    let v = eta / denom;
    ctx.ensure_finite(&v, "zeta_eta_accelerated")?;
    Ok(v)
}

// --- public operations -----------------------------------------------------

/// Reference zeta(s) on the open strip via Euler-Maclaurin.
pub fn zeta_ref(s: &StripPoint, ctx: &NumericContext) -> Result<ZetaValue> {
    zeta_ref_with_method(s, ZetaMethod::EulerMaclaurin, ctx)
}

pub fn zeta_ref_with_method(
    s: &StripPoint,
    method: ZetaMethod,
    ctx: &NumericContext,
) -> Result<ZetaValue> {
    let z = s.to_complex(ctx);
    let (value, condition) = match method {
        ZetaMethod::EulerMaclaurin => {
            let v = zeta_at(&z, ctx)?;
            let cond = Float::with_val(53, z.abs_ref()).to_f64().max(1.0);
            (v, cond)
        }
        ZetaMethod::EtaAccelerated => {
            let v = zeta_eta_accelerated_at(&z, ctx)?;
            let wp = ctx.working_prec();
            let one_minus_z = Complex::with_val(wp, 1u32 - &z);
            let two_pow = numeric::cpow_raw(&ctx.float(2), &one_minus_z, ctx)?;
            let f = Complex::with_val(wp, 1u32 - two_pow);
            let mag = Float::with_val(53, f.abs_ref()).to_f64();
            (v, (1.0 / mag).max(1.0))
        }
    };
    let penalty = condition.log10().ceil().max(0.0) as u32;
    let certified = ctx
        .precision_digits()
        .saturating_sub(ctx.guard_digits())
        .saturating_sub(penalty)
        .min(ctx.precision_digits());
    Ok(ZetaValue {
        value: ctx.round_out(value),
        method,
        certified_digits: certified,
    })
}

/// Right-hand side of the functional equation:
/// 2^s pi^(s-1) sin(s pi / 2) gamma(1-s) zeta(1-s).
pub fn functional_eq_rhs(s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = functional_eq_rhs_at(&z, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn functional_eq_rhs_at(z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wp = ctx.working_prec();
    let one_minus = Complex::with_val(wp, 1u32 - z);
    let zeta_reflected = zeta_at(&one_minus, ctx)?;
    let two_pow = numeric::cpow_raw(&ctx.float(2), z, ctx)?;
    let z_minus_1 = Complex::with_val(wp, z - 1u32);
    let pi_pow = numeric::cpow_raw(&ctx.pi(), &z_minus_1, ctx)?;
    let sin_half = numeric::sin_half_pi(z, ctx)?;
    let gamma_term = numeric::gamma_raw(&one_minus, ctx)?;
    let mut r = Complex::with_val(wp, &two_pow * &pi_pow);
    r = Complex::with_val(wp, &r * &sin_half);
    r = Complex::with_val(wp, &r * &gamma_term);
    r = Complex::with_val(wp, &r * &zeta_reflected);
    ctx.ensure_finite(&r, "functional_eq_rhs")?;
    Ok(r)
}

/// Plain partial sum of the alternating Dirichlet series,
/// sum_{n=1}^{terms} (-1)^(n+1) n^-s, with no acceleration.
pub fn eta_partial(s: &StripPoint, terms: u64, ctx: &NumericContext) -> Result<Complex> {
    if terms == 0 {
        return Err(Error::Domain("eta_partial requires terms >= 1".into()));
    }
    let z = s.to_complex(ctx);
    let wp = ctx.working_prec();
    let neg_z = Complex::with_val(wp, -z);
    let values: Result<Vec<Complex>> = (1..=terms)
        .map(|n| {
            let mut t = cpow_u64(n, &neg_z, ctx)?;
            if n % 2 == 0 {
                t = -t;
            }
            Ok(t)
        })
        .collect();
    let values = values?;
    let sum = ctx.sum_complex(terms, |i| values[i as usize].clone());
    Ok(ctx.round_out(sum))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::context::NumericContext;

    fn ctx40() -> NumericContext {
        NumericContext::new(40).unwrap()
    }

    fn abs_f64(z: &Complex) -> f64 {
        Float::with_val(64, z.abs_ref()).to_f64()
    }

    #[test]
    fn bernoulli_values() {
        assert_eq!(bernoulli(2), Rational::from((1, 6)));
        assert_eq!(bernoulli(4), Rational::from((-1, 30)));
        assert_eq!(bernoulli(12), Rational::from((-691, 2730)));
        assert_eq!(bernoulli(3), Rational::new());
    }

    #[test]
    fn zeta_half_matches_eta_oracle() {
        // oracle: accelerated alternating series at 60 digits
        let hi = NumericContext::new(60).unwrap();
        let s = StripPoint::from_f64(0.5, 0.0).unwrap();
        let oracle = zeta_ref_with_method(&s, ZetaMethod::EtaAccelerated, &hi).unwrap();
        let ctx = ctx40();
        let em = zeta_ref(&s, &ctx).unwrap();
        let wp = hi.working_prec();
        let diff = Complex::with_val(wp, &em.value - &oracle.value);
        assert!(abs_f64(&diff) < 1e-38, "EM vs eta: {}", abs_f64(&diff));
        // frozen leading digits
        let expect = -1.4603545088095868;
        assert!((em.value.real().to_f64() - expect).abs() < 1e-12);
        assert!(em.value.imag().to_f64().abs() < 1e-30);
    }

    #[test]
    fn strip_value_with_large_t() {
        // zeta(0.01 + 100i) against its published 20-decimal rendering
        let ctx = NumericContext::new(50).unwrap();
        let s = StripPoint::parse("0.01+100i").unwrap();
        let v = zeta_ref(&s, &ctx).unwrap().value;
        let re_expect = ctx.float_from_str("6.38166671825299080590").unwrap();
        let im_expect = ctx.float_from_str("0.17431634200064641950").unwrap();
        let dre = (v.real().clone() - re_expect).abs().to_f64();
        let dim = (v.imag().clone() - im_expect).abs().to_f64();
        assert!(dre < 5e-21 && dim < 5e-21, "dre={dre} dim={dim}");
    }

    #[test]
    fn conjugate_symmetry() {
        let ctx = ctx40();
        let s = StripPoint::parse("0.4+13i").unwrap();
        let a = zeta_ref(&s, &ctx).unwrap().value;
        let b = zeta_ref(&s.conj(), &ctx).unwrap().value;
        let diff = Complex::with_val(ctx.working_prec(), a.conj() - b);
        assert!(abs_f64(&diff) < 1e-38);
    }

    #[test]
    fn methods_agree_on_grid() {
        let ctx = ctx40();
        for (sig, t) in [(0.2, 1.0), (0.5, 10.0), (0.8, 30.0)] {
            let s = StripPoint::from_f64(sig, t).unwrap();
            let em = zeta_ref(&s, &ctx).unwrap();
            let eta = zeta_ref_with_method(&s, ZetaMethod::EtaAccelerated, &ctx).unwrap();
            let diff = Complex::with_val(ctx.working_prec(), &em.value - &eta.value);
            let certified = em.certified_digits.min(eta.certified_digits);
            let tol = 10f64.powi(-(certified as i32));
            assert!(
                abs_f64(&diff) < tol,
                "methods differ at {sig}+{t}i: {} vs tol {tol}",
                abs_f64(&diff)
            );
            assert!(em.certified_digits <= ctx.precision_digits());
        }
    }

    #[test]
    fn functional_equation_residual_on_grid() {
        let ctx = ctx40();
        let tol = 10f64.powi(-((ctx.precision_digits() - ctx.guard_digits()) as i32));
        let mut grid: Vec<(f64, f64)> = vec![(0.3, 5.0), (0.5, 14.0)];
        for sig in [0.2, 0.5, 0.8] {
            for t in [1.0, 10.0, 30.0, 100.0] {
                grid.push((sig, t));
            }
        }
        {
            for (sig, t) in grid {
                let s = StripPoint::from_f64(sig, t).unwrap();
                let lhs = zeta_ref(&s, &ctx).unwrap().value;
                let rhs = functional_eq_rhs(&s, &ctx).unwrap();
                let wp = ctx.working_prec();
                let diff = Complex::with_val(wp, &lhs - &rhs);
                let rel = abs_f64(&diff) / abs_f64(&lhs);
                assert!(rel < tol, "residual {rel} at sigma={sig}, t={t}");
            }
        }
    }

    #[test]
    fn eta_partial_small_cases() {
        let ctx = ctx40();
        let s = StripPoint::from_f64(0.5, 0.0).unwrap();
        let one = eta_partial(&s, 1, &ctx).unwrap();
        assert!((one.real().to_f64() - 1.0).abs() < 1e-39);
        let two = eta_partial(&s, 2, &ctx).unwrap();
        let expect = 1.0 - 0.5f64.sqrt();
        assert!((two.real().to_f64() - expect).abs() < 1e-15);
        assert!(eta_partial(&s, 0, &ctx).is_err());
    }

    #[test]
    fn eta_partial_tracks_reference_within_envelope() {
        // after division by (1 - 2^(1-s)), the truncation error of the
        // plain alternating sum is bounded by its first omitted term
        let ctx = ctx40();
        let s = StripPoint::parse("0.7+30i").unwrap();
        let terms = 100_000u64;
        let partial = eta_partial(&s, terms, &ctx).unwrap();
        let wp = ctx.working_prec();
        let z = s.to_complex(&ctx);
        let one_minus = Complex::with_val(wp, 1u32 - &z);
        let factor = Complex::with_val(
            wp,
            1u32 - numeric::cpow_raw(&ctx.float(2), &one_minus, &ctx).unwrap(),
        );
        let approx = Complex::with_val(wp, &partial / &factor);
        let reference = zeta_ref(&s, &ctx).unwrap().value;
        let diff = Complex::with_val(wp, &approx - &reference);
        let neg_z = Complex::with_val(wp, -&z);
        let next = cpow_u64(terms + 1, &neg_z, &ctx).unwrap();
        let envelope =
            Float::with_val(wp, next.abs_ref()) / Float::with_val(wp, factor.abs_ref());
        assert!(
            abs_f64(&diff) <= envelope.to_f64(),
            "diff {} exceeds envelope {}",
            abs_f64(&diff),
            envelope.to_f64()
        );
    }

    #[test]
    fn monotone_refinement_keeps_certified_digits() {
        let lo = ctx40();
        let hi = NumericContext::new(60).unwrap();
        let s = StripPoint::parse("0.3+7i").unwrap();
        let a = zeta_ref(&s, &lo).unwrap();
        let b = zeta_ref(&s, &hi).unwrap();
        let wp = hi.working_prec();
        let diff = Complex::with_val(wp, &a.value - &b.value);
        let tol = 10f64.powi(-(a.certified_digits as i32));
        assert!(abs_f64(&diff) < tol);
    }

    #[test]
    fn both_sides_vanish_near_a_zero() {
        // near t = 14.1347 both sides of the functional equation are small
        let ctx = ctx40();
        let s = StripPoint::parse("0.5+14.134725i").unwrap();
        let lhs = zeta_ref(&s, &ctx).unwrap().value;
        let rhs = functional_eq_rhs(&s, &ctx).unwrap();
        assert!(abs_f64(&lhs) < 1e-5);
        let diff = Complex::with_val(ctx.working_prec(), &lhs - &rhs);
        assert!(abs_f64(&diff) < 1e-20);
    }
}
