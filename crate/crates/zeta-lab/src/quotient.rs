//! Quotient analysis of the paired expansions: the modulus quotient Q1,
//! the closed form of the difference quotient with its critical-line
//! identities, leading-term differences, second-order remainder constants
//! and the polygamma tail sum that controls the telescoping argument.

use crate::context::NumericContext;
use crate::error::{Error, Result};
use crate::expansions::{zeta_n_dprime_at, zeta_n_prime_at, EpsilonMode};
use crate::numeric::{self, cpow_u64, gamma_raw};
use crate::strip::StripPoint;
use crate::zeta::{bernoulli, zeta_ref};
use rug::ops::Pow;
use rug::{Complex, Float};

/// Which of the two expansions a leading-difference request refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DiffSide {
    Prime,
    Dprime,
}

/// Everything measured about the difference quotient at one (N, s).
#[derive(Debug, Clone)]
pub struct QuotientReport {
    pub s: StripPoint,
    pub n: u64,
    pub q1: Float,
    pub diff_prime: Complex,
    pub diff_dprime: Complex,
    /// diff_prime / diff_dprime as evaluated.
    pub measured: Complex,
    /// The closed-form value of the same quotient.
    pub closed_form: Complex,
    /// |measured - closed_form|.
    pub residual: Float,
}

/// Second-order constants of the two telescoping expansions and the
/// spectral factor K(s) = (s-2)(s-3)/((s+2)(s+1)).
#[derive(Debug, Clone)]
pub struct RemainderConstants {
    pub c_prime: Complex,
    pub c_dprime: Complex,
    pub k_of_s: Complex,
}

/// Critical-line identity residuals, all relative.
#[derive(Debug, Clone)]
pub struct CriticalLineCheck {
    /// | value - 1 | for the full expression.
    pub deviation: Float,
    /// | sqrt(pi/cosh(pi t)) / |gamma(1/2+it)| - 1 |.
    pub gamma_form_deviation: Float,
    /// cosine-factor formula residual.
    pub cos_factor: Float,
    /// |4^s - 8^s| formula residual.
    pub pow_factor: Float,
    /// |-2 + 2^s| formula residual.
    pub two_factor: Float,
}

// --- Q1 ---------------------------------------------------------------------

/// |zeta_n_prime / zeta_n_dprime| at s.
pub fn q1(n: u64, s: &StripPoint, mode: EpsilonMode, ctx: &NumericContext) -> Result<Float> {
    let z = s.to_complex(ctx);
    q1_at(n, &z, mode, ctx)
}

pub fn q1_at(n: u64, z: &Complex, mode: EpsilonMode, ctx: &NumericContext) -> Result<Float> {
    let wp = ctx.working_prec();
    let zp = zeta_n_prime_at(n, z, mode, ctx)?;
    let zd = zeta_n_dprime_at(n, z, mode, ctx)?;
    let zd_abs = Float::with_val(wp, zd.abs_ref());
    if zd_abs.is_zero() {
        return Err(Error::Division(
            "zeta_n_dprime vanished at the requested point".into(),
        ));
    }
    let q = Float::with_val(wp, zp.abs_ref()) / zd_abs;
    Ok(ctx.round_out_f(q))
}

// --- the closed-form difference quotient -------------------------------------

/// Closed form of (zeta_n_prime - zeta)/(zeta_n_dprime - zeta):
/// N^(2s-1) pi^s (8^s - 4^s) / (2 cos(s pi/2)(-2 + 2^s) gamma(s-3)(s+2)(s+1)s).
pub fn closed_quotient(n: u64, s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = closed_quotient_at(n, &z, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn closed_quotient_at(n: u64, z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("closed quotient requires N >= 1".into()));
    }
    let wp = ctx.working_prec();
    let two_z_minus_1 = Complex::with_val(wp, z * 2u32) - 1u32;
    let n_pow = cpow_u64(n, &two_z_minus_1, ctx)?;
    let pi_pow = numeric::cpow_raw(&ctx.pi(), z, ctx)?;
    let four_pow = numeric::cpow_raw(&ctx.float(4), z, ctx)?;
    let eight_pow = numeric::cpow_raw(&ctx.float(8), z, ctx)?;
    let pow_diff = Complex::with_val(wp, &eight_pow - &four_pow); // -4^s + 8^s
    let cos_half = numeric::cos_half_pi(z, ctx)?;
    let two_pow = numeric::cpow_raw(&ctx.float(2), z, ctx)?;
    let two_fac = Complex::with_val(wp, &two_pow - 2u32);
    let z_minus_3 = Complex::with_val(wp, z - 3u32);
    let gam = gamma_raw(&z_minus_3, ctx)?;
    let z_plus_2 = Complex::with_val(wp, z + 2u32);
    let z_plus_1 = Complex::with_val(wp, z + 1u32);

    let mut numer = Complex::with_val(wp, &n_pow * &pi_pow);
    numer = Complex::with_val(wp, &numer * &pow_diff);
    let mut denom = Complex::with_val(wp, &cos_half * &two_fac);
    denom = Complex::with_val(wp, &denom * &gam);
    denom = Complex::with_val(wp, &denom * &z_plus_2);
    denom = Complex::with_val(wp, &denom * &z_plus_1);
    denom = Complex::with_val(wp, &denom * z) * 2u32;
    let r = numer / denom;
    ctx.ensure_finite(&r, "closed_quotient")?;
    Ok(r)
}

/// Extra digits needed to resolve both truncation differences at context
/// accuracy, estimated from their remainder magnitudes.
fn cancellation_raise(n: u64, sigma: f64) -> u32 {
    let log_n = (n as f64).log10();
    let worst = (3.0 - sigma).max(2.0 + sigma);
    (worst * log_n).ceil() as u32 + 5
}

/// Measure the difference quotient directly and compare with its closed
/// form. Retries once at doubled raise when cancellation eats the digits.
pub fn difference_quotient(
    n: u64,
    s: &StripPoint,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<QuotientReport> {
    if n == 0 {
        return Err(Error::Domain("difference quotient requires N >= 1".into()));
    }
    let base_raise = cancellation_raise(n, s.sigma_f64());
    match difference_quotient_with_raise(n, s, mode, ctx, base_raise) {
        Err(Error::Precision { .. }) => {
            difference_quotient_with_raise(n, s, mode, ctx, 2 * base_raise)
        }
        other => other,
    }
}

fn difference_quotient_with_raise(
    n: u64,
    s: &StripPoint,
    mode: EpsilonMode,
    ctx: &NumericContext,
    raise: u32,
) -> Result<QuotientReport> {
    let rctx = ctx.raised(raise);
    let wp = rctx.working_prec();
    let z = s.to_complex(&rctx);

    let zp = zeta_n_prime_at(n, &z, mode, &rctx)?;
    let zd = zeta_n_dprime_at(n, &z, mode, &rctx)?;
    let reference = zeta_ref(s, &rctx)?.value;
    let reference = Complex::with_val(wp, &reference);

    let diff_prime = Complex::with_val(wp, &zp - &reference);
    let diff_dprime = Complex::with_val(wp, &zd - &reference);

    // the differences must clear the rounding floor of the raised context
    let ref_mag = Float::with_val(wp, reference.abs_ref());
    let floor = ref_mag
        * Float::with_val(wp, 10u32).pow(-(rctx.precision_digits() as i32))
        * Float::with_val(wp, 10u32).pow(ctx.guard_digits() as i32);
    let dd_mag = Float::with_val(wp, diff_dprime.abs_ref());
    if dd_mag < floor || dd_mag.is_zero() {
        return Err(Error::Precision {
            context: format!("difference quotient cancellation at N={n}"),
            needed_digits: ctx.precision_digits() + 2 * raise,
        });
    }

    let measured = Complex::with_val(wp, &diff_prime / &diff_dprime);
    let closed = closed_quotient_at(n, &z, ctx)?;
    let residual = Float::with_val(
        wp,
        Complex::with_val(wp, &measured - &closed).abs_ref(),
    );

    let q1_val = Float::with_val(wp, zp.abs_ref()) / Float::with_val(wp, zd.abs_ref());
    Ok(QuotientReport {
        s: s.clone(),
        n,
        q1: ctx.round_out_f(q1_val),
        diff_prime: ctx.round_out(diff_prime),
        diff_dprime: ctx.round_out(diff_dprime),
        measured: ctx.round_out(measured),
        closed_form: ctx.round_out(closed),
        residual: ctx.round_out_f(residual),
    })
}

// --- leading differences and remainder constants ------------------------------

/// Closed-form leading term of the step difference between consecutive
/// truncation orders:
/// prime:  (7/11520) pi^s 4^s N^(s-5) / (cos(s pi/2)(-2+2^s) gamma(s-4)),
/// dprime: -(7/5760) N^(-s-4) s(s+1)(s+2)(s+3) / (-1 + 2^s).
pub fn leading_diff(
    n: u64,
    s: &StripPoint,
    which: DiffSide,
    ctx: &NumericContext,
) -> Result<Complex> {
    if n < 10 {
        return Err(Error::Domain("leading difference needs N >= 10".into()));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let r = match which {
        DiffSide::Prime => {
            let pi_pow = numeric::cpow_raw(&ctx.pi(), &z, ctx)?;
            let four_pow = numeric::cpow_raw(&ctx.float(4), &z, ctx)?;
            let z_minus_5 = Complex::with_val(wp, &z - 5u32);
            let n_pow = cpow_u64(n, &z_minus_5, ctx)?;
            let cos_half = numeric::cos_half_pi(&z, ctx)?;
            let two_pow = numeric::cpow_raw(&ctx.float(2), &z, ctx)?;
            let two_fac = Complex::with_val(wp, &two_pow - 2u32);
            let z_minus_4 = Complex::with_val(wp, &z - 4u32);
            let gam = gamma_raw(&z_minus_4, ctx)?;
            let mut numer = Complex::with_val(wp, &pi_pow * &four_pow);
            numer = Complex::with_val(wp, &numer * &n_pow) * 7u32;
            let mut denom = Complex::with_val(wp, &cos_half * &two_fac);
            denom = Complex::with_val(wp, &denom * &gam) * 11520u32;
            numer / denom
        }
        DiffSide::Dprime => {
            let neg = Complex::with_val(wp, -(Complex::with_val(wp, &z + 4u32)));
            let n_pow = cpow_u64(n, &neg, ctx)?; // N^(-s-4)
            let z_plus_1 = Complex::with_val(wp, &z + 1u32);
            let z_plus_2 = Complex::with_val(wp, &z + 2u32);
            let z_plus_3 = Complex::with_val(wp, &z + 3u32);
            let two_pow = numeric::cpow_raw(&ctx.float(2), &z, ctx)?;
            let two_fac = Complex::with_val(wp, &two_pow - 1u32);
            let mut numer = Complex::with_val(wp, &n_pow * &z);
            numer = Complex::with_val(wp, &numer * &z_plus_1);
            numer = Complex::with_val(wp, &numer * &z_plus_2);
            numer = Complex::with_val(wp, &numer * &z_plus_3) * 7u32;
            let denom = Complex::with_val(wp, &two_fac * &ctx.float_u64(5760));
            -(numer / denom)
        }
    };
    ctx.ensure_finite(&r, "leading_diff")?;
    Ok(ctx.round_out(r))
}

/// The second-order constants of the two step differences and K(s).
pub fn remainder_constants(s: &StripPoint, ctx: &NumericContext) -> Result<RemainderConstants> {
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);

    // c' = -(7/23040) pi^s 2^s / (cos(s pi/2)(-1 + 2^(1-s)) gamma(s-5))
    let pi_pow = numeric::cpow_raw(&ctx.pi(), &z, ctx)?;
    let two_pow = numeric::cpow_raw(&ctx.float(2), &z, ctx)?;
    let cos_half = numeric::cos_half_pi(&z, ctx)?;
    let one_minus_z = Complex::with_val(wp, 1u32 - &z);
    let two_rev = numeric::cpow_raw(&ctx.float(2), &one_minus_z, ctx)?;
    let dir = Complex::with_val(wp, &two_rev - 1u32);
    let z_minus_5 = Complex::with_val(wp, &z - 5u32);
    let gam5 = gamma_raw(&z_minus_5, ctx)?;
    let mut numer = Complex::with_val(wp, &pi_pow * &two_pow) * 7u32;
    numer = -numer;
    let mut denom = Complex::with_val(wp, &cos_half * &dir);
    denom = Complex::with_val(wp, &denom * &gam5) * 23040u32;
    let c_prime = Complex::with_val(wp, numer / denom);

    // c'' = (7/11520) s(s+1)(s+2)(s+3)(s+4) / (-1 + 2^s)
    let mut poly = Complex::with_val(wp, &z);
    for k in 1..=4u32 {
        let f = Complex::with_val(wp, &z + k);
        poly = Complex::with_val(wp, &poly * &f);
    }
    let two_fac = Complex::with_val(wp, &two_pow - 1u32);
    let c_dprime =
        Complex::with_val(wp, Complex::with_val(wp, poly * 7u32) / &two_fac) / 11520u32;

    // K(s) = (s-2)(s-3) / ((s+2)(s+1))
    let z_m2 = Complex::with_val(wp, &z - 2u32);
    let z_m3 = Complex::with_val(wp, &z - 3u32);
    let z_p2 = Complex::with_val(wp, &z + 2u32);
    let z_p1 = Complex::with_val(wp, &z + 1u32);
    let k_of_s = Complex::with_val(wp, &z_m2 * &z_m3) / Complex::with_val(wp, &z_p2 * &z_p1);

    ctx.ensure_finite(&c_prime, "c_prime")?;
    ctx.ensure_finite(&c_dprime, "c_dprime")?;
    Ok(RemainderConstants {
        c_prime: ctx.round_out(c_prime),
        c_dprime: ctx.round_out(c_dprime),
        k_of_s: ctx.round_out(k_of_s),
    })
}

// --- critical-line identity ----------------------------------------------------

/// Evaluate the modulus identity at s = 1/2 + it and each of its printed
/// factor formulas. All residuals are relative.
pub fn critical_line_identity(t: f64, ctx: &NumericContext) -> Result<CriticalLineCheck> {
    let wp = ctx.working_prec();
    let t_f = ctx.float(t);
    let z = ctx.complex(ctx.float(0.5), ctx.float(t));

    let pi_pow = numeric::cpow_raw(&ctx.pi(), &z, ctx)?;
    let four_pow = numeric::cpow_raw(&ctx.float(4), &z, ctx)?;
    let eight_pow = numeric::cpow_raw(&ctx.float(8), &z, ctx)?;
    let pow_diff = Complex::with_val(wp, &four_pow - &eight_pow);
    let cos_half = numeric::cos_half_pi(&z, ctx)?;
    let two_pow = numeric::cpow_raw(&ctx.float(2), &z, ctx)?;
    let two_fac = Complex::with_val(wp, &two_pow - 2u32);
    let gam = gamma_raw(&z, ctx)?;

    let numer = Complex::with_val(wp, &pi_pow * &pow_diff);
    let mut denom = Complex::with_val(wp, &cos_half * &two_fac);
    denom = Complex::with_val(wp, &denom * &gam);
    let expr = Complex::with_val(wp, numer / denom);
    let value = Float::with_val(wp, expr.abs_ref()) / 2u32;
    let deviation = (value - 1u32).abs();

    // middle member: sqrt(pi / cosh(pi t)) / |gamma(1/2 + it)|
    let cosh_pit = Float::with_val(wp, &t_f * &ctx.pi()).cosh();
    let sqrt_part = (ctx.pi() / cosh_pit).sqrt();
    let gamma_member = sqrt_part / Float::with_val(wp, gam.abs_ref());
    let gamma_form_deviation = (gamma_member - 1u32).abs();

    // factor formulas
    let ln2 = ctx.float(2).ln();
    let t_ln2_cos = Float::with_val(wp, &t_f * &ln2).cos();
    let sqrt2 = ctx.float(2).sqrt();

    let cos_expect =
        Float::with_val(wp, &t_f * &ctx.pi()).cosh().sqrt() * &sqrt2 / 2u32;
    let cos_meas = Float::with_val(wp, cos_half.abs_ref());
    let cos_factor = (cos_meas / cos_expect - 1u32).abs();

    let pow_expect =
        (Float::with_val(wp, 3u32) - Float::with_val(wp, &sqrt2 * &t_ln2_cos) * 2u32)
            .sqrt()
            * 2u32;
    let pow_meas = Float::with_val(wp, pow_diff.abs_ref());
    let pow_factor = (pow_meas / pow_expect - 1u32).abs();

    let two_expect =
        (Float::with_val(wp, 6u32) - Float::with_val(wp, &sqrt2 * &t_ln2_cos) * 4u32).sqrt();
    let two_meas = Float::with_val(wp, two_fac.abs_ref());
    let two_factor = (two_meas / two_expect - 1u32).abs();

    Ok(CriticalLineCheck {
        deviation: ctx.round_out_f(deviation),
        gamma_form_deviation: ctx.round_out_f(gamma_form_deviation),
        cos_factor: ctx.round_out_f(cos_factor),
        pow_factor: ctx.round_out_f(pow_factor),
        two_factor: ctx.round_out_f(two_factor),
    })
}

// --- polygamma tail -----------------------------------------------------------

/// Partial sum sum_{j=0}^{k} 1/(N+j)^5 and its k -> infinity limit,
/// the limit computed by Euler-Maclaurin on the Hurwitz-type tail.
pub fn tail_polygamma(n: u64, k_terms: u64, ctx: &NumericContext) -> Result<(Float, Float)> {
    if n < 2 {
        return Err(Error::Domain("tail sum requires N >= 2".into()));
    }
    let mut partial = ctx.float(0);
    for j in 0..=k_terms {
        let term = ctx.float(1) / ctx.float_u64(n + j).pow(5u32);
        partial += term;
    }

    let limit = hurwitz_fifth_power_tail(n, ctx)?;
    Ok((ctx.round_out_f(partial), ctx.round_out_f(limit)))
}

/// sum_{j=0}^{inf} (a + j)^-5 by direct terms plus Euler-Maclaurin closure.
fn hurwitz_fifth_power_tail(a: u64, ctx: &NumericContext) -> Result<Float> {
    let wp = ctx.working_prec();
    let wd = ctx.working_digits();
    let split = a + wd as u64 + 10;
    let mut acc = ctx.float(0);
    for j in a..split {
        acc += ctx.float(1) / ctx.float_u64(j).pow(5u32);
    }
    let m = ctx.float_u64(split);
    // integral and half terms: M^-4/4 + M^-5/2
    acc += Float::with_val(wp, (&m).pow(&ctx.float(-4))) / 4u32;
    acc += Float::with_val(wp, (&m).pow(&ctx.float(-5))) / 2u32;
    // Bernoulli corrections with poch(5, 2r-1) = (2r+3)!/4!
    let target = Float::with_val(wp, 10u32).pow(-(wd as i32 + 2));
    let m_sq = Float::with_val(wp, m.square_ref());
    let mut m_pow = Float::with_val(wp, (&m).pow(&ctx.float(-4))); // M^(-5-2r+1), r=1 next
    let mut poch = ctx.float(5); // 5*6*...*(2r+3), starts at r=1 as 5
    let mut factorial = ctx.float(2); // (2r)!
    for r in 1..200usize {
        if r > 1 {
            poch *= (2 * r as u32 + 1) * (2 * r as u32 + 2);
            factorial *= (2 * r as u32 - 1) * (2 * r as u32);
        }
        m_pow = Float::with_val(wp, &m_pow / &m_sq);
        let b = ctx.float_from_rational(&bernoulli(2 * r));
        let term = Float::with_val(wp, &b * &poch) / &factorial * &m_pow;
        let done = term.clone().abs() < target;
        acc += term;
        if done {
            return Ok(acc);
        }
    }
    Err(Error::Budget(
        "polygamma tail corrections did not converge".into(),
    ))
}
