//! The paired order-N expansions of zeta(s) and their building blocks:
//! pole locations and residues of the transformed integrand, the residue
//! sum S_N, odd-integer power sums, the dilogarithmic correction factor
//! epsilon_v and the error factors it induces, and the two truncated
//! approximations `zeta_n_prime` / `zeta_n_dprime`.

use crate::context::NumericContext;
use crate::error::{Error, Result};
use crate::numeric::{self, cpow_u64, dilog_raw, gamma_raw};
use crate::strip::StripPoint;
use crate::zeta::zeta_ref;
use rug::{Complex, Float};

/// Truncation order N with its derived quantities L = ln(2 N pi),
/// v = ln N and delta = v / N.
#[derive(Debug, Clone)]
pub struct TruncationParams {
    pub n: u64,
    pub l: Float,
    pub v: Float,
    pub delta: Float,
}

impl TruncationParams {
    pub fn new(n: u64, ctx: &NumericContext) -> Result<Self> {
        if n == 0 {
            return Err(Error::Domain("truncation order must be >= 1".into()));
        }
        let wp = ctx.working_prec();
        let l = (ctx.float_u64(2 * n) * ctx.pi()).ln();
        let v = ctx.float_u64(n).ln();
        let delta = Float::with_val(wp, &v) / ctx.float_u64(n);
        Ok(Self { n, l, v, delta })
    }
}

/// How the correction factor epsilon_v is evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EpsilonMode {
    /// Exact dilogarithmic form.
    Exact,
    /// The asymptotic constant -1/24; this is the truncation used by the
    /// approximations `zeta_n_prime` / `zeta_n_dprime`.
    MinusOne24,
    /// -1/24 plus the first exponentially small correction.
    FirstCorrection,
}

/// The multiplicative error factor E = 1 + s(s-1) epsilon_v / N^2.
#[derive(Debug, Clone)]
pub struct ErrorFactor {
    pub epsilon_v: Complex,
    pub e: Complex,
    pub mode: EpsilonMode,
}

/// Joint evaluation of both truncated expansions against the reference.
#[derive(Debug, Clone)]
pub struct PairEvaluation {
    pub s: StripPoint,
    pub n: u64,
    pub zn_prime: Complex,
    pub zn_dprime: Complex,
    pub zeta: Complex,
    pub q1: Float,
}

// --- poles and residues -----------------------------------------------------

/// Pole of e^(su)/(e^(e^u) + 1) at u = ln(pi (2n-1)) + i pi (1/2 + m).
pub fn pole_location(n: u64, m: i64, ctx: &NumericContext) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("pole index n must be >= 1".into()));
    }
    let wp = ctx.working_prec();
    let re = (ctx.float_u64(2 * n - 1) * ctx.pi()).ln();
    let im = ctx.pi() * (Float::with_val(wp, m) + 0.5f32);
    Ok(ctx.round_out(ctx.complex(re, im)))
}

/// Residue of the integrand at `pole_location(n, m)`:
/// i (-1)^m (2n-1)^(s-1) pi^(s-1) e^(i (1/2 + m) s pi).
pub fn residue(n: u64, m: i64, s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("residue index n must be >= 1".into()));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let z_minus_1 = Complex::with_val(wp, &z - 1u32);
    let odd_pow = cpow_u64(2 * n - 1, &z_minus_1, ctx)?;
    let pi_pow = numeric::cpow_raw(&ctx.pi(), &z_minus_1, ctx)?;
    let half_plus_m = Float::with_val(wp, m) + 0.5f32;
    let phase = numeric::exp_i_pi(&half_plus_m, &z, ctx)?;
    let mut r = Complex::with_val(wp, &odd_pow * &pi_pow);
    r = Complex::with_val(wp, &r * &phase);
    r = Complex::with_val(wp, &r * &ctx.complex_i());
    if m.rem_euclid(2) == 1 {
        r = -r;
    }
    ctx.ensure_finite(&r, "residue")?;
    Ok(ctx.round_out(r))
}

/// Closed-form residue sum over n = 1..N and m in {0, 1}:
/// S_N = 2 sin(s pi / 2) e^(i s pi) pi^(s-1) sum (2n-1)^(s-1).
pub fn residue_sum(n_max: u64, s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = residue_sum_at(n_max, &z, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn residue_sum_at(n_max: u64, z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    if n_max == 0 {
        return Err(Error::Domain("residue sum requires N >= 1".into()));
    }
    let wp = ctx.working_prec();
    let z_minus_1 = Complex::with_val(wp, z - 1u32);
    let sum = odd_power_sum_at(n_max, &z_minus_1, ctx)?;
    let sin_half = numeric::sin_half_pi(z, ctx)?;
    let phase = numeric::exp_i_pi(&ctx.float(1), z, ctx)?;
    let pi_pow = numeric::cpow_raw(&ctx.pi(), &z_minus_1, ctx)?;
    let mut r = Complex::with_val(wp, &sin_half * &phase) * 2u32;
    r = Complex::with_val(wp, &r * &pi_pow);
    r = Complex::with_val(wp, &r * &sum);
    ctx.ensure_finite(&r, "residue_sum")?;
    Ok(r)
}

/// sum_{n=1}^{N} (2n-1)^a under the context's summation policy.
pub fn odd_power_sum(n_max: u64, a: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let r = odd_power_sum_at(n_max, a, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn odd_power_sum_at(
    n_max: u64,
    a: &Complex,
    ctx: &NumericContext,
) -> Result<Complex> {
    if n_max == 0 {
        return Err(Error::Domain("odd power sum requires N >= 1".into()));
    }
    let wp = ctx.working_prec();
    let a_local = Complex::with_val(wp, a);
    let sum = ctx.sum_complex(n_max, |i| {
        let base = ctx.float_u64(2 * i + 1);
        let ln = Float::with_val(wp, base.ln_ref());
        Complex::with_val(wp, &a_local * ln).exp()
    });
    ctx.ensure_finite(&sum, "odd_power_sum")?;
    Ok(sum)
}

// --- the correction factor epsilon_v ----------------------------------------

/// epsilon_v(s) for arbitrary v >= 0 in the requested mode. The exact form is
///
///   (dilog(e^(2 v pi) + 1) - dilog(e^(-2 v pi) + 1)) / (4 pi^2)
///   + v ln(e^(2 v pi) + 1) / pi - 3 v^2 / 2 + v^2 / ((e^(2 v pi) + 1)(1 - s)).
pub fn epsilon_v(
    s: &StripPoint,
    v: &Float,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = epsilon_v_at(&z, v, mode, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn epsilon_v_at(
    z: &Complex,
    v: &Float,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    if !v.is_finite() || (v.is_sign_negative() && !v.is_zero()) {
        return Err(Error::Domain(format!("epsilon_v requires v >= 0, got {v}")));
    }
    let wp = ctx.working_prec();
    match mode {
        EpsilonMode::MinusOne24 => Ok(ctx.complex_from_f(ctx.float(-1) / 24u32)),
        EpsilonMode::FirstCorrection => {
            let one_minus = Complex::with_val(wp, 1u32 - z);
            if one_minus.real().is_zero() && one_minus.imag().is_zero() {
                return Err(Error::Domain("epsilon_v undefined at s = 1".into()));
            }
            let two_v_pi = Float::with_val(wp, v) * 2u32 * ctx.pi();
            let decay = (-two_v_pi).exp();
            let inv_two_pi2 = ctx.float(1) / (ctx.pi().square() * 2u32);
            let v_over_pi = Float::with_val(wp, v) / ctx.pi();
            let v2 = Float::with_val(wp, v.square_ref());
            let complex_part = Complex::with_val(wp, &ctx.complex_from_f(v2) / &one_minus);
            let bracket = Complex::with_val(wp, &complex_part + &(inv_two_pi2 + v_over_pi));
            let base = ctx.float(-1) / 24u32;
            let r = Complex::with_val(wp, bracket * decay) + base;
            ctx.ensure_finite(&r, "epsilon_v")?;
            Ok(r)
        }
        EpsilonMode::Exact => {
            // raise precision to absorb the v^2-scale cancellation down to
            // the final O(1/24) value
            let v2_scale = v.to_f64().powi(2).max(1.0) * 100.0;
            let extra = v2_scale.log10().ceil() as u32 + 2;
            let ectx = ctx.raised(extra);
            let ep = ectx.working_prec();
            let two_v_pi = Float::with_val(ep, v) * 2u32 * ectx.pi();
            if two_v_pi.to_f64() > 1e18 {
                return Err(Error::Range(
                    "e^(2 v pi) exceeds the supported exponent range; use an asymptotic mode"
                        .into(),
                ));
            }
            let x_big = Float::with_val(ep, two_v_pi.exp_ref()); // e^(2 v pi)
            let x_small = Float::with_val(ep, (-two_v_pi).exp_ref()); // e^(-2 v pi)
            let d_big = dilog_raw(&(x_big.clone() + 1u32), &ectx)?;
            let d_small = dilog_raw(&(x_small + 1u32), &ectx)?;
            let pi2 = ectx.pi().square();
            let quarter = (d_big - d_small) / (pi2 * 4u32);
            let log_term = (x_big.clone() + 1u32).ln() * Float::with_val(ep, v) / ectx.pi();
            let v2 = Float::with_val(ep, v.square_ref());
            let three_half_v2 = Float::with_val(ep, &v2) * 3u32 / 2u32;
            let z_hi = Complex::with_val(ep, z);
            let one_minus = Complex::with_val(ep, 1u32 - &z_hi);
            if one_minus.real().is_zero() && one_minus.imag().is_zero() {
                return Err(Error::Domain("epsilon_v undefined at s = 1".into()));
            }
            let tail_den = Complex::with_val(ep, &one_minus * &(x_big + 1u32));
            let tail = Complex::with_val(ep, &ectx.complex_from_f(v2) / &tail_den);
            let real_part = quarter + log_term - three_half_v2;
            let r = Complex::with_val(ep, &tail + &real_part);
            let out = Complex::with_val(wp, &r);
            ctx.ensure_finite(&out, "epsilon_v")?;
            Ok(out)
        }
    }
}

// --- error factors and the truncated expansions ------------------------------

/// E = 1 + s(s-1) epsilon_v(s) / N^2 with v = ln N.
pub fn error_factor(
    n: u64,
    s: &StripPoint,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<ErrorFactor> {
    let z = s.to_complex(ctx);
    let (eps, e) = error_factor_at(n, &z, mode, ctx)?;
    Ok(ErrorFactor {
        epsilon_v: ctx.round_out(eps),
        e: ctx.round_out(e),
        mode,
    })
}

/// (epsilon_v, E) at working precision with epsilon evaluated at `z_eps`
/// (callers pass s or 1-s); the s(s-1) prefactor is always taken at s.
fn error_factor_parts(
    n: u64,
    z_s: &Complex,
    z_eps: &Complex,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<(Complex, Complex)> {
    if n == 0 {
        return Err(Error::Domain("error factor requires N >= 1".into()));
    }
    let wp = ctx.working_prec();
    let v = ctx.float_u64(n).ln();
    let eps = epsilon_v_at(z_eps, &v, mode, ctx)?;
    let z_minus_1 = Complex::with_val(wp, z_s - 1u32);
    let prefactor = Complex::with_val(wp, z_s * &z_minus_1);
    let n2 = ctx.float_u64(n).square();
    let e = Complex::with_val(wp, &prefactor * &eps) / n2 + 1u32;
    ctx.ensure_finite(&e, "error_factor")?;
    Ok((eps, e))
}

fn error_factor_at(
    n: u64,
    z: &Complex,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<(Complex, Complex)> {
    error_factor_parts(n, z, z, mode, ctx)
}

/// Extra decimal digits carried while assembling the truncated expansions,
/// whose numerators cancel roughly log10(N) + 0.2 |t| digits.
fn expansion_raise(n: u64, z: &Complex) -> u32 {
    let log_n = (n as f64).log10().ceil().max(0.0) as u32;
    let t_pen = (z.imag().to_f64().abs() * 0.2).ceil() as u32;
    log_n + t_pen + 2
}

/// The order-N approximation built from the forward form of the expansion:
/// pi^s (-2^(s-1) N^s Xi_N(s) + s sum (2n-1)^(s-1))
///   / (cos(s pi / 2)(-1 + 2^(1-s)) gamma(s+1)).
pub fn zeta_n_prime(
    n: u64,
    s: &StripPoint,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = zeta_n_prime_at(n, &z, mode, ctx)?;
    Ok(ctx.round_out(r))
}

pub fn zeta_n_prime_at(
    n: u64,
    z: &Complex,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    check_strip(z)?;
    if n == 0 {
        return Err(Error::Domain("zeta_n_prime requires N >= 1".into()));
    }
    let rctx = ctx.raised(expansion_raise(n, z));
    let wp = rctx.working_prec();
    let z = Complex::with_val(wp, z);

    let (_, xi) = error_factor_at(n, &z, mode, &rctx)?;
    let z_minus_1 = Complex::with_val(wp, &z - 1u32);
    let sum = odd_power_sum_at(n, &z_minus_1, &rctx)?;
    let two_pow = numeric::cpow_raw(&rctx.float(2), &z_minus_1, &rctx)?; // 2^(s-1)
    let n_pow = cpow_u64(n, &z, &rctx)?; // N^s
    let pi_pow = numeric::cpow_raw(&rctx.pi(), &z, &rctx)?; // pi^s

    let leading = Complex::with_val(wp, Complex::with_val(wp, &two_pow * &n_pow) * &xi);
    let sum_term = Complex::with_val(wp, &z * &sum);
    let numerator = Complex::with_val(wp, &pi_pow * &(sum_term - leading));

    let cos_half = numeric::cos_half_pi(&z, &rctx)?;
    let one_minus_z = Complex::with_val(wp, 1u32 - &z);
    let two_pow_rev = numeric::cpow_raw(&rctx.float(2), &one_minus_z, &rctx)?; // 2^(1-s)
    let dir_factor = Complex::with_val(wp, &two_pow_rev - 1u32); // -1 + 2^(1-s)
    let z_plus_1 = Complex::with_val(wp, &z + 1u32);
    let gamma_term = gamma_raw(&z_plus_1, &rctx)?;
    let denominator = Complex::with_val(
        wp,
        Complex::with_val(wp, &cos_half * &dir_factor) * &gamma_term,
    );

    let r = numerator / denominator;
    ctx.ensure_finite(&r, "zeta_n_prime")?;
    Ok(Complex::with_val(ctx.working_prec(), &r))
}

/// The order-N approximation built from the reflected form:
/// (-N^(1-s) Xi_N(1-s) + 2^s (1-s) sum (2n-1)^(-s)) / ((-1 + 2^s)(1-s)).
pub fn zeta_n_dprime(
    n: u64,
    s: &StripPoint,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = zeta_n_dprime_at(n, &z, mode, ctx)?;
    Ok(ctx.round_out(r))
}

pub fn zeta_n_dprime_at(
    n: u64,
    z: &Complex,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    check_strip(z)?;
    if n == 0 {
        return Err(Error::Domain("zeta_n_dprime requires N >= 1".into()));
    }
    let rctx = ctx.raised(expansion_raise(n, z));
    let wp = rctx.working_prec();
    let z = Complex::with_val(wp, z);
    let one_minus_z = Complex::with_val(wp, 1u32 - &z);

    // Xi_N(1-s): epsilon at 1-s; its prefactor (1-s)(-s) equals s(s-1)
    let (_, xi_rev) = error_factor_parts(n, &z, &one_minus_z, mode, &rctx)?;
    let neg_z = Complex::with_val(wp, -&z);
    let sum = odd_power_sum_at(n, &neg_z, &rctx)?;
    let n_pow_rev = cpow_u64(n, &one_minus_z, &rctx)?; // N^(1-s)
    let two_pow = numeric::cpow_raw(&rctx.float(2), &z, &rctx)?; // 2^s

    let sum_term = Complex::with_val(
        wp,
        Complex::with_val(wp, &two_pow * &one_minus_z) * &sum,
    );
    let leading = Complex::with_val(wp, &n_pow_rev * &xi_rev);
    let numerator = sum_term - leading;

    let dir_factor = Complex::with_val(wp, &two_pow - 1u32); // -1 + 2^s
    let denominator = Complex::with_val(wp, &dir_factor * &one_minus_z);

    let r = numerator / denominator;
    ctx.ensure_finite(&r, "zeta_n_dprime")?;
    Ok(Complex::with_val(ctx.working_prec(), &r))
}

fn check_strip(z: &Complex) -> Result<()> {
    let sig = z.real().to_f64();
    if sig <= 0.0 || sig >= 1.0 {
        return Err(Error::Domain(format!(
            "expansion point must lie in the open strip, got Re(s) = {sig}"
        )));
    }
    Ok(())
}

/// Consistency of the error function solved from both expansion routes.
///
/// Solves E from the forward expansion with the reference zeta, and again
/// from the reflected expansion after s -> 1-s using the functional
/// equation; returns |E_forward - E_reflected|, which vanishes identically.
pub fn error_function_consistency(
    n: u64,
    s: &StripPoint,
    ctx: &NumericContext,
) -> Result<Float> {
    if n == 0 {
        return Err(Error::Domain(
            "error function consistency requires N >= 1".into(),
        ));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let zeta_s = zeta_ref(s, ctx)?.value;
    let zeta_s = Complex::with_val(wp, &zeta_s);
    let z_minus_1 = Complex::with_val(wp, &z - 1u32);
    let sum = odd_power_sum_at(n, &z_minus_1, ctx)?;
    let pi_pow = numeric::cpow_raw(&ctx.pi(), &z, ctx)?;
    let cos_half = numeric::cos_half_pi(&z, ctx)?;
    let one_minus_z = Complex::with_val(wp, 1u32 - &z);
    let two_pow_rev = numeric::cpow_raw(&ctx.float(2), &one_minus_z, ctx)?;
    let dir_factor = Complex::with_val(wp, &two_pow_rev - 1u32);
    let z_plus_1 = Complex::with_val(wp, &z + 1u32);
    let gamma_term = gamma_raw(&z_plus_1, ctx)?;
    let two_pow = numeric::cpow_raw(&ctx.float(2), &z_minus_1, ctx)?; // 2^(s-1)
    let n_pow = cpow_u64(n, &z, ctx)?;

    // forward route:
    // E = (s sum - zeta cos ( -1 + 2^(1-s) ) gamma / pi^s) / (2^(s-1) N^s)
    let denom_block = Complex::with_val(
        wp,
        Complex::with_val(wp, &cos_half * &dir_factor) * &gamma_term,
    );
    let zeta_block = Complex::with_val(wp, &zeta_s * &denom_block);
    let zeta_over_pi = Complex::with_val(wp, &zeta_block / &pi_pow);
    let s_sum = Complex::with_val(wp, &z * &sum);
    let e_forward = Complex::with_val(wp, &s_sum - &zeta_over_pi)
        / Complex::with_val(wp, &two_pow * &n_pow);

    // reflected route after s -> 1-s:
    // E = s (2^(1-s) sum - zeta(1-s) (-1 + 2^(1-s))) / N^s
    let sin_half = numeric::sin_half_pi(&z, ctx)?;
    let pi_pow_m1 = numeric::cpow_raw(&ctx.pi(), &z_minus_1, ctx)?;
    let gamma_rev = gamma_raw(&one_minus_z, ctx)?;
    let fe_factor = Complex::with_val(
        wp,
        Complex::with_val(wp, numeric::cpow_raw(&ctx.float(2), &z, ctx)? * &pi_pow_m1)
            * Complex::with_val(wp, &sin_half * &gamma_rev),
    );
    let zeta_reflected = Complex::with_val(wp, &zeta_s / &fe_factor);
    let bracket = Complex::with_val(
        wp,
        Complex::with_val(wp, &two_pow_rev * &sum)
            - Complex::with_val(wp, &zeta_reflected * &dir_factor),
    );
    let e_reflected = Complex::with_val(wp, &z * &bracket) / n_pow;

    let diff = Complex::with_val(wp, &e_forward - &e_reflected);
    let modulus = Float::with_val(wp, diff.abs_ref());
    Ok(ctx.round_out_f(modulus))
}

/// Evaluate both expansions and the reference at the same point.
pub fn evaluate_pair(
    n: u64,
    s: &StripPoint,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<PairEvaluation> {
    let zn_prime = zeta_n_prime(n, s, mode, ctx)?;
    let zn_dprime = zeta_n_dprime(n, s, mode, ctx)?;
    let zeta = zeta_ref(s, ctx)?.value;
    let wp = ctx.working_prec();
    let dp_abs = Float::with_val(wp, zn_dprime.abs_ref());
    if dp_abs.is_zero() {
        return Err(Error::Division(
            "zeta_n_dprime vanished; quotient undefined".into(),
        ));
    }
    let q1 = Float::with_val(wp, zn_prime.abs_ref()) / dp_abs;
    Ok(PairEvaluation {
        s: s.clone(),
        n,
        zn_prime,
        zn_dprime,
        zeta,
        q1: ctx.round_out_f(q1),
    })
}
