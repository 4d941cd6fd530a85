//! The contour decomposition made executable: the transformed integrand
//! F(u) = e^(su)/(e^(e^u) + 1), the straight-leg integral I1, the circle
//! integral I2 with its piecewise approximation I0 and the two transition
//! corrections, and the numerically measured Cauchy residual
//! |I1 + I2 - 2 pi i S_N|.

use crate::context::NumericContext;
use crate::error::{Error, Result};
use crate::expansions::{epsilon_v_at, residue_sum_at, EpsilonMode};
use crate::numeric::{self, gamma_raw};
use crate::quad::adaptive_quad;
use crate::strip::StripPoint;
use crate::zeta::zeta_at;
use rug::ops::Pow;
use rug::{Complex, Float};

/// Which transition region a correction belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CorrectionSite {
    HalfPi,
    ThreeHalfPi,
}

/// Full account of one Cauchy-theorem verification run.
#[derive(Debug, Clone)]
pub struct ContourBreakdown {
    pub s: StripPoint,
    pub n: u64,
    pub i1_closed: Complex,
    pub i1_numeric: Complex,
    pub i2_numeric: Complex,
    pub i0_closed: Complex,
    pub d_i2_half: Complex,
    pub d_i2_threehalf: Complex,
    pub i2_model: Complex,
    pub sn: Complex,
    pub cauchy_residual: Float,
}

/// Distance guard around the pole lattice of the integrand.
const POLE_GUARD: f64 = 1e-8;

/// F(u) = e^(su) / (e^(e^u) + 1), rejecting points within 1e-8 of a pole.
pub fn integrand_f(u: &Complex, s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    let z = s.to_complex(ctx);
    let r = integrand_f_at(u, &z, ctx)?;
    Ok(ctx.round_out(r))
}

pub(crate) fn integrand_f_at(u: &Complex, z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let re = u.real().to_f64();
    let im = u.imag().to_f64();
    // nearest lattice point: re = ln(pi (2n-1)), im = pi (1/2 + m)
    let m = (im / std::f64::consts::PI - 0.5).round();
    let im_near = std::f64::consts::PI * (0.5 + m);
    if re > -650.0 {
        let n_est = ((re.exp() / std::f64::consts::PI) + 1.0) / 2.0;
        let n_near = n_est.round().max(1.0);
        let re_near = (std::f64::consts::PI * (2.0 * n_near - 1.0)).ln();
        let dist = ((re - re_near).powi(2) + (im - im_near).powi(2)).sqrt();
        if dist < POLE_GUARD {
            return Err(Error::PoleProximity(format!(
                "u = {re}+{im}i is within {POLE_GUARD} of a pole of the integrand"
            )));
        }
    }
    let wp = ctx.working_prec();
    let inner = Complex::with_val(wp, u).exp();
    let denom = Complex::with_val(wp, inner.exp()) + 1u32;
    let num = Complex::with_val(wp, z * u).exp();
    let v = Complex::with_val(wp, num / denom);
    ctx.ensure_finite(&v, "integrand_f")?;
    Ok(v)
}

/// Default left cut: deep enough that the truncated tail of the straight
/// leg sits below the rounding level of the context.
pub fn default_lower_cut(s: &StripPoint, ctx: &NumericContext) -> Float {
    let wp = ctx.working_prec();
    let ln10 = Float::with_val(wp, 10).ln();
    -(ln10 * ctx.precision_digits()) / s.sigma_float(ctx)
}

/// Absolute tolerance handed to the quadrature layer.
fn quad_tolerance(ctx: &NumericContext) -> Float {
    let digits = ctx.precision_digits() - ctx.guard_digits() + 2;
    Float::with_val(ctx.working_prec(), 10u32).pow(-(digits as i32))
}

/// The straight legs of the contour in closed and numeric form.
///
/// Closed: -2 i e^(i s pi) sin(s pi) (1 - 2^(1-s)) gamma(s) zeta(s).
/// Numeric: (1 - e^(2 i s pi)) integral of F over [lower_cut, ln(2 N pi)].
pub fn i1_eval(
    n: u64,
    s: &StripPoint,
    ctx: &NumericContext,
    lower_cut: Option<&Float>,
) -> Result<(Complex, Complex)> {
    if n == 0 {
        return Err(Error::Domain("i1 requires N >= 1".into()));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);

    let default_cut = default_lower_cut(s, ctx);
    let cut = match lower_cut {
        Some(c) => {
            if *c > default_cut {
                return Err(Error::Domain(format!(
                    "lower_cut {} leaves a tail above rounding; need <= {}",
                    c.to_f64(),
                    default_cut.to_f64()
                )));
            }
            Float::with_val(wp, c)
        }
        None => default_cut,
    };

    // closed form
    let phase = numeric::exp_i_pi(&ctx.float(1), &z, ctx)?;
    let sin_s_pi = Complex::with_val(wp, &z * &ctx.pi()).sin();
    let one_minus_z = Complex::with_val(wp, 1u32 - &z);
    let two_pow = numeric::cpow_raw(&ctx.float(2), &one_minus_z, ctx)?;
    let dirichlet = Complex::with_val(wp, 1u32 - &two_pow);
    let gamma_term = gamma_raw(&z, ctx)?;
    let zeta_term = zeta_at(&z, ctx)?;
    let mut closed = Complex::with_val(wp, &phase * &sin_s_pi) * -2i32;
    closed = Complex::with_val(wp, &closed * &ctx.complex_i());
    closed = Complex::with_val(wp, &closed * &dirichlet);
    closed = Complex::with_val(wp, &closed * &gamma_term);
    closed = Complex::with_val(wp, &closed * &zeta_term);

    // numeric form
    let upper = (ctx.float_u64(2 * n) * ctx.pi()).ln();
    let two_phase = numeric::exp_i_pi(&ctx.float(2), &z, ctx)?;
    let loop_factor = Complex::with_val(wp, 1u32 - &two_phase);
    let factor_mag = Float::with_val(wp, loop_factor.abs_ref());

    let mut tol = quad_tolerance(ctx);
    if factor_mag > 1 {
        tol /= &factor_mag;
    }
    // dyadic boundaries resolve the long exponential left tail
    let mut forced = vec![ctx.float(0)];
    let mut mark = -1.0f64;
    while mark > cut.to_f64() {
        forced.push(ctx.float(mark));
        mark *= 2.0;
    }
    forced.push(ctx.float(1));
    let z_quad = z.clone();
    let f = move |x: &Float| {
        let u = Complex::with_val(wp, (Float::with_val(wp, x), Float::with_val(wp, 0)));
        integrand_f_at(&u, &z_quad, ctx)
    };
    let integral = adaptive_quad(&f, &cut, &upper, &tol, &forced, wp)?;
    let numeric_val = Complex::with_val(wp, &loop_factor * &integral);

    ctx.ensure_finite(&closed, "i1 closed")?;
    ctx.ensure_finite(&numeric_val, "i1 numeric")?;
    Ok((ctx.round_out(closed), ctx.round_out(numeric_val)))
}

/// Circle integrand h(y) = e^(i s y) / (e^(2 pi N (cos y + i sin y)) + 1).
fn circle_integrand(y: &Float, n: u64, z: &Complex, wp: u32) -> Result<Complex> {
    let cos_y = Float::with_val(wp, y.cos_ref());
    let sin_y = Float::with_val(wp, y.sin_ref());
    let two_pi_n = Float::with_val(wp, rug::float::Constant::Pi) * 2u32 * n;
    let w = Complex::with_val(
        wp,
        (
            Float::with_val(wp, &cos_y * &two_pi_n),
            Float::with_val(wp, &sin_y * &two_pi_n),
        ),
    );
    let denom = w.exp() + 1u32;
    let i_y = Complex::with_val(wp, (Float::with_val(wp, 0), Float::with_val(wp, y)));
    let num = Complex::with_val(wp, z * &i_y).exp();
    Ok(Complex::with_val(wp, num / denom))
}

/// i 2^s pi^s N^s with everything at working precision.
fn circle_prefactor(n: u64, z: &Complex, ctx: &NumericContext) -> Result<Complex> {
    let wp = ctx.working_prec();
    let two_pow = numeric::cpow_raw(&ctx.float(2), z, ctx)?;
    let pi_pow = numeric::cpow_raw(&ctx.pi(), z, ctx)?;
    let n_pow = numeric::cpow_raw(&ctx.float_u64(n), z, ctx)?;
    let mut pf = Complex::with_val(wp, &two_pow * &pi_pow);
    pf = Complex::with_val(wp, &pf * &n_pow);
    pf = Complex::with_val(wp, &pf * &ctx.complex_i());
    Ok(pf)
}

/// Direct adaptive quadrature of the circle integral with node refinement
/// forced around the two transition regions.
pub fn i2_quadrature(n: u64, s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    if n == 0 || n > 512 {
        return Err(Error::Domain(format!(
            "i2 quadrature supports 1 <= N <= 512, got {n}"
        )));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let prefactor = circle_prefactor(n, &z, ctx)?;
    let pf_mag = Float::with_val(wp, prefactor.abs_ref());

    let mut tol = quad_tolerance(ctx);
    tol /= pf_mag;
    // oscillation amplitude of e^(isy) for negative t
    let t = s.t_f64();
    if t < 0.0 {
        let boost = Float::with_val(wp, -2.0 * std::f64::consts::PI * t).exp();
        tol /= boost;
    }

    let pi_f64 = std::f64::consts::PI;
    let mut forced = vec![
        ctx.float(pi_f64 / 2.0),
        ctx.float(pi_f64),
        ctx.float(3.0 * pi_f64 / 2.0),
    ];
    let widths = [5.0 / n as f64, 40.0 / n as f64];
    for w in widths {
        if w < pi_f64 / 4.0 {
            for c in [pi_f64 / 2.0, 3.0 * pi_f64 / 2.0] {
                forced.push(ctx.float(c - w));
                forced.push(ctx.float(c + w));
            }
        }
    }

    let f = move |y: &Float| circle_integrand(y, n, &z, wp);
    let a = ctx.float(0);
    let b = ctx.pi() * 2u32;
    let integral = adaptive_quad(&f, &a, &b, &tol, &forced, wp)?;
    let r = Complex::with_val(wp, &prefactor * &integral);
    ctx.ensure_finite(&r, "i2_quadrature")?;
    Ok(ctx.round_out(r))
}

/// Closed form of the piecewise approximation:
/// 2^s pi^s N^s (e^(3 i s pi / 2) - e^(i s pi / 2)) / s.
pub fn i0_closed(n: u64, s: &StripPoint, ctx: &NumericContext) -> Result<Complex> {
    if n == 0 {
        return Err(Error::Domain("i0 requires N >= 1".into()));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let prefactor = circle_prefactor(n, &z, ctx)?; // i 2^s pi^s N^s
    let e_half = numeric::exp_i_pi(&ctx.float(0.5), &z, ctx)?;
    let e_three_half = numeric::exp_i_pi(&ctx.float(1.5), &z, ctx)?;
    let diff = Complex::with_val(wp, &e_three_half - &e_half);
    // divide out the i of the prefactor: i (...) / (i s) = (...) / s
    let i_z = Complex::with_val(wp, &z * &ctx.complex_i());
    let r = Complex::with_val(wp, &prefactor * &diff) / i_z;
    ctx.ensure_finite(&r, "i0_closed")?;
    Ok(ctx.round_out(r))
}

/// Transition correction at y = pi/2 or y = 3 pi/2:
/// +- i e^(c i s pi) 2^s pi^s N^s (i eps_v (s-1) / N^2), v = ln N.
pub fn delta_i2(
    n: u64,
    s: &StripPoint,
    which: CorrectionSite,
    mode: EpsilonMode,
    ctx: &NumericContext,
) -> Result<Complex> {
    if n < 2 {
        return Err(Error::Domain("transition corrections need N >= 2".into()));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let v = ctx.float_u64(n).ln();
    let eps = epsilon_v_at(&z, &v, mode, ctx)?;
    let prefactor = circle_prefactor(n, &z, ctx)?; // i 2^s pi^s N^s
    let c = match which {
        CorrectionSite::HalfPi => ctx.float(0.5),
        CorrectionSite::ThreeHalfPi => ctx.float(1.5),
    };
    let phase = numeric::exp_i_pi(&c, &z, ctx)?;
    let z_minus_1 = Complex::with_val(wp, &z - 1u32);
    let mut core = Complex::with_val(wp, &eps * &z_minus_1);
    core = Complex::with_val(wp, &core * &ctx.complex_i());
    core = Complex::with_val(wp, &core / &ctx.float_u64(n * n));
    if matches!(which, CorrectionSite::ThreeHalfPi) {
        core = -core;
    }
    let mut r = Complex::with_val(wp, &prefactor * &phase);
    r = Complex::with_val(wp, &r * &core);
    ctx.ensure_finite(&r, "delta_i2")?;
    Ok(ctx.round_out(r))
}

/// Evaluate every piece of the decomposition and the Cauchy residual
/// |I1 + I2 - 2 pi i S_N|.
pub fn cauchy_check(n: u64, s: &StripPoint, ctx: &NumericContext) -> Result<ContourBreakdown> {
    if n == 0 || n > 16 {
        return Err(Error::Domain(format!(
            "cauchy check runs the numeric contour for 1 <= N <= 16, got {n}"
        )));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let (i1_closed, i1_numeric) = i1_eval(n, s, ctx, None)?;
    let i2_numeric = i2_quadrature(n, s, ctx)?;
    let i0 = i0_closed(n, s, ctx)?;
    let (d_half, d_three_half) = if n >= 2 {
        (
            delta_i2(n, s, CorrectionSite::HalfPi, EpsilonMode::Exact, ctx)?,
            delta_i2(n, s, CorrectionSite::ThreeHalfPi, EpsilonMode::Exact, ctx)?,
        )
    } else {
        (ctx.complex_zero(), ctx.complex_zero())
    };
    let i2_model = Complex::with_val(wp, &i0 + &Complex::with_val(wp, &d_half + &d_three_half));
    let sn = residue_sum_at(n, &z, ctx)?;
    let two_pi_i_sn = Complex::with_val(wp, &sn * &ctx.complex_i()) * ctx.pi() * 2u32;
    let total = Complex::with_val(wp, &i1_numeric + &i2_numeric);
    let residual = Complex::with_val(wp, &total - &two_pi_i_sn);
    let cauchy_residual = Float::with_val(wp, residual.abs_ref());

    Ok(ContourBreakdown {
        s: s.clone(),
        n,
        i1_closed,
        i1_numeric,
        i2_numeric,
        i0_closed: i0,
        d_i2_half: d_half,
        d_i2_threehalf: d_three_half,
        i2_model: ctx.round_out(i2_model),
        sn: ctx.round_out(sn),
        cauchy_residual: ctx.round_out_f(cauchy_residual),
    })
}

/// Modulus of the neglected part of the half-pi transition correction when
/// the tau integration is restricted to |tau| <= ln N, together with its
/// printed bound (2 pi N)^sigma e^(2 pi |t|) / (2 N^5).
pub fn outside_interval_error(
    n: u64,
    s: &StripPoint,
    ctx: &NumericContext,
) -> Result<(Float, Float)> {
    if n < 5 {
        return Err(Error::Domain(
            "outside-interval error is defined for N >= 5".into(),
        ));
    }
    let wp = ctx.working_prec();
    let z = s.to_complex(ctx);
    let delta = ctx.float_u64(n).ln() / ctx.float_u64(n);
    let half_pi = ctx.pi() / 2u32;
    let pi = ctx.pi();

    // bound first; it also sets the quadrature tolerance scale
    let sigma = s.sigma_float(ctx);
    let two_pi_n = ctx.pi() * 2u32 * ctx.float_u64(n);
    let pow_part = Float::with_val(wp, (&two_pi_n).pow(&sigma));
    let t_abs = Float::with_val(wp, s.t_float(ctx).abs_ref());
    let exp_part = (ctx.pi() * 2u32 * t_abs).exp();
    let n5 = ctx.float_u64(n).pow(5u32);
    let bound = Float::with_val(wp, &pow_part * &exp_part) / (n5 * 2u32);

    let mut tol = Float::with_val(wp, &bound) / 100_000_000u32;
    let floor = quad_tolerance(ctx);
    if tol < floor {
        tol = floor;
    }

    // piece below the transition: h alone on [0, pi/2 - delta]
    let z1 = z.clone();
    let f_h = move |y: &Float| circle_integrand(y, n, &z1, wp);
    let a = ctx.float(0);
    let b1 = Float::with_val(wp, &half_pi - &delta);
    let part_one = adaptive_quad(&f_h, &a, &b1, &tol, &[], wp)?;

    // piece above it: h - e^(isy) on [pi/2 + delta, pi]
    let z2 = z.clone();
    let f_diff = move |y: &Float| {
        let h = circle_integrand(y, n, &z2, wp)?;
        let i_y = Complex::with_val(wp, (Float::with_val(wp, 0), Float::with_val(wp, y)));
        let g = Complex::with_val(wp, &z2 * &i_y).exp();
        Ok(Complex::with_val(wp, h - g))
    };
    let a2 = Float::with_val(wp, &half_pi + &delta);
    let part_two = adaptive_quad(&f_diff, &a2, &pi, &tol, &[], wp)?;

    let prefactor = circle_prefactor(n, &z, ctx)?; // i (2 pi N)^s = i 2^s pi^s N^s
    let total = Complex::with_val(wp, &part_one + &part_two);
    let value = Complex::with_val(wp, &prefactor * &total);
    let value_mag = Float::with_val(wp, value.abs_ref());

    Ok((ctx.round_out_f(value_mag), ctx.round_out_f(bound)))
}
