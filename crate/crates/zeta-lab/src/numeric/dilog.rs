//! Real dilogarithm in the integral convention
//! dilog(x) = -∫_1^x ln(t)/(t-1) dt, defined here for x > 0.
//!
//! Arguments above 2 are reduced through the inversion identity
//! dilog(x) + dilog(1/x) = -ln(x)^2/2; the remaining range is mapped onto
//! the power series of Li2 with ratio at most 1/2.

use crate::context::NumericContext;
use crate::error::{Error, Result};
use rug::Float;

/// dilog(x) for x > 0.
pub fn dilog_as(x: &Float, ctx: &NumericContext) -> Result<Float> {
    let r = dilog_raw(x, ctx)?;
    Ok(ctx.round_out_f(r))
}

pub(crate) fn dilog_raw(x: &Float, ctx: &NumericContext) -> Result<Float> {
    if !x.is_finite() || x.is_sign_negative() || x.is_zero() {
        return Err(Error::Domain(format!("dilog requires x > 0, got {x}")));
    }
    let prec = ctx.working_prec() + 16;
    let x = Float::with_val(prec, x);
    let r = dilog_inner(&x, prec);
    ctx.ensure_finite_f(&r, "dilog_as")?;
    Ok(r)
}

fn dilog_inner(x: &Float, prec: u32) -> Float {
    if *x > 2u32 {
        // dilog(x) = -ln(x)^2/2 - dilog(1/x), 1/x in (0, 1/2)
        let ln_x = Float::with_val(prec, x.ln_ref());
        let inv = Float::with_val(prec, x.recip_ref());
        let half_sq = ln_x.square() / 2u32;
        return -half_sq - dilog_inner(&inv, prec);
    }
    // dilog(x) = Li2(1 - x)
    let y = Float::with_val(prec, 1u32 - x);
    let half = Float::with_val(prec, 0.5f32);
    if y > half {
        // x < 1/2: Li2(y) = pi^2/6 - ln(y) ln(1-y) - Li2(1-y), 1-y = x < 1/2
        let pi = Float::with_val(prec, rug::float::Constant::Pi);
        let pi2_6 = pi.square() / 6u32;
        let ln_y = Float::with_val(prec, y.ln_ref());
        let ln_x = Float::with_val(prec, x.ln_ref());
        return pi2_6 - ln_y * ln_x - li2_series(&Float::with_val(prec, x), prec);
    }
    let neg_half = -half;
    if y < neg_half {
        // y in [-1, -1/2): Li2(y) = -ln(1-y)^2/2 - Li2(y/(y-1)), ratio in (1/3, 1/2]
        let one_minus_y = Float::with_val(prec, 1u32 - &y);
        let ln_term = Float::with_val(prec, one_minus_y.ln_ref());
        let ratio = y.clone() / (y - 1u32);
        return -(ln_term.square() / 2u32) - li2_series(&ratio, prec);
    }
    li2_series(&y, prec)
}

/// Li2(u) = sum u^k / k^2 for |u| <= 1/2.
fn li2_series(u: &Float, prec: u32) -> Float {
    debug_assert!(u.clone().abs() <= 0.5000001);
    let mut sum = Float::with_val(prec, 0);
    let mut power = Float::with_val(prec, 1);
    let mut k = 0u64;
    let cutoff = Float::with_val(prec, Float::i_exp(1, -(prec as i32 + 8)));
    loop {
        k += 1;
        power *= u;
        let term = Float::with_val(prec, &power) / (k * k);
        let done = term.clone().abs() < cutoff;
        sum += term;
        if done && k > 2 {
            break;
        }
    }
    sum
}
