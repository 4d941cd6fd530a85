//! Adaptive panel quadrature on Gauss-Legendre rule pairs, at arbitrary
//! binary precision. Nodes are generated by Newton refinement of the
//! Legendre polynomial and cached per (order, precision).
//!
//! Panels are accepted when a whole-panel estimate agrees with the two
//! half-panel estimates; callers can force panel boundaries at known sharp
//! features (the transition regions of the circle integrand).

use crate::error::{Error, Result};
use rug::{Complex, Float};
use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

const GL_ORDER: usize = 30;
const MAX_DEPTH: u32 = 64;

type NodeTable = Arc<Vec<(Float, Float)>>;

fn node_cache() -> &'static Mutex<HashMap<(usize, u32), NodeTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(usize, u32), NodeTable>>> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

/// Legendre P_n(x) and P'_n(x) by the three-term recurrence.
fn legendre_with_derivative(n: usize, x: &Float, prec: u32) -> (Float, Float) {
    let mut p_prev = Float::with_val(prec, 1);
    let mut p = Float::with_val(prec, x);
    for k in 1..n {
        // (k+1) P_{k+1} = (2k+1) x P_k - k P_{k-1}
        let next = (Float::with_val(prec, x) * &p * (2 * k as u32 + 1)
            - Float::with_val(prec, &p_prev) * k as u32)
            / (k as u32 + 1);
        p_prev = std::mem::replace(&mut p, next);
    }
    // P'_n = n (x P_n - P_{n-1}) / (x^2 - 1)
    let num = (Float::with_val(prec, x) * &p - &p_prev) * n as u32;
    let den = Float::with_val(prec, x.square_ref()) - 1u32;
    let d = num / den;
    (p, d)
}

/// Nodes and weights on [-1, 1]; only the nonnegative half is stored,
/// symmetric partners are implied.
fn gauss_legendre(order: usize, prec: u32) -> NodeTable {
    if let Some(t) = node_cache().lock().unwrap().get(&(order, prec)) {
        return Arc::clone(t);
    }
    let work = prec + 32;
    let mut table = Vec::new();
    let half = order / 2;
    for i in 1..=half {
        // Chebyshev initial guess, then Newton
        let guess = (std::f64::consts::PI * (i as f64 - 0.25) / (order as f64 + 0.5)).cos();
        let mut x = Float::with_val(work, guess);
        for _ in 0..200 {
            let (p, d) = legendre_with_derivative(order, &x, work);
            let step = p / d;
            x -= &step;
            if step.abs() < Float::with_val(work, Float::i_exp(1, -(prec as i32 + 16))) {
                break;
            }
        }
        let (_, d) = legendre_with_derivative(order, &x, work);
        let one_minus_x2 = 1u32 - Float::with_val(work, x.square_ref());
        let w = Float::with_val(work, 2) / (one_minus_x2 * d.square());
        table.push((Float::with_val(prec, &x), Float::with_val(prec, &w)));
    }
    if order % 2 == 1 {
        let zero = Float::with_val(work, 0);
        let (_, d) = legendre_with_derivative(order, &zero, work);
        let w = Float::with_val(work, 2) / d.square();
        table.push((Float::with_val(prec, 0), Float::with_val(prec, w)));
    }
    let arc = Arc::new(table);
    node_cache()
        .lock()
        .unwrap()
        .insert((order, prec), Arc::clone(&arc));
    arc
}

/// One Gauss-Legendre rule application over [a, b].
fn gl_panel<F>(f: &F, a: &Float, b: &Float, prec: u32) -> Result<Complex>
where
    F: Fn(&Float) -> Result<Complex>,
{
    let nodes = gauss_legendre(GL_ORDER, prec);
    let center = Float::with_val(prec, a + b) / 2u32;
    let half_len = Float::with_val(prec, b - a) / 2u32;
    let mut acc = Complex::with_val(prec, (0, 0));
    for (x, w) in nodes.iter() {
        let offset = Float::with_val(prec, x * &half_len);
        let right = Float::with_val(prec, &center + &offset);
        acc += Complex::with_val(prec, f(&right)? * w);
        if !x.is_zero() {
            let left = Float::with_val(prec, &center - &offset);
            acc += Complex::with_val(prec, f(&left)? * w);
        }
    }
    Ok(acc * half_len)
}

fn panel_recurse<F>(
    f: &F,
    a: &Float,
    b: &Float,
    whole: Complex,
    tol: &Float,
    depth: u32,
    prec: u32,
) -> Result<Complex>
where
    F: Fn(&Float) -> Result<Complex>,
{
    let mid = Float::with_val(prec, a + b) / 2u32;
    let left = gl_panel(f, a, &mid, prec)?;
    let right = gl_panel(f, &mid, b, prec)?;
    let refined = Complex::with_val(prec, &left + &right);
    let err = Float::with_val(prec, Complex::with_val(prec, &whole - &refined).abs_ref());
    if err <= *tol {
        return Ok(refined);
    }
    if depth >= MAX_DEPTH {
        return Err(Error::Quadrature(format!(
            "refinement budget exceeded on [{}, {}], panel error {:e}",
            a.to_f64(),
            b.to_f64(),
            err.to_f64()
        )));
    }
    let child_tol = Float::with_val(prec, tol / 2u32);
    let l = panel_recurse(f, a, &mid, left, &child_tol, depth + 1, prec)?;
    let r = panel_recurse(f, &mid, b, right, &child_tol, depth + 1, prec)?;
    Ok(l + r)
}

/// Integrate `f` over [a, b] to absolute tolerance `tol`, with forced
/// panel boundaries at the interior points of `forced`.
pub(crate) fn adaptive_quad<F>(
    f: &F,
    a: &Float,
    b: &Float,
    tol: &Float,
    forced: &[Float],
    prec: u32,
) -> Result<Complex>
where
    F: Fn(&Float) -> Result<Complex>,
{
    if !(a.is_finite() && b.is_finite()) || a >= b {
        return Err(Error::Quadrature(format!(
            "invalid integration range [{}, {}]",
            a.to_f64(),
            b.to_f64()
        )));
    }
    let mut cuts: Vec<Float> = vec![Float::with_val(prec, a)];
    let mut interior: Vec<Float> = forced
        .iter()
        .filter(|x| *x > a && *x < b)
        .map(|x| Float::with_val(prec, x))
        .collect();
    interior.sort_by(|p, q| p.partial_cmp(q).unwrap());
    for x in interior {
        if x != *cuts.last().unwrap() {
            cuts.push(x);
        }
    }
    cuts.push(Float::with_val(prec, b));

    let total_len = Float::with_val(prec, b - a);
    let mut acc = Complex::with_val(prec, (0, 0));
    for pair in cuts.windows(2) {
        let (lo, hi) = (&pair[0], &pair[1]);
        let seg_len = Float::with_val(prec, hi - lo);
        let seg_tol = Float::with_val(prec, tol * &seg_len) / &total_len;
        let whole = gl_panel(f, lo, hi, prec)?;
        acc += panel_recurse(f, lo, hi, whole, &seg_tol, 0, prec)?;
    }
    Ok(acc)
}
