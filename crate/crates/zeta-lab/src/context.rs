//! Numeric evaluation context: decimal working precision, guard digits and
//! the deterministic summation policy.
//!
//! Every operation in this crate is a pure function of its inputs and a
//! [`NumericContext`]. Internally all arithmetic runs at
//! `precision_digits + guard_digits` decimal digits; results are rounded to
//! `precision_digits` on return. Identical inputs and context produce
//! bit-identical outputs.

use crate::error::{Error, Result};
use rug::ops::Pow;
use rug::{Complex, Float, Rational};
use std::cmp::Ordering;

/// log2(10), used to convert decimal digits to binary precision.
const LOG2_10: f64 = std::f64::consts::LOG2_10;

/// Order in which long sums are reduced.
///
/// `SerialAscending` adds terms one by one in index order on a single
/// thread. `FixedTree` reduces fixed-size chunks in a fixed binary tree;
/// the tree shape depends only on the term count, so results do not depend
/// on thread count or scheduling.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SummationOrder {
    SerialAscending,
    FixedTree,
}

/// Chunk width for the fixed-tree reduction.
const TREE_CHUNK: u64 = 4096;

#[derive(Debug, Clone)]
pub struct NumericContext {
    precision_digits: u32,
    guard_digits: u32,
    summation_order: SummationOrder,
}

impl NumericContext {
    /// Create a context with the given output precision in decimal digits
    /// (at least 30) and the default 10 guard digits.
    pub fn new(precision_digits: u32) -> Result<Self> {
        if precision_digits < 30 {
            return Err(Error::Config(format!(
                "precision_digits must be >= 30, got {precision_digits}"
            )));
        }
        Ok(Self {
            precision_digits,
            guard_digits: 10,
            summation_order: SummationOrder::SerialAscending,
        })
    }

    pub fn with_guard(mut self, guard_digits: u32) -> Result<Self> {
        if guard_digits < 5 {
            return Err(Error::Config(format!(
                "guard_digits must be >= 5, got {guard_digits}"
            )));
        }
        self.guard_digits = guard_digits;
        Ok(self)
    }

    pub fn with_summation_order(mut self, order: SummationOrder) -> Self {
        self.summation_order = order;
        self
    }

    pub fn precision_digits(&self) -> u32 {
        self.precision_digits
    }

    pub fn guard_digits(&self) -> u32 {
        self.guard_digits
    }

    pub fn summation_order(&self) -> SummationOrder {
        self.summation_order
    }

    /// Decimal digits carried by module-internal computation.
    pub fn working_digits(&self) -> u32 {
        self.precision_digits + self.guard_digits
    }

    /// Binary precision of module-internal computation.
    pub fn working_prec(&self) -> u32 {
        digits_to_bits(self.working_digits())
    }

    /// Binary precision of returned values.
    pub fn output_prec(&self) -> u32 {
        digits_to_bits(self.precision_digits)
    }

    /// A context whose output precision is raised by `extra` decimal digits.
    pub fn raised(&self, extra: u32) -> Self {
        Self {
            precision_digits: self.precision_digits + extra,
            guard_digits: self.guard_digits,
            summation_order: self.summation_order,
        }
    }

    // --- value constructors at working precision ---

    pub fn float<T>(&self, v: T) -> Float
    where
        Float: rug::Assign<T>,
    {
        Float::with_val(self.working_prec(), v)
    }

    pub fn float_u64(&self, v: u64) -> Float {
        Float::with_val(self.working_prec(), v)
    }

    pub fn float_from_rational(&self, r: &Rational) -> Float {
        Float::with_val(self.working_prec(), r)
    }

    /// Parse a decimal string at working precision.
    pub fn float_from_str(&self, s: &str) -> Result<Float> {
        let parsed = Float::parse(s)
            .map_err(|e| Error::Config(format!("cannot parse '{s}' as a number: {e}")))?;
        Ok(Float::with_val(self.working_prec(), parsed))
    }

    pub fn complex(&self, re: Float, im: Float) -> Complex {
        Complex::with_val(self.working_prec(), (re, im))
    }

    pub fn complex_zero(&self) -> Complex {
        Complex::with_val(self.working_prec(), (0, 0))
    }

    pub fn complex_from_f(&self, re: Float) -> Complex {
        let wp = self.working_prec();
        Complex::with_val(wp, (re, Float::with_val(wp, 0)))
    }

    pub fn complex_i(&self) -> Complex {
        Complex::with_val(self.working_prec(), (0, 1))
    }

    pub fn pi(&self) -> Float {
        Float::with_val(self.working_prec(), rug::float::Constant::Pi)
    }

    // --- output rounding ---

    /// Round a working-precision value to the context's output precision.
    pub fn round_out(&self, z: Complex) -> Complex {
        Complex::with_val(self.output_prec(), &z)
    }

    pub fn round_out_f(&self, x: Float) -> Float {
        Float::with_val(self.output_prec(), &x)
    }

    /// Reject NaN/infinity before a value escapes an operation.
    pub fn ensure_finite(&self, z: &Complex, what: &str) -> Result<()> {
        if z.real().is_finite() && z.imag().is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(what.to_string()))
        }
    }

    pub fn ensure_finite_f(&self, x: &Float, what: &str) -> Result<()> {
        if x.is_finite() {
            Ok(())
        } else {
            Err(Error::NonFinite(what.to_string()))
        }
    }

    /// Reduce `count` complex terms under the context's summation policy.
    /// `term(i)` must be pure; indices run from 0 to `count - 1`.
    pub fn sum_complex<F>(&self, count: u64, term: F) -> Complex
    where
        F: Fn(u64) -> Complex + Sync,
    {
        match self.summation_order {
            SummationOrder::SerialAscending => {
                let mut acc = self.complex_zero();
                for i in 0..count {
                    acc += term(i);
                }
                acc
            }
            SummationOrder::FixedTree => self.tree_sum(0, count, &term),
        }
    }

    /// Pairwise reduction over fixed chunk boundaries. The split points are a
    /// function of the index range alone, so the rounding sequence is
    /// reproducible regardless of how the two halves are scheduled.
    fn tree_sum<F>(&self, start: u64, count: u64, term: &F) -> Complex
    where
        F: Fn(u64) -> Complex + Sync,
    {
        if count <= TREE_CHUNK {
            let mut acc = self.complex_zero();
            for i in start..start + count {
                acc += term(i);
            }
            return acc;
        }
        let chunks = count.div_ceil(TREE_CHUNK);
        let left_chunks = chunks / 2;
        let left_count = left_chunks * TREE_CHUNK;
        let (a, b) = rayon::join(
            || self.tree_sum(start, left_count, term),
            || self.tree_sum(start + left_count, count - left_count, term),
        );
        a + b
    }
}

pub(crate) fn digits_to_bits(digits: u32) -> u32 {
    (digits as f64 * LOG2_10).ceil() as u32 + 2
}

/// Decimal digits needed to make a binary-precision value round-trip
/// through a decimal string.
pub(crate) fn bits_to_digits_roundtrip(bits: u32) -> usize {
    (bits as f64 / LOG2_10).floor() as usize + 2
}

/// Parse a plain decimal literal (optional sign, optional fraction,
/// optional e-exponent) into an exact rational.
pub fn decimal_to_rational(text: &str) -> Result<Rational> {
    let t = text.trim();
    let bad = || Error::Config(format!("invalid decimal literal '{text}'"));
    if t.is_empty() {
        return Err(bad());
    }
    let (mantissa, exp10) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i64 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0i64),
    };
    let (sign, digits_part) = match mantissa.strip_prefix('-') {
        Some(rest) => (-1i32, rest),
        None => (1i32, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = match digits_part.find('.') {
        Some(pos) => (&digits_part[..pos], &digits_part[pos + 1..]),
        None => (digits_part, ""),
    };
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().all(|c| c.is_ascii_digit())
        || !frac_part.chars().all(|c| c.is_ascii_digit())
    {
        return Err(bad());
    }
    let digits: String = format!("{int_part}{frac_part}");
    let mut numer = rug::Integer::from_str_radix(if digits.is_empty() { "0" } else { &digits }, 10)
        .map_err(|_| bad())?;
    if sign < 0 {
        numer = -numer;
    }
    let shift = exp10 - frac_part.len() as i64;
    let mut r = Rational::from(numer);
    match shift.cmp(&0) {
        Ordering::Greater => r *= Rational::from(rug::Integer::from(10).pow(shift as u32)),
        Ordering::Less => r /= Rational::from(rug::Integer::from(10).pow((-shift) as u32)),
        Ordering::Equal => {}
    }
    Ok(r)
}
