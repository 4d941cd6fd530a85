//! Points of the open critical strip 0 < Re(s) < 1.

use crate::context::{decimal_to_rational, NumericContext};
use crate::error::{Error, Result};
use rug::{Complex, Float, Rational};

/// A point s = sigma + it with 0 < sigma < 1 (strictly).
///
/// Both coordinates are stored as exact rationals so that a point parsed
/// from a decimal literal renders identically at every working precision.
#[derive(Debug, Clone, PartialEq)]
pub struct StripPoint {
    sigma: Rational,
    t: Rational,
}

impl StripPoint {
    pub fn new(sigma: Rational, t: Rational) -> Result<Self> {
        if sigma <= 0u32 || sigma >= 1u32 {
            return Err(Error::Domain(format!(
                "sigma must satisfy 0 < sigma < 1 strictly, got {sigma}"
            )));
        }
        Ok(Self { sigma, t })
    }

    /// Construct from exact binary values of the given doubles.
    pub fn from_f64(sigma: f64, t: f64) -> Result<Self> {
        let sr = Rational::from_f64(sigma)
            .ok_or_else(|| Error::Domain("sigma must be finite".into()))?;
        let tr =
            Rational::from_f64(t).ok_or_else(|| Error::Domain("t must be finite".into()))?;
        Self::new(sr, tr)
    }

    /// Parse "sigma+ti" with decimal components, e.g. `0.7+30i`, `0.5-2.5i`
    /// or just `0.8` (t = 0).
    pub fn parse(text: &str) -> Result<Self> {
        let t = text.trim();
        if let Some(body) = t.strip_suffix(['i', 'I']) {
            // find the sign that separates sigma from t (not a leading sign,
            // not an exponent sign)
            let bytes = body.as_bytes();
            let mut split = None;
            for (idx, &b) in bytes.iter().enumerate().skip(1) {
                if (b == b'+' || b == b'-')
                    && !matches!(bytes[idx - 1], b'e' | b'E')
                {
                    split = Some(idx);
                }
            }
            let idx = split.ok_or_else(|| {
                Error::Config(format!("cannot parse strip point '{text}': missing t part"))
            })?;
            let sigma = decimal_to_rational(&body[..idx])?;
            let t_part = decimal_to_rational(&body[idx..])?;
            Self::new(sigma, t_part)
        } else {
            Self::new(decimal_to_rational(t)?, Rational::new())
        }
    }

    pub fn sigma(&self) -> &Rational {
        &self.sigma
    }

    pub fn t(&self) -> &Rational {
        &self.t
    }

    pub fn sigma_f64(&self) -> f64 {
        self.sigma.to_f64()
    }

    pub fn t_f64(&self) -> f64 {
        self.t.to_f64()
    }

    pub fn sigma_float(&self, ctx: &NumericContext) -> Float {
        ctx.float_from_rational(&self.sigma)
    }

    pub fn t_float(&self, ctx: &NumericContext) -> Float {
        ctx.float_from_rational(&self.t)
    }

    /// Render as a complex value at the context's working precision.
    pub fn to_complex(&self, ctx: &NumericContext) -> Complex {
        ctx.complex(self.sigma_float(ctx), self.t_float(ctx))
    }

    /// The conjugate point sigma - it.
    pub fn conj(&self) -> Self {
        Self {
            sigma: self.sigma.clone(),
            t: -self.t.clone(),
        }
    }

    /// The reflected point 1 - s, which also lies in the open strip.
    pub fn reflect(&self) -> Self {
        Self {
            sigma: Rational::from(1) - self.sigma.clone(),
            t: -self.t.clone(),
        }
    }
}

impl std::fmt::Display for StripPoint {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let sig = self.sigma.to_f64();
        let t = self.t.to_f64();
        if t >= 0.0 {
            write!(f, "{sig}+{t}i")
        } else {
            write!(f, "{sig}{t}i")
        }
    }
}
