//! Helpers around `BigRational`: construction, `p/q` rendering, and the
//! exact-or-floating scalar used in invariant reports.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use num_bigint::BigInt;
pub use num_rational::BigRational;

/// Shorthand for an exact rational from machine integers.
pub fn rat(num: i64, den: i64) -> BigRational {
    BigRational::new(BigInt::from(num), BigInt::from(den))
}

/// Exact rational from an integer.
pub fn int(value: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(value))
}

pub fn big(value: BigInt) -> BigRational {
    BigRational::from_integer(value)
}

/// Render as `p/q`, or just `p` when the denominator is one.
pub fn fmt_rational(value: &BigRational) -> String {
    if value.denom().is_one() {
        value.numer().to_string()
    } else {
        format!("{}/{}", value.numer(), value.denom())
    }
}

/// Parse `p` or `p/q`.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let mut parts = text.splitn(2, '/');
    let numer = parts
        .next()
        .unwrap_or("")
        .trim()
        .parse::<BigInt>()
        .map_err(|_| Error::Malformed(format!("bad rational {text:?}")))?;
    let denom = match parts.next() {
        Some(d) => d
            .trim()
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad rational {text:?}")))?,
        None => BigInt::one(),
    };
    if denom.is_zero() {
        return Err(Error::Malformed(format!("zero denominator in {text:?}")));
    }
    Ok(BigRational::new(numer, denom))
}

/// JSON form of an exact rational. Numerator and denominator are decimal
/// strings so values survive round-trips regardless of magnitude.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalJson {
    pub num: String,
    pub den: String,
}

impl From<&BigRational> for RationalJson {
    fn from(value: &BigRational) -> Self {
        RationalJson {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
        }
    }
}

impl TryFrom<&RationalJson> for BigRational {
    type Error = Error;

    fn try_from(value: &RationalJson) -> Result<BigRational> {
        let num = value
            .num
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad numerator {:?}", value.num)))?;
        let den = value
            .den
            .parse::<BigInt>()
            .map_err(|_| Error::Malformed(format!("bad denominator {:?}", value.den)))?;
        if den.is_zero() {
            return Err(Error::Malformed("zero denominator".into()));
        }
        Ok(BigRational::new(num, den))
    }
}

/// A value that is either exact or the result of floating evaluation.
#[derive(Debug, Clone, PartialEq)]
pub enum Scalar {
    Exact(BigRational),
    Float(f64),
}

impl Scalar {
    pub fn from_int(value: BigInt) -> Self {
        Scalar::Exact(BigRational::from_integer(value))
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Scalar::Exact(q) => rational_to_f64(q),
            Scalar::Float(x) => *x,
        }
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Scalar::Exact(_))
    }

    /// Exact equality when both sides are exact, otherwise relative
    /// tolerance on the floating values.
    pub fn agrees_with(&self, other: &Scalar, rel_tol: f64) -> bool {
        match (self, other) {
            (Scalar::Exact(a), Scalar::Exact(b)) => a == b,
            _ => {
                let a = self.to_f64();
                let b = other.to_f64();
                let scale = a.abs().max(b.abs()).max(1.0);
                (a - b).abs() <= rel_tol * scale
            }
        }
    }

    pub fn render(&self) -> String {
        match self {
            Scalar::Exact(q) => fmt_rational(q),
            Scalar::Float(x) => format!("{x}"),
        }
    }
}

/// Lossless-enough conversion for tolerance comparisons: falls back to a
/// numerator/denominator quotient when the rational overflows `f64` parts.
pub fn rational_to_f64(value: &BigRational) -> f64 {
    if let Some(x) = value.to_f64() {
        return x;
    }
    let num = value.numer();
    let den = value.denom();
    let bits = num.bits().max(den.bits());
    let shift = bits.saturating_sub(100);
    let n = (num.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    let d = (den.abs() >> shift).to_f64().unwrap_or(f64::MAX);
    let sign = if num.is_negative() != den.is_negative() {
        -1.0
    } else {
        1.0
    };
    sign * n / d
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn renders_integers_without_denominator() {
        assert_eq!(fmt_rational(&rat(10, 2)), "5");
        assert_eq!(fmt_rational(&rat(-3, 9)), "-1/3");
    }

    #[test]
    fn parse_round_trip() {
        for text in ["5", "-1/3", "86/3", "0"] {
            let q = parse_rational(text).unwrap();
            assert_eq!(fmt_rational(&q), text);
        }
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
    }

    #[test]
    fn scalar_agreement() {
        let five = Scalar::Exact(int(5));
        assert!(five.agrees_with(&Scalar::Exact(rat(10, 2)), 0.0));
        assert!(five.agrees_with(&Scalar::Float(5.0 + 1e-12), 1e-9));
        assert!(!five.agrees_with(&Scalar::Float(5.1), 1e-9));
    }
}
