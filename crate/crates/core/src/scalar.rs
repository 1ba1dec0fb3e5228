//! Exact rational scalars.
//!
//! Every coordinate in the polygonal pipeline is a [`Scalar`]: an
//! arbitrary-precision rational kept in lowest terms with a positive
//! denominator. Nothing here ever rounds.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub type Scalar = BigRational;

/// `n / d` as a scalar. Panics on `d == 0`.
pub fn ratio(n: i64, d: i64) -> Scalar {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Scalar {
    BigRational::from_integer(BigInt::from(n))
}

pub fn zero() -> Scalar {
    Scalar::zero()
}

pub fn one() -> Scalar {
    Scalar::one()
}

pub fn to_f64(s: &Scalar) -> f64 {
    s.to_f64().unwrap_or_else(|| {
        // Huge numerators/denominators: fall back to a scaled quotient.
        let n = s.numer().to_f64().unwrap_or(f64::NAN);
        let d = s.denom().to_f64().unwrap_or(f64::NAN);
        n / d
    })
}

/// Parses `"a"`, `"a/b"` or a plain decimal such as `"-0.866"` exactly.
pub fn parse_scalar(text: &str) -> Result<Scalar> {
    let t = text.trim();
    let bad = || Error::Parse(format!("not an exact rational: {text:?}"));
    if t.is_empty() {
        return Err(bad());
    }
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| bad())?;
        let d: BigInt = d.trim().parse().map_err(|_| bad())?;
        if d.is_zero() {
            return Err(bad());
        }
        return Ok(BigRational::new(n, d));
    }
    let (mantissa, exp) = match t.find(['e', 'E']) {
        Some(pos) => {
            let e: i32 = t[pos + 1..].parse().map_err(|_| bad())?;
            (&t[..pos], e)
        }
        None => (t, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (whole, frac) = digits.split_once('.').unwrap_or((digits, ""));
    if whole.is_empty() && frac.is_empty() {
        return Err(bad());
    }
    if !whole.chars().chain(frac.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("{whole}{frac}").parse().map_err(|_| bad())?;
    let scale = exp - frac.len() as i32;
    let ten = BigInt::from(10);
    let mut value = if scale >= 0 {
        BigRational::from_integer(all * num_traits::pow(ten, scale as usize))
    } else {
        BigRational::new(all, num_traits::pow(ten, (-scale) as usize))
    };
    if neg {
        value = -value;
    }
    Ok(value)
}

/// Canonical text form: `"a"` for integers, `"a/b"` otherwise.
pub fn format_scalar(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        format!("{}/{}", s.numer(), s.denom())
    }
}

pub fn abs(s: &Scalar) -> Scalar {
    s.abs()
}

pub fn sign(s: &Scalar) -> i8 {
    if s.is_positive() {
        1
    } else if s.is_negative() {
        -1
    } else {
        0
    }
}

pub fn max_of<'a>(values: impl IntoIterator<Item = &'a Scalar>) -> Option<Scalar> {
    values.into_iter().max().cloned()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_fractions_and_decimals() {
        assert_eq!(parse_scalar("1/2").unwrap(), ratio(1, 2));
        assert_eq!(parse_scalar("-6/4").unwrap(), ratio(-3, 2));
        assert_eq!(parse_scalar("0.866").unwrap(), ratio(433, 500));
        assert_eq!(parse_scalar("-.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_scalar("3").unwrap(), int(3));
        assert_eq!(parse_scalar("1e2").unwrap(), int(100));
        assert_eq!(parse_scalar("25e-2").unwrap(), ratio(1, 4));
        assert!(parse_scalar("1/0").is_err());
        assert!(parse_scalar("abc").is_err());
        assert!(parse_scalar("").is_err());
    }

    #[test]
    fn lowest_terms_round_trip() {
        let s = parse_scalar("10/-4").unwrap();
        assert_eq!(format_scalar(&s), "-5/2");
        assert_eq!(format_scalar(&int(7)), "7");
        assert_eq!(parse_scalar(&format_scalar(&s)).unwrap(), s);
    }
}
