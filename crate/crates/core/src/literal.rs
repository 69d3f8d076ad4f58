//! Parsing of numeric literals: integers, `p/q` fractions and decimals
//! with an optional exponent (`-1.25e-3`).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};

/// Largest accepted decimal exponent magnitude.
pub const MAX_EXPONENT: i64 = 4096;

fn err(s: &str, reason: &'static str) -> Error {
    Error::Literal {
        literal: s.to_string(),
        reason,
    }
}

fn parse_int(s: &str, whole: &str) -> Result<BigInt> {
    let digits = s.strip_prefix(['+', '-']).unwrap_or(s);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(err(whole, "expected an integer"));
    }
    let v: BigInt = digits.parse().map_err(|_| err(whole, "expected an integer"))?;
    Ok(if s.starts_with('-') { -v } else { v })
}

fn parse_decimal(s: &str, whole: &str) -> Result<BigRational> {
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], &s[i + 1..]),
        None => (s, ""),
    };
    let exp: i64 = if exp.is_empty() && mantissa.len() == s.len() {
        0
    } else {
        let e = parse_int(exp, whole)?;
        i64::try_from(&e)
            .ok()
            .filter(|e| e.abs() <= MAX_EXPONENT)
            .ok_or_else(|| err(whole, "exponent out of range"))?
    };

    let negative = mantissa.starts_with('-');
    let body = mantissa.strip_prefix(['+', '-']).unwrap_or(mantissa);
    let (int_part, frac_part) = body.split_once('.').unwrap_or((body, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(err(whole, "missing digits"));
    }
    if !int_part.bytes().chain(frac_part.bytes()).all(|b| b.is_ascii_digit()) {
        return Err(err(whole, "unexpected character"));
    }
    let digits = format!("{int_part}{frac_part}");
    let mut value = BigRational::from_integer(digits.parse::<BigInt>().unwrap_or_default());
    let shift = exp - frac_part.len() as i64;
    let ten = BigInt::from(10);
    let pow = num_traits::pow(ten, shift.unsigned_abs() as usize);
    if shift >= 0 {
        value *= BigRational::from_integer(pow);
    } else {
        value /= BigRational::from_integer(pow);
    }
    Ok(if negative { -value } else { value })
}

/// Parses an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if t.is_empty() {
        return Err(err(s, "empty literal"));
    }
    if let Some((p, q)) = t.split_once('/') {
        let p = parse_int(p.trim(), s)?;
        let q = parse_int(q.trim(), s)?;
        if q.is_zero() {
            return Err(err(s, "zero denominator"));
        }
        return Ok(BigRational::new(p, q));
    }
    parse_decimal(t, s)
}

/// Parses a finite double. Fractions are divided in floating point.
pub fn parse_real(s: &str) -> Result<f64> {
    let t = s.trim();
    let v = match t.split_once('/') {
        Some((p, q)) => {
            let p: f64 = p.trim().parse().map_err(|_| err(s, "expected a number"))?;
            let q: f64 = q.trim().parse().map_err(|_| err(s, "expected a number"))?;
            if q == 0.0 {
                return Err(err(s, "zero denominator"));
            }
            p / q
        }
        None => {
            // reject "inf", "nan" and friends up front
            if !t.bytes().all(|b| b.is_ascii_digit() || b"+-.eE".contains(&b)) {
                return Err(err(s, "unexpected character"));
            }
            t.parse().map_err(|_| err(s, "expected a number"))?
        }
    };
    if !v.is_finite() {
        return Err(err(s, "not finite"));
    }
    Ok(v)
}
