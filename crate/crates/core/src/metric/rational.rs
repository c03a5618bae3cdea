//! Exact rational parsing and decimal quantization.

use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{Pow, Signed, Zero};

use crate::metric::MetricError;

/// Parses `"3/2"`, `"-4"`, `"0.125"` or `"1."` into an exact rational.
pub fn parse(s: &str) -> Result<BigRational, MetricError> {
    let err = || MetricError::ParseRational(s.to_string());
    let t = s.trim();
    if t.is_empty() {
        return Err(err());
    }
    if t.contains('/') {
        let r = BigRational::from_str(t).map_err(|_| err())?;
        return Ok(r);
    }
    let (neg, body) = match t.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, t.strip_prefix('+').unwrap_or(t)),
    };
    let (int_part, frac_part) = match body.split_once('.') {
        Some((a, b)) => (a, b),
        None => (body, ""),
    };
    if int_part.is_empty() && frac_part.is_empty()
        || !int_part.bytes().all(|b| b.is_ascii_digit())
        || !frac_part.bytes().all(|b| b.is_ascii_digit())
    {
        return Err(err());
    }
    let digits = format!("{int_part}{frac_part}");
    let numer = BigInt::from_str(if digits.is_empty() { "0" } else { &digits }).map_err(|_| err())?;
    let denom = BigInt::from(10u32).pow(frac_part.len() as u32);
    let r = BigRational::new(numer, denom);
    Ok(if neg { -r } else { r })
}

fn ten_pow(digits: u32) -> BigInt {
    BigInt::from(10u32).pow(digits)
}

/// Rounds `x` (taken exactly as its binary value) to `digits` decimals,
/// half away from zero.
pub fn quantize(x: f64, digits: u32) -> BigRational {
    let exact = BigRational::from_float(x).expect("finite input");
    let scale = BigRational::from_integer(ten_pow(digits));
    (exact * &scale).round() / scale
}

/// `sqrt(m)` rounded to `digits` decimals, computed with integer square
/// roots so the result does not depend on floating point.
pub fn sqrt_quantized(m: u64, digits: u32) -> BigRational {
    let scaled = BigUint::from(m) * BigUint::from(10u32).pow(2 * digits);
    let floor = scaled.sqrt();
    // round to nearest: bump when (2*floor + 1)^2 <= 4*scaled
    let twice = &floor * 2u32 + 1u32;
    let rounded = if &twice * &twice <= scaled * 4u32 { floor + 1u32 } else { floor };
    BigRational::new(BigInt::from(rounded), ten_pow(digits))
}

/// Lowest-terms text form used by the serializers (`"3/2"`, `"4"`).
pub fn format(r: &BigRational) -> String {
    if r.is_zero() {
        "0".to_string()
    } else if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Approximate value for display.
pub fn approx(r: &BigRational) -> f64 {
    use num_traits::ToPrimitive;
    r.to_f64().unwrap_or(if r.is_positive() { f64::INFINITY } else { f64::NEG_INFINITY })
}
