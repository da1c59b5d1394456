use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{Field, Ring};
use crate::error::{Error, Result};

/// The field ℚ with arbitrary-precision entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct Rationals;

impl Ring for Rationals {
    type Elem = BigRational;

    fn zero(&self) -> BigRational {
        BigRational::zero()
    }
    fn one(&self) -> BigRational {
        BigRational::one()
    }
    fn add(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a + b
    }
    fn neg(&self, a: &BigRational) -> BigRational {
        -a
    }
    fn sub(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a - b
    }
    fn mul(&self, a: &BigRational, b: &BigRational) -> BigRational {
        a * b
    }
    fn from_i64(&self, n: i64) -> BigRational {
        BigRational::from_integer(BigInt::from(n))
    }
    fn is_zero(&self, a: &BigRational) -> bool {
        a.is_zero()
    }
}

impl Field for Rationals {
    fn inv(&self, a: &BigRational) -> Option<BigRational> {
        (!a.is_zero()).then(|| a.recip())
    }
}

/// "a/b" in lowest terms, or "a" for integers.
pub fn format_rational(x: &BigRational) -> String {
    if x.is_integer() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// Accepts "a", "a/b", or a decimal such as "-0.05".
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let t = text.trim();
    if let Some((n, d)) = t.split_once('/') {
        let n: BigInt = n.trim().parse().map_err(|_| Error::Parse(format!("bad rational: {text}")))?;
        let d: BigInt = d.trim().parse().map_err(|_| Error::Parse(format!("bad rational: {text}")))?;
        if d.is_zero() {
            return Err(Error::Parse(format!("zero denominator: {text}")));
        }
        return Ok(BigRational::new(n, d));
    }
    if t.contains(['.', 'e', 'E']) {
        return parse_decimal(t);
    }
    t.parse::<BigInt>()
        .map(BigRational::from_integer)
        .map_err(|_| Error::Parse(format!("bad rational: {text}")))
}

/// Exact value of a decimal literal, with optional exponent.
pub fn parse_decimal(text: &str) -> Result<BigRational> {
    let bad = || Error::Parse(format!("bad decimal: {text}"));
    let t = text.trim();
    let (mantissa, exponent) = match t.find(['e', 'E']) {
        Some(k) => (&t[..k], t[k + 1..].parse::<i32>().map_err(|_| bad())?),
        None => (t, 0),
    };
    let (negative, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return Err(bad());
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return Err(bad());
    }
    let all: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
    let scale = exponent - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut value = BigRational::from_integer(all);
    if scale >= 0 {
        value *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        value /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Ok(if negative { -value } else { value })
}

/// Fixed-point decimal rendering with `digits` fractional digits, rounded half away from zero.
pub fn decimal_string(x: &BigRational, digits: usize) -> String {
    let scale = num_traits::pow(BigInt::from(10), digits);
    let scaled = (x.abs() * BigRational::from_integer(scale.clone())).round().to_integer();
    let int_part = &scaled / &scale;
    let frac = (&scaled % &scale).to_string();
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    if digits == 0 {
        return format!("{sign}{int_part}");
    }
    format!("{sign}{int_part}.{frac:0>digits$}")
}
