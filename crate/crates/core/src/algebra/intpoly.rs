use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::gf::{write_poly, FpPolynomial};
use super::Ring;
use crate::error::{Error, Result};

/// A polynomial in ℤ[t], little-endian, without trailing zeros.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPolynomial { coeffs };
        while p.coeffs.last().is_some_and(Zero::is_zero) {
            p.coeffs.pop();
        }
        p
    }

    pub fn from_i64s(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPolynomial { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        Self::new(vec![c])
    }

    /// The indeterminate t.
    pub fn t() -> Self {
        Self::from_i64s(&[0, 1])
    }

    pub fn monomial(c: BigInt, degree: usize) -> Self {
        let mut coeffs = vec![BigInt::zero(); degree + 1];
        coeffs[degree] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    /// Horner evaluation at an integer.
    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Coefficientwise reduction into GF(p)[t].
    pub fn reduce_mod(&self, p: u64) -> FpPolynomial {
        let modulus = BigInt::from(p);
        let reduced = self.coeffs.iter().map(|c| {
            let r = ((c % &modulus) + &modulus) % &modulus;
            u64::try_from(r).expect("residue below p")
        });
        FpPolynomial::new(p, reduced.collect::<Vec<_>>())
    }

    /// Parses the display syntax, e.g. "t^4+3t^2-2t+1".
    pub fn parse(text: &str) -> Result<Self> {
        let s: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(Error::Parse("empty polynomial".into()));
        }
        let bad = || Error::Parse(format!("not a polynomial in t: {text}"));
        let mut acc = Self::zero();
        let mut rest = s.as_str();
        let mut first = true;
        while !rest.is_empty() {
            let negative = match rest.as_bytes()[0] {
                b'+' if !first => {
                    rest = &rest[1..];
                    false
                }
                b'-' => {
                    rest = &rest[1..];
                    true
                }
                _ if first => false,
                _ => return Err(bad()),
            };
            first = false;
            let end = rest[1.min(rest.len())..].find(['+', '-']).map_or(rest.len(), |k| k + 1);
            let term = &rest[..end];
            rest = &rest[end..];
            let (coeff_text, power) = match term.find('t') {
                None => (term, 0usize),
                Some(k) => {
                    let after = &term[k + 1..];
                    let power = if after.is_empty() {
                        1
                    } else {
                        after.strip_prefix('^').ok_or_else(bad)?.parse().map_err(|_| bad())?
                    };
                    (&term[..k], power)
                }
            };
            let mut c = if coeff_text.is_empty() {
                if power == 0 {
                    return Err(bad());
                }
                BigInt::one()
            } else {
                coeff_text.parse::<BigInt>().map_err(|_| bad())?
            };
            if negative {
                c = -c;
            }
            acc = acc.add(&Self::monomial(c, power));
        }
        Ok(acc)
    }
}

impl fmt::Display for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.clone())
    }
}

impl fmt::Debug for IntPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntPolynomial({self})")
    }
}

/// The ring ℤ[t].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub struct IntPolyRing;

impl Ring for IntPolyRing {
    type Elem = IntPolynomial;

    fn zero(&self) -> IntPolynomial {
        IntPolynomial::zero()
    }
    fn one(&self) -> IntPolynomial {
        IntPolynomial::constant(BigInt::one())
    }
    fn add(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        a.add(b)
    }
    fn neg(&self, a: &IntPolynomial) -> IntPolynomial {
        a.neg()
    }
    fn sub(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        a.sub(b)
    }
    fn mul(&self, a: &IntPolynomial, b: &IntPolynomial) -> IntPolynomial {
        a.mul(b)
    }
    fn from_i64(&self, n: i64) -> IntPolynomial {
        IntPolynomial::constant(BigInt::from(n))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(c: &[i64]) -> IntPolynomial {
        IntPolynomial::from_i64s(c)
    }

    #[test]
    fn worked_examples() {
        assert_eq!(p(&[0, 1, 1]).sub(&p(&[0, 0, 1])), IntPolynomial::t());
        assert_eq!(p(&[0, 1]).mul(&p(&[1, 1])), p(&[0, 1, 1]));
        assert_eq!(p(&[0, 2, 3]).reduce_mod(3), FpPolynomial::new(3, [0, 2]));
        assert_eq!(p(&[0, 2, 3]).reduce_mod(3).to_string(), "2t");
    }

    #[test]
    fn display_and_parse() {
        assert_eq!(p(&[0, 2, 3, 0, 1]).to_string(), "t^4+3t^2+2t");
        assert_eq!(p(&[-1, -1, 0, 0, 1]).to_string(), "t^4-t-1");
        assert_eq!(IntPolynomial::zero().to_string(), "0");
        assert_eq!(p(&[-3]).to_string(), "-3");
        for text in ["t^4+3t^2+2t", "t^4-t-1", "0", "-3", "-t^2+5", "12t^3-7t"] {
            assert_eq!(IntPolynomial::parse(text).unwrap().to_string(), text);
        }
        assert!(IntPolynomial::parse("t^").is_err());
        assert!(IntPolynomial::parse("3x").is_err());
    }

    fn arb_poly() -> impl Strategy<Value = IntPolynomial> {
        prop::collection::vec(-50i64..50, 0..6).prop_map(|c| p(&c))
    }

    proptest! {
        #[test]
        fn evaluation_is_a_ring_map(a in arb_poly(), b in arb_poly(), x in -20i64..20) {
            let x = BigInt::from(x);
            prop_assert_eq!(a.mul(&b).eval(&x), a.eval(&x) * b.eval(&x));
            prop_assert_eq!(a.add(&b).eval(&x), a.eval(&x) + b.eval(&x));
            prop_assert_eq!(a.sub(&b).eval(&x), a.eval(&x) - b.eval(&x));
        }

        #[test]
        fn display_round_trips(a in arb_poly()) {
            prop_assert_eq!(IntPolynomial::parse(&a.to_string()).unwrap(), a);
        }
    }
}
