use std::fmt;

use super::gf::{FieldElement, GaloisField};
use super::Ring;
use crate::error::{Error, Result};

/// An element Σ aᵢFⁱ of K[F] with K = GF(p^m) and F·a = a^p·F.
#[derive(Clone, PartialEq, Eq)]
pub struct SkewPolynomial {
    field: GaloisField,
    coeffs: Vec<FieldElement>,
}

impl SkewPolynomial {
    pub fn new(field: &GaloisField, coeffs: Vec<FieldElement>) -> Self {
        let mut s = SkewPolynomial { field: field.clone(), coeffs };
        while s.coeffs.last().is_some_and(FieldElement::is_zero) {
            s.coeffs.pop();
        }
        s
    }

    pub fn zero(field: &GaloisField) -> Self {
        Self::new(field, Vec::new())
    }

    pub fn constant(field: &GaloisField, c: FieldElement) -> Self {
        Self::new(field, vec![c])
    }

    /// c·F^k.
    pub fn monomial(field: &GaloisField, c: FieldElement, k: usize) -> Self {
        let mut coeffs = vec![field.zero(); k + 1];
        coeffs[k] = c;
        Self::new(field, coeffs)
    }

    /// The indeterminate F.
    pub fn frobenius_symbol(field: &GaloisField) -> Self {
        Self::monomial(field, field.one(), 1)
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    pub fn coeffs(&self) -> &[FieldElement] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> FieldElement {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&FieldElement, &FieldElement) -> FieldElement) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new(&self.field, (0..n).map(|i| f(&self.coeff(i), &other.coeff(i))).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.add(a, b))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.zip_with(other, |a, b| self.field.sub(a, b))
    }

    pub fn neg(&self) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.neg(a)).collect())
    }

    /// Left scalar multiple c·self.
    pub fn scale_left(&self, c: &FieldElement) -> Self {
        Self::new(&self.field, self.coeffs.iter().map(|a| self.field.mul(c, a)).collect())
    }
}

/// (Σ aᵢFⁱ)(Σ bⱼFʲ) = Σ aᵢ·bⱼ^(p^i)·F^(i+j).
pub fn skew_multiply(a: &SkewPolynomial, b: &SkewPolynomial) -> Result<SkewPolynomial> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let k = &a.field;
    if a.is_zero() || b.is_zero() {
        return Ok(SkewPolynomial::zero(k));
    }
    let mut out = vec![k.zero(); a.coeffs.len() + b.coeffs.len() - 1];
    for (i, ai) in a.coeffs.iter().enumerate() {
        if ai.is_zero() {
            continue;
        }
        for (j, bj) in b.coeffs.iter().enumerate() {
            let twisted = k.frobenius(bj, i as i64);
            out[i + j] = k.add(&out[i + j], &k.mul(ai, &twisted));
        }
    }
    Ok(SkewPolynomial::new(k, out))
}

impl fmt::Display for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match i {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})F")?,
                _ => write!(f, "({c})F^{i}")?,
            }
        }
        if first {
            f.write_str("0")?;
        }
        Ok(())
    }
}

impl fmt::Debug for SkewPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// The ring K[F] over a fixed finite field.
#[derive(Clone, Debug, PartialEq)]
pub struct SkewPolyRing {
    field: GaloisField,
}

impl SkewPolyRing {
    pub fn new(field: GaloisField) -> Self {
        SkewPolyRing { field }
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }
}

impl Ring for SkewPolyRing {
    type Elem = SkewPolynomial;

    fn zero(&self) -> SkewPolynomial {
        SkewPolynomial::zero(&self.field)
    }
    fn one(&self) -> SkewPolynomial {
        SkewPolynomial::constant(&self.field, self.field.one())
    }
    fn add(&self, a: &SkewPolynomial, b: &SkewPolynomial) -> SkewPolynomial {
        a.add(b)
    }
    fn neg(&self, a: &SkewPolynomial) -> SkewPolynomial {
        a.neg()
    }
    fn sub(&self, a: &SkewPolynomial, b: &SkewPolynomial) -> SkewPolynomial {
        a.sub(b)
    }
    fn mul(&self, a: &SkewPolynomial, b: &SkewPolynomial) -> SkewPolynomial {
        skew_multiply(a, b).expect("operands over the ring's field")
    }
    fn from_i64(&self, n: i64) -> SkewPolynomial {
        SkewPolynomial::constant(&self.field, self.field.from_i64(n))
    }
}
