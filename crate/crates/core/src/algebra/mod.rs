//! Exact coefficient domains.
//!
//! Rings are passed around as explicit context values (a [`GaloisField`], the
//! [`Rationals`], the skew ring [`SkewPolyRing`], ...) and their elements are
//! plain data. Generic code such as row reduction and equation verification is
//! written against the [`Ring`] and [`Field`] traits.

mod gf;
mod intpoly;
mod rational;
mod skew;

use std::fmt::Debug;

pub use gf::{FieldElement, FpPolynomial, GaloisField};
pub use intpoly::{IntPolyRing, IntPolynomial};
pub use rational::{decimal_string, format_rational, parse_decimal, parse_rational, Rationals};
pub use skew::{skew_multiply, SkewPolyRing, SkewPolynomial};

/// A ring with identity. Multiplication need not commute.
pub trait Ring: Clone + Debug + PartialEq + Send + Sync {
    type Elem: Clone + PartialEq + Debug + Send + Sync;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn from_i64(&self, n: i64) -> Self::Elem;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn is_zero(&self, a: &Self::Elem) -> bool {
        *a == self.zero()
    }

    fn is_one(&self, a: &Self::Elem) -> bool {
        *a == self.one()
    }
}

/// A commutative field.
pub trait Field: Ring {
    fn inv(&self, a: &Self::Elem) -> Option<Self::Elem>;

    fn div(&self, a: &Self::Elem, b: &Self::Elem) -> Option<Self::Elem> {
        self.inv(b).map(|b| self.mul(a, &b))
    }
}
