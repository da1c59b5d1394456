use std::fmt;
use std::sync::Arc;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use smallvec::SmallVec;

use super::{Field, Ring};
use crate::arith::{add_mod, gcd, inv_mod, is_prime, mul_mod, prime_factors, sub_mod};
use crate::error::{Error, Result};

/// A polynomial over GF(p), little-endian, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FpPolynomial {
    p: u64,
    coeffs: Vec<u64>,
}

impl FpPolynomial {
    pub fn new(p: u64, coeffs: impl IntoIterator<Item = u64>) -> Self {
        let mut poly = FpPolynomial {
            p,
            coeffs: coeffs.into_iter().map(|c| c % p).collect(),
        };
        poly.trim();
        poly
    }

    pub fn zero(p: u64) -> Self {
        FpPolynomial { p, coeffs: Vec::new() }
    }

    fn monomial(p: u64, degree: usize) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = 1 % p;
        FpPolynomial::new(p, coeffs)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn characteristic(&self) -> u64 {
        self.p
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn leading(&self) -> u64 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            add_mod(a, b, self.p)
        });
        FpPolynomial::new(self.p, c.collect::<Vec<_>>())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        let c = (0..n).map(|i| {
            let a = self.coeffs.get(i).copied().unwrap_or(0);
            let b = other.coeffs.get(i).copied().unwrap_or(0);
            sub_mod(a, b, self.p)
        });
        FpPolynomial::new(self.p, c.collect::<Vec<_>>())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return FpPolynomial::zero(self.p);
        }
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = add_mod(out[i + j], mul_mod(a, b, self.p), self.p);
            }
        }
        FpPolynomial::new(self.p, out)
    }

    fn scale(&self, c: u64) -> Self {
        FpPolynomial::new(self.p, self.coeffs.iter().map(|&a| mul_mod(a, c, self.p)).collect::<Vec<_>>())
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead_inv = inv_mod(divisor.leading(), self.p).expect("leading coefficient invertible");
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0u64; self.coeffs.len().saturating_sub(dd).max(1)];
        while rem.len() > dd {
            let top = rem.len() - 1;
            let c = mul_mod(*rem.last().unwrap(), lead_inv, self.p);
            if c != 0 {
                let shift = top - dd;
                quot[shift] = c;
                for (i, &d) in divisor.coeffs.iter().enumerate() {
                    rem[shift + i] = sub_mod(rem[shift + i], mul_mod(c, d, self.p), self.p);
                }
            }
            rem.pop();
            while rem.last() == Some(&0) {
                rem.pop();
            }
        }
        (FpPolynomial::new(self.p, quot), FpPolynomial::new(self.p, rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    fn monic(&self) -> Self {
        match inv_mod(self.leading(), self.p) {
            Some(inv) => self.scale(inv),
            None => self.clone(),
        }
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    fn pow_mod(&self, mut exp: u64, modulus: &Self) -> Self {
        let mut base = self.rem(modulus);
        let mut acc = FpPolynomial::new(self.p, [1]);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = acc.mul(&base).rem(modulus);
            }
            base = base.mul(&base).rem(modulus);
            exp >>= 1;
        }
        acc
    }

    /// Ben-Or irreducibility test over GF(p).
    pub fn is_irreducible(&self) -> bool {
        let m = match self.degree() {
            None | Some(0) => return false,
            Some(m) => m,
        };
        if m == 1 {
            return true;
        }
        let t = FpPolynomial::monomial(self.p, 1);
        let mut h = t.clone();
        for _ in 1..=m / 2 {
            h = h.pow_mod(self.p, self);
            let g = self.gcd(&h.sub(&t));
            if g.degree() != Some(0) {
                return false;
            }
        }
        true
    }

    /// Inverse of `self` modulo `modulus`, if the two are coprime.
    fn inverse_mod(&self, modulus: &Self) -> Option<Self> {
        let (mut r0, mut r1) = (modulus.clone(), self.rem(modulus));
        let (mut s0, mut s1) = (FpPolynomial::zero(self.p), FpPolynomial::new(self.p, [1]));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1);
            let s = s0.sub(&q.mul(&s1));
            r0 = r1;
            r1 = r;
            s0 = s1;
            s1 = s;
        }
        if r0.degree() != Some(0) {
            return None;
        }
        let c = inv_mod(r0.leading(), self.p)?;
        Some(s0.scale(c).rem(modulus))
    }
}

impl fmt::Display for FpPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

/// Shared "t^2+3t-1" rendering for integer-like coefficient lists.
pub(crate) fn write_poly(f: &mut fmt::Formatter<'_>, coeffs: Vec<BigInt>) -> fmt::Result {
    let mut first = true;
    for (deg, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let negative = c < &BigInt::zero();
        let mag = if negative { -c } else { c.clone() };
        if negative {
            f.write_str("-")?;
        } else if !first {
            f.write_str("+")?;
        }
        first = false;
        let unit = mag.is_one();
        match deg {
            0 => write!(f, "{mag}")?,
            1 if unit => f.write_str("t")?,
            1 => write!(f, "{mag}t")?,
            _ if unit => write!(f, "t^{deg}")?,
            _ => write!(f, "{mag}t^{deg}")?,
        }
    }
    if first {
        f.write_str("0")?;
    }
    Ok(())
}

/// An element of GF(p^m): `m` coefficients over GF(p), little-endian in the
/// residue class of the field modulus. The derived ordering compares the
/// constant coefficient first.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement {
    coeffs: SmallVec<[u64; 4]>,
}

impl FieldElement {
    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.coeffs.as_slice())
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_poly(f, self.coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }
}

struct Inner {
    p: u64,
    m: usize,
    modulus: FpPolynomial,
    /// Images of the basis powers t^i under x ↦ x^p.
    frobenius_images: Vec<FieldElement>,
}

/// The finite field GF(p^m) with an explicit monic irreducible modulus.
/// Cloning is cheap; equality compares (p, m, modulus).
#[derive(Clone)]
pub struct GaloisField(Arc<Inner>);

impl PartialEq for GaloisField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for GaloisField {}

impl fmt::Debug for GaloisField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; {})", self.0.p, self.0.m, self.0.modulus)
    }
}

impl GaloisField {
    /// Builds GF(p^m) with the lexicographically smallest monic irreducible
    /// modulus, comparing the non-leading coefficients constant term first.
    pub fn new(p: u64, m: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        if m < 1 {
            return Err(Error::InvalidArgument("extension degree must be at least 1".into()));
        }
        // Odometer over (c_0, ..., c_{m-1}) with c_{m-1} varying fastest.
        let mut low = vec![0u64; m];
        loop {
            let mut coeffs = low.clone();
            coeffs.push(1);
            let f = FpPolynomial::new(p, coeffs);
            if f.is_irreducible() {
                return Ok(Self::from_parts(p, m, f));
            }
            let mut i = m;
            loop {
                if i == 0 {
                    return Err(Error::NotIrreducible(m));
                }
                i -= 1;
                low[i] += 1;
                if low[i] < p {
                    break;
                }
                low[i] = 0;
            }
        }
    }

    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1)
    }

    /// Uses a caller-supplied modulus (little-endian, monic).
    pub fn with_modulus(p: u64, modulus: &[u64]) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        let f = FpPolynomial::new(p, modulus.iter().copied());
        let m = f.degree().unwrap_or(0);
        if m == 0 || f.leading() != 1 || modulus.len() != m + 1 || !f.is_irreducible() {
            return Err(Error::NotIrreducible(m));
        }
        Ok(Self::from_parts(p, m, f))
    }

    fn from_parts(p: u64, m: usize, modulus: FpPolynomial) -> Self {
        let mut inner = Inner { p, m, modulus, frobenius_images: Vec::new() };
        let provisional = GaloisField(Arc::new(Inner {
            p,
            m,
            modulus: inner.modulus.clone(),
            frobenius_images: Vec::new(),
        }));
        let t_p = provisional.frobenius_slow(&provisional.basis(1.min(m - 1)));
        let mut images = Vec::with_capacity(m);
        let mut acc = provisional.one();
        for i in 0..m {
            if i > 0 {
                acc = provisional.mul(&acc, &t_p);
            }
            images.push(if m == 1 { provisional.one() } else { acc.clone() });
        }
        inner.frobenius_images = images;
        GaloisField(Arc::new(inner))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn modulus(&self) -> &FpPolynomial {
        &self.0.modulus
    }

    /// Number of elements p^m.
    pub fn order(&self) -> BigUint {
        BigUint::from(self.0.p).pow(self.0.m as u32)
    }

    /// The element t^i of the power basis (reduced).
    pub fn basis(&self, i: usize) -> FieldElement {
        let mut c = vec![0u64; i + 1];
        c[i] = 1;
        self.element(&c)
    }

    /// The class of the polynomial t (the generator of the power basis).
    pub fn generator(&self) -> FieldElement {
        self.basis(1)
    }

    /// Reduces an arbitrary coefficient list into the field.
    pub fn element(&self, coeffs: &[u64]) -> FieldElement {
        let p = self.0.p;
        let m = self.0.m;
        let mut c: SmallVec<[u64; 4]> = coeffs.iter().map(|&x| x % p).collect();
        if c.len() > m {
            let reduced = FpPolynomial::new(p, c.iter().copied()).rem(&self.0.modulus);
            c = reduced.coeffs.iter().copied().collect();
        }
        c.resize(m, 0);
        FieldElement { coeffs: c }
    }

    pub fn from_u64(&self, n: u64) -> FieldElement {
        self.element(&[n % self.0.p])
    }

    pub fn from_bigint(&self, n: &BigInt) -> FieldElement {
        let r = n.mod_floor(&BigInt::from(self.0.p));
        self.from_u64(r.to_u64().expect("residue fits"))
    }

    /// True iff `x` lies in the prime field.
    pub fn is_prime_field_element(&self, x: &FieldElement) -> bool {
        x.coeffs.iter().skip(1).all(|&c| c == 0)
    }

    /// All elements in lexicographic order of their coefficient sequences.
    pub fn elements(&self) -> impl Iterator<Item = FieldElement> + '_ {
        let m = self.0.m;
        let p = self.0.p;
        let mut next = Some(FieldElement { coeffs: SmallVec::from_elem(0, m) });
        std::iter::from_fn(move || {
            let cur = next.take()?;
            let mut succ = cur.clone();
            let mut i = m;
            let mut carry_out = true;
            while i > 0 {
                i -= 1;
                succ.coeffs[i] += 1;
                if succ.coeffs[i] < p {
                    carry_out = false;
                    break;
                }
                succ.coeffs[i] = 0;
            }
            if !carry_out {
                next = Some(succ);
            }
            Some(cur)
        })
    }

    pub fn pow(&self, x: &FieldElement, exp: &BigUint) -> FieldElement {
        let mut acc = self.one();
        for i in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(i) {
                acc = self.mul(&acc, x);
            }
        }
        acc
    }

    pub fn pow_u64(&self, x: &FieldElement, mut exp: u64) -> FieldElement {
        let mut base = x.clone();
        let mut acc = self.one();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            exp >>= 1;
        }
        acc
    }

    fn frobenius_slow(&self, x: &FieldElement) -> FieldElement {
        self.pow_u64(x, self.0.p)
    }

    fn frobenius_once(&self, x: &FieldElement) -> FieldElement {
        let p = self.0.p;
        let mut out: SmallVec<[u64; 4]> = SmallVec::from_elem(0, self.0.m);
        for (c, image) in x.coeffs.iter().zip(&self.0.frobenius_images) {
            if *c == 0 {
                continue;
            }
            for (o, &b) in out.iter_mut().zip(image.coeffs.iter()) {
                *o = add_mod(*o, mul_mod(*c, b, p), p);
            }
        }
        FieldElement { coeffs: out }
    }

    /// x^(p^e). Negative exponents use that the Frobenius has order m.
    pub fn frobenius(&self, x: &FieldElement, e: i64) -> FieldElement {
        let k = e.rem_euclid(self.0.m as i64);
        let mut y = x.clone();
        for _ in 0..k {
            y = self.frobenius_once(&y);
        }
        y
    }

    /// True iff `x` lies in the subfield GF(p^j) of the algebraic closure,
    /// i.e. x^(p^j) = x.
    pub fn in_subfield(&self, x: &FieldElement, j: u64) -> bool {
        let k = (j % self.0.m as u64) as i64;
        self.frobenius(x, k) == *x
    }

    /// Multiplicative order of a nonzero element, given a multiple of it.
    fn has_exact_order(&self, y: &FieldElement, n: u64) -> bool {
        if self.pow_u64(y, n) != self.one() {
            return false;
        }
        prime_factors(n).into_iter().all(|r| self.pow_u64(y, n / r) != self.one())
    }

    /// The element of multiplicative order exactly `n` with the smallest
    /// coefficient sequence.
    pub fn primitive_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 {
            return Err(Error::InvalidArgument("order must be positive".into()));
        }
        if n % self.0.p == 0 {
            return Err(Error::NotCoprime { n: n.to_string(), p: self.0.p });
        }
        let group = self.order() - BigUint::one();
        if !(&group % n).is_zero() {
            return Err(Error::NoSuchRoot { order: n.to_string(), p: self.0.p, m: self.0.m });
        }
        let cofactor = &group / n;
        let seed = self
            .elements()
            .filter(|x| !x.is_zero())
            .map(|x| self.pow(&x, &cofactor))
            .find(|y| self.has_exact_order(y, n))
            .expect("cyclic group contains an element of every dividing order");
        // Every primitive n-th root is a power of the one found.
        let roots = (1..=n).filter(|&j| gcd(j, n) == 1).map(|j| self.pow_u64(&seed, j));
        Ok(roots.min().expect("at least one primitive root"))
    }

    /// Human-readable rendering as a polynomial in t.
    pub fn display(&self, x: &FieldElement) -> String {
        x.to_string()
    }
}

impl Ring for GaloisField {
    type Elem = FieldElement;

    fn zero(&self) -> FieldElement {
        FieldElement { coeffs: SmallVec::from_elem(0, self.0.m) }
    }

    fn one(&self) -> FieldElement {
        let mut c = SmallVec::from_elem(0, self.0.m);
        c[0] = 1 % self.0.p;
        FieldElement { coeffs: c }
    }

    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| add_mod(x, y, p)).collect() }
    }

    fn neg(&self, a: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement { coeffs: a.coeffs.iter().map(|&x| sub_mod(0, x, p)).collect() }
    }

    fn sub(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        FieldElement { coeffs: a.coeffs.iter().zip(&b.coeffs).map(|(&x, &y)| sub_mod(x, y, p)).collect() }
    }

    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        let p = self.0.p;
        let m = self.0.m;
        if m == 1 {
            return FieldElement { coeffs: smallvec::smallvec![mul_mod(a.coeffs[0], b.coeffs[0], p)] };
        }
        let mut prod = vec![0u64; 2 * m - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                prod[i + j] = add_mod(prod[i + j], mul_mod(x, y, p), p);
            }
        }
        let f = &self.0.modulus.coeffs;
        for d in (m..prod.len()).rev() {
            let c = prod[d];
            if c == 0 {
                continue;
            }
            prod[d] = 0;
            for i in 0..m {
                prod[d - m + i] = sub_mod(prod[d - m + i], mul_mod(c, f[i], p), p);
            }
        }
        prod.truncate(m);
        FieldElement { coeffs: prod.into_iter().collect() }
    }

    fn from_i64(&self, n: i64) -> FieldElement {
        let r = (n as i128).rem_euclid(self.0.p as i128) as u64;
        self.from_u64(r)
    }

    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
}

impl Field for GaloisField {
    fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        if self.0.m == 1 {
            return inv_mod(a.coeffs[0], self.0.p).map(|x| self.from_u64(x));
        }
        let poly = FpPolynomial::new(self.0.p, a.coeffs.iter().copied());
        poly.inverse_mod(&self.0.modulus).map(|s| self.element(&s.coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random(field: &GaloisField, rng: &mut ChaCha8Rng) -> FieldElement {
        let c: Vec<u64> = (0..field.degree()).map(|_| rng.gen_range(0..field.characteristic())).collect();
        field.element(&c)
    }

    #[test]
    fn construct_moduli() {
        assert_eq!(GaloisField::new(2, 1).unwrap().modulus().coeffs(), &[0, 1]);
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus().coeffs(), &[1, 1, 1]);
        assert_eq!(GaloisField::new(3, 2).unwrap().modulus().coeffs(), &[1, 0, 1]);
        assert_eq!(GaloisField::new(2, 2).unwrap().modulus().to_string(), "t^2+t+1");
    }

    #[test]
    fn construct_errors() {
        assert_eq!(GaloisField::new(4, 1).unwrap_err().code(), "not_prime");
        assert_eq!(GaloisField::new(5, 0).unwrap_err().code(), "invalid_argument");
        assert!(GaloisField::with_modulus(2, &[1, 0, 1]).is_err());
        assert!(GaloisField::with_modulus(2, &[1, 1, 1]).is_ok());
    }

    /// Brute-force irreducibility over GF(p): no monic factor of degree 1..=m/2.
    fn irreducible_by_trial(f: &FpPolynomial) -> bool {
        let p = f.characteristic();
        let m = f.degree().unwrap();
        for d in 1..=m / 2 {
            let count = p.pow(d as u32);
            for k in 0..count {
                let mut c: Vec<u64> = (0..d).map(|i| (k / p.pow(i as u32)) % p).collect();
                c.push(1);
                if f.rem(&FpPolynomial::new(p, c)).is_zero() {
                    return false;
                }
            }
        }
        true
    }

    #[test]
    fn ben_or_matches_trial_division() {
        for &(p, m) in &[(2u64, 2usize), (2, 3), (2, 4), (3, 2), (3, 3), (5, 2)] {
            let count = p.pow(m as u32);
            for k in 0..count {
                let mut c: Vec<u64> = (0..m).map(|i| (k / p.pow(i as u32)) % p).collect();
                c.push(1);
                let f = FpPolynomial::new(p, c);
                assert_eq!(f.is_irreducible(), irreducible_by_trial(&f), "{f} over GF({p})");
            }
        }
    }

    #[test]
    fn field_axioms_on_random_samples() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for &(p, m) in &[(2u64, 1usize), (2, 3), (3, 2), (5, 3), (7, 1), (2, 6), (11, 2)] {
            let k = GaloisField::new(p, m).unwrap();
            for _ in 0..200 {
                let (a, b, c) = (random(&k, &mut rng), random(&k, &mut rng), random(&k, &mut rng));
                assert_eq!(k.mul(&k.mul(&a, &b), &c), k.mul(&a, &k.mul(&b, &c)));
                assert_eq!(k.add(&k.add(&a, &b), &c), k.add(&a, &k.add(&b, &c)));
                assert_eq!(k.mul(&a, &k.add(&b, &c)), k.add(&k.mul(&a, &b), &k.mul(&a, &c)));
                assert_eq!(k.mul(&a, &b), k.mul(&b, &a));
                if !a.is_zero() {
                    assert_eq!(k.mul(&a, &k.inv(&a).unwrap()), k.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_examples() {
        let k = GaloisField::new(2, 2).unwrap();
        let w = k.generator();
        let w2 = k.mul(&w, &w);
        assert_eq!(k.frobenius(&w, 1), w2);
        assert_eq!(k.frobenius(&w, 2), w);
        assert_eq!(k.frobenius(&w, -1), w2);
        assert_eq!(k.frobenius(&w2, 1), w);
    }

    #[test]
    fn frobenius_is_a_homomorphism_fixing_prime_field() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for &(p, m) in &[(2u64, 3usize), (3, 4), (5, 2), (7, 3)] {
            let k = GaloisField::new(p, m).unwrap();
            for _ in 0..100 {
                let (a, b) = (random(&k, &mut rng), random(&k, &mut rng));
                assert_eq!(k.frobenius(&k.mul(&a, &b), 1), k.mul(&k.frobenius(&a, 1), &k.frobenius(&b, 1)));
                assert_eq!(k.frobenius(&k.add(&a, &b), 1), k.add(&k.frobenius(&a, 1), &k.frobenius(&b, 1)));
                assert_eq!(k.frobenius(&a, 1), k.pow_u64(&a, p));
                assert_eq!(k.frobenius(&a, m as i64), a);
            }
            for c in 0..p {
                let x = k.from_u64(c);
                assert_eq!(k.frobenius(&x, 1), x);
            }
        }
    }

    #[test]
    fn roots_of_unity() {
        let f7 = GaloisField::prime(7).unwrap();
        assert_eq!(f7.primitive_root_of_unity(3).unwrap(), f7.from_u64(2));
        let f4 = GaloisField::new(2, 2).unwrap();
        assert_eq!(f4.primitive_root_of_unity(3).unwrap(), f4.generator());
        let f5 = GaloisField::prime(5).unwrap();
        assert_eq!(f5.primitive_root_of_unity(3).unwrap_err().code(), "no_such_root");
        assert_eq!(f5.primitive_root_of_unity(10).unwrap_err().code(), "not_coprime");
    }

    #[test]
    fn smallest_root_matches_exhaustive_scan() {
        let k = GaloisField::new(2, 6).unwrap();
        let root = k.primitive_root_of_unity(9).unwrap();
        let scan = k
            .elements()
            .filter(|x| !x.is_zero())
            .find(|x| k.pow_u64(x, 9) == k.one() && k.pow_u64(x, 3) != k.one())
            .unwrap();
        assert_eq!(root, scan);
    }

    #[test]
    fn element_enumeration_is_lexicographic_and_complete() {
        let k = GaloisField::new(3, 2).unwrap();
        let all: Vec<_> = k.elements().collect();
        assert_eq!(all.len(), 9);
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }
}
