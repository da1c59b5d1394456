use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::matrix::{left_kernel, rank};
use super::subspace::Subspace;
use crate::algebra::{GaloisField, Rationals};
use crate::arith::inv_mod;
use crate::error::{Error, Result};

/// A dense matrix of exact rationals (entries kept in lowest terms).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RationalMatrix {
    ncols: usize,
    rows: Vec<Vec<BigRational>>,
}

impl RationalMatrix {
    pub fn new(ncols: usize, rows: Vec<Vec<BigRational>>) -> Result<Self> {
        if let Some(r) = rows.iter().find(|r| r.len() != ncols) {
            return Err(Error::InvalidArgument(format!("row has {} entries, expected {ncols}", r.len())));
        }
        Ok(RationalMatrix { ncols, rows })
    }

    pub fn from_i64s(rows: &[&[i64]]) -> Self {
        let ncols = rows.first().map_or(0, |r| r.len());
        let rows = rows
            .iter()
            .map(|r| r.iter().map(|&x| BigRational::from_integer(BigInt::from(x))).collect())
            .collect();
        RationalMatrix::new(ncols, rows).expect("rectangular literal")
    }

    pub fn ncols(&self) -> usize {
        self.ncols
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[Vec<BigRational>] {
        &self.rows
    }

    pub fn rank(&self) -> usize {
        rank(&Rationals, &self.rows, self.ncols)
    }
}

/// p-adic valuation of a nonzero integer.
pub fn valuation_int(x: &BigInt, p: u64) -> i64 {
    debug_assert!(!x.is_zero());
    let p = BigInt::from(p);
    let mut x = x.abs();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// p-adic valuation of a nonzero rational.
pub fn valuation(x: &BigRational, p: u64) -> i64 {
    valuation_int(x.numer(), p) - valuation_int(x.denom(), p)
}

fn p_power(p: u64, e: i64) -> BigRational {
    let base = BigRational::from_integer(BigInt::from(p));
    if e >= 0 {
        num_traits::pow(base, e as usize)
    } else {
        num_traits::pow(base.recip(), (-e) as usize)
    }
}

/// Residue of a p-integral rational.
fn residue(x: &BigRational, p: u64) -> u64 {
    let pb = BigInt::from(p);
    let n = x.numer().mod_floor(&pb).to_u64().expect("residue fits");
    let d = x.denom().mod_floor(&pb).to_u64().expect("residue fits");
    let d_inv = inv_mod(d, p).expect("p-integral entry");
    crate::arith::mul_mod(n, d_inv, p)
}

/// Reduction mod p of the lattice (row space of W, scaled coordinatewise by
/// p^(−α_i)) ∩ ℤ_(p)^E. The result has dimension rank(W).
pub fn p_reduce(w: &RationalMatrix, ground: &[String], p: u64, alpha: &[i64]) -> Result<Subspace<GaloisField>> {
    let field = GaloisField::prime(p)?;
    if ground.len() != w.ncols || alpha.len() != w.ncols {
        return Err(Error::InvalidArgument("ground set, matrix and α disagree in length".into()));
    }
    if w.rank() != w.nrows() {
        return Err(Error::DependentRows);
    }
    let scales: Vec<BigRational> = alpha.iter().map(|&a| p_power(p, -a)).collect();
    let mut rows: Vec<Vec<BigRational>> =
        w.rows.iter().map(|r| r.iter().zip(&scales).map(|(x, s)| x * s).collect()).collect();
    let p_inv = p_power(p, -1);
    loop {
        for row in rows.iter_mut() {
            let v = row.iter().filter(|x| !x.is_zero()).map(|x| valuation(x, p)).min().expect("nonzero row");
            if v != 0 {
                let s = p_power(p, -v);
                for x in row.iter_mut() {
                    *x *= &s;
                }
            }
        }
        let reduced: Vec<Vec<_>> =
            rows.iter().map(|r| r.iter().map(|x| field.from_u64(residue(x, p))).collect()).collect();
        let kernel = left_kernel(&field, &reduced, w.ncols);
        let Some(lambda) = kernel.into_iter().next() else {
            return Subspace::new(field, ground.to_vec(), &reduced);
        };
        let top = lambda.iter().rposition(|l| !l.is_zero()).expect("nonzero kernel vector");
        let norm = inv_mod(lambda[top].coeffs()[0], p).expect("nonzero residue");
        let coeffs: Vec<BigRational> = lambda
            .iter()
            .map(|l| BigRational::from_integer(BigInt::from(crate::arith::mul_mod(l.coeffs()[0], norm, p))))
            .collect();
        let mut combo = vec![BigRational::zero(); w.ncols];
        for (c, row) in coeffs.iter().zip(&rows) {
            if c.is_zero() {
                continue;
            }
            for (acc, x) in combo.iter_mut().zip(row) {
                *acc += c * x;
            }
        }
        for x in combo.iter_mut() {
            *x *= &p_inv;
        }
        debug_assert!(combo.iter().all(|x| x.is_zero() || valuation(x, p) >= 0));
        rows[top] = combo;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn labels(n: usize) -> Vec<String> {
        (1..=n).map(|i| i.to_string()).collect()
    }

    fn gf_sub(p: u64, rows: &[&[u64]]) -> Subspace<GaloisField> {
        let k = GaloisField::prime(p).unwrap();
        let n = rows[0].len();
        let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| k.from_u64(x)).collect()).collect();
        Subspace::new(k, labels(n), &rows).unwrap()
    }

    fn q(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn worked_examples() {
        let w = RationalMatrix::new(3, vec![vec![q(1, 2), q(0, 1), q(1, 1)], vec![q(0, 1), q(1, 1), q(1, 1)]]).unwrap();
        assert_eq!(p_reduce(&w, &labels(3), 2, &[0, 0, 0]).unwrap(), gf_sub(2, &[&[1, 0, 0], &[0, 1, 1]]));
        let w = RationalMatrix::from_i64s(&[&[1, 1]]);
        assert_eq!(p_reduce(&w, &labels(2), 2, &[1, 0]).unwrap(), gf_sub(2, &[&[1, 0]]));
        assert_eq!(p_reduce(&w, &labels(2), 2, &[0, 1]).unwrap(), gf_sub(2, &[&[0, 1]]));
        assert_eq!(p_reduce(&w, &labels(2), 2, &[0, 0]).unwrap(), gf_sub(2, &[&[1, 1]]));
        let w = RationalMatrix::from_i64s(&[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        assert_eq!(p_reduce(&w, &labels(4), 2, &[0, 0, 0, 1]).unwrap(), gf_sub(2, &[&[0, 0, 0, 1], &[0, 1, 1, 1]]));
        assert_eq!(p_reduce(&w, &labels(4), 2, &[0, 0, 0, 0]).unwrap(), gf_sub(2, &[&[1, 0, 1, 1], &[0, 1, 1, 0]]));
    }

    #[test]
    fn dependent_rows_rejected() {
        let w = RationalMatrix::from_i64s(&[&[1, 2], &[2, 4]]);
        assert_eq!(p_reduce(&w, &labels(2), 3, &[0, 0]).unwrap_err(), Error::DependentRows);
    }

    fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
        (0u32..1 << n).filter(|b| b.count_ones() as usize == d).map(|b| (0..n).filter(|i| b >> i & 1 == 1).collect()).collect()
    }

    /// Oracle: the Plücker vector of the reduction is the reduction of the
    /// Plücker vector of the scaled rational row space, up to a unit.
    fn plucker_check(w: &RationalMatrix, p: u64, alpha: &[i64]) {
        use crate::algebra::{Field, Ring};
        use crate::linalg::determinant;
        let n = w.ncols();
        let d = w.nrows();
        let v = p_reduce(w, &labels(n), p, alpha).unwrap();
        assert_eq!(v.dim(), d);
        let k = v.field().clone();
        let scaled: Vec<Vec<BigRational>> =
            w.rows().iter().map(|r| r.iter().zip(alpha).map(|(x, &a)| x * p_power(p, -a)).collect()).collect();
        let cols = subsets(n, d);
        let minors: Vec<BigRational> = cols
            .iter()
            .map(|b| determinant(&Rationals, &scaled.iter().map(|r| b.iter().map(|&c| r[c].clone()).collect()).collect::<Vec<_>>()).unwrap())
            .collect();
        let mu = minors.iter().filter(|x| !x.is_zero()).map(|x| valuation(x, p)).min().unwrap();
        let expected: Vec<_> = minors
            .iter()
            .map(|x| if x.is_zero() { k.zero() } else { k.from_u64(residue(&(x * p_power(p, -mu)), p)) })
            .collect();
        let actual: Vec<_> = cols
            .iter()
            .map(|b| determinant(&k, &v.basis().iter().map(|r| b.iter().map(|&c| r[c].clone()).collect()).collect::<Vec<_>>()).unwrap())
            .collect();
        let i0 = expected.iter().position(|x| !x.is_zero()).unwrap();
        let c = k.mul(&actual[i0], &k.inv(&expected[i0]).unwrap());
        for (a, e) in actual.iter().zip(&expected) {
            assert_eq!(*a, k.mul(&c, e));
        }
    }

    #[test]
    fn matches_plucker_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..200 {
            let n = rng.gen_range(2..6);
            let d = rng.gen_range(1..=n);
            let rows: Vec<Vec<BigRational>> =
                (0..d).map(|_| (0..n).map(|_| q(rng.gen_range(-12..13), rng.gen_range(1..9))).collect()).collect();
            let w = RationalMatrix::new(n, rows).unwrap();
            if w.rank() != d {
                continue;
            }
            let p = [2u64, 3, 5][rng.gen_range(0..3)];
            let alpha: Vec<i64> = (0..n).map(|_| rng.gen_range(-3..4)).collect();
            plucker_check(&w, p, &alpha);
        }
    }

    proptest! {
        #[test]
        fn shift_by_all_ones_is_invisible(entries in prop::collection::vec(-5i64..6, 6), shift in prop::collection::vec(-2i64..3, 3), p in prop::sample::select(vec![2u64, 3, 5])) {
            let w = RationalMatrix::from_i64s(&[&entries[0..3], &entries[3..6]]);
            prop_assume!(w.rank() == 2);
            let a = p_reduce(&w, &labels(3), p, &shift).unwrap();
            let shifted: Vec<i64> = shift.iter().map(|x| x + 1).collect();
            let b = p_reduce(&w, &labels(3), p, &shifted).unwrap();
            prop_assert_eq!(a.dim(), 2);
            prop_assert_eq!(a, b);
        }
    }
}
