use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::algebra::Field;
use crate::error::{Error, Result};

/// Canonical reduced row-echelon form: nonzero rows only, each pivot equal to
/// one and the only nonzero entry of its column.
#[derive(Clone, Debug, PartialEq)]
pub struct Echelon<E> {
    pub rows: Vec<Vec<E>>,
    pub rank: usize,
    pub pivots: Vec<usize>,
}

pub fn rref<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Echelon<F::Elem> {
    let mut m: Vec<Vec<F::Elem>> = rows.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        if r == m.len() {
            break;
        }
        let Some(k) = (r..m.len()).find(|&k| !field.is_zero(&m[k][c])) else {
            continue;
        };
        m.swap(r, k);
        let inv = field.inv(&m[r][c]).expect("nonzero pivot");
        for x in m[r].iter_mut() {
            *x = field.mul(&inv, x);
        }
        for k in 0..m.len() {
            if k == r || field.is_zero(&m[k][c]) {
                continue;
            }
            let factor = m[k][c].clone();
            for j in 0..ncols {
                if field.is_zero(&m[r][j]) {
                    continue;
                }
                let d = field.mul(&factor, &m[r][j]);
                m[k][j] = field.sub(&m[k][j], &d);
            }
        }
        pivots.push(c);
        r += 1;
    }
    m.truncate(r);
    Echelon { rows: m, rank: r, pivots }
}

pub fn rank<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> usize {
    rref(field, rows, ncols).rank
}

/// Basis of { x : A·x = 0 } for the matrix in echelon form.
pub fn nullspace<F: Field>(field: &F, ech: &Echelon<F::Elem>, ncols: usize) -> Vec<Vec<F::Elem>> {
    let mut is_pivot = vec![false; ncols];
    for &c in &ech.pivots {
        is_pivot[c] = true;
    }
    (0..ncols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut x = vec![field.zero(); ncols];
            x[f] = field.one();
            for (row, &c) in ech.rows.iter().zip(&ech.pivots) {
                x[c] = field.neg(&row[f]);
            }
            x
        })
        .collect()
}

/// Basis of { λ : Σ λ_i·row_i = 0 }.
pub fn left_kernel<F: Field>(field: &F, rows: &[Vec<F::Elem>], ncols: usize) -> Vec<Vec<F::Elem>> {
    let transposed = transpose(rows, ncols);
    let ech = rref(field, &transposed, rows.len());
    nullspace(field, &ech, rows.len())
}

pub fn transpose<E: Clone>(rows: &[Vec<E>], ncols: usize) -> Vec<Vec<E>> {
    (0..ncols).map(|c| rows.iter().map(|r| r[c].clone()).collect()).collect()
}

/// Determinant by Gaussian elimination over a field.
pub fn determinant<F: Field>(field: &F, m: &[Vec<F::Elem>]) -> Result<F::Elem> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    let mut a = m.to_vec();
    let mut det = field.one();
    for c in 0..n {
        let Some(k) = (c..n).find(|&k| !field.is_zero(&a[k][c])) else {
            return Ok(field.zero());
        };
        if k != c {
            a.swap(k, c);
            det = field.neg(&det);
        }
        det = field.mul(&det, &a[c][c]);
        let inv = field.inv(&a[c][c]).expect("nonzero pivot");
        for r in c + 1..n {
            if field.is_zero(&a[r][c]) {
                continue;
            }
            let factor = field.mul(&a[r][c], &inv);
            for j in c..n {
                let d = field.mul(&factor, &a[c][j]);
                a[r][j] = field.sub(&a[r][j], &d);
            }
        }
    }
    Ok(det)
}

/// Fraction-free (Bareiss) determinant over ℤ.
pub fn determinant_int(m: &[Vec<BigInt>]) -> Result<BigInt> {
    let n = m.len();
    if let Some(row) = m.iter().find(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: row.len() });
    }
    if n == 0 {
        return Ok(BigInt::one());
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !a[r][k].is_zero()) else {
                return Ok(BigInt::zero());
            };
            a.swap(k, r);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    Ok(sign * &a[n - 1][n - 1])
}
