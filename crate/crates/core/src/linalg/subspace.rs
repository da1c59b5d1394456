use std::collections::BTreeSet;

use super::matrix::{nullspace, rank, rref};
use crate::algebra::{Field, FieldElement, GaloisField};
use crate::error::{Error, Result};

/// A subspace of K^E stored as its canonical reduced row-echelon basis.
/// Two values are equal iff fields, ground sets and canonical bases agree.
#[derive(Clone, Debug, PartialEq)]
pub struct Subspace<F: Field> {
    field: F,
    ground: Vec<String>,
    basis: Vec<Vec<F::Elem>>,
    pivots: Vec<usize>,
}

impl<F: Field> Subspace<F> {
    /// Row space of `rows`; each row must have one entry per ground label.
    pub fn new(field: F, ground: Vec<String>, rows: &[Vec<F::Elem>]) -> Result<Self> {
        check_ground(&ground)?;
        if let Some(r) = rows.iter().find(|r| r.len() != ground.len()) {
            return Err(Error::InvalidArgument(format!(
                "row has {} entries but the ground set has {}",
                r.len(),
                ground.len()
            )));
        }
        Ok(Self::from_rows_unchecked(field, ground, rows))
    }

    fn from_rows_unchecked(field: F, ground: Vec<String>, rows: &[Vec<F::Elem>]) -> Self {
        let ech = rref(&field, rows, ground.len());
        Subspace { field, ground, basis: ech.rows, pivots: ech.pivots }
    }

    pub fn zero(field: F, ground: Vec<String>) -> Self {
        Subspace { field, ground, basis: Vec::new(), pivots: Vec::new() }
    }

    /// The whole space K^E.
    pub fn full(field: F, ground: Vec<String>) -> Self {
        let n = ground.len();
        let basis = (0..n)
            .map(|i| (0..n).map(|j| if i == j { field.one() } else { field.zero() }).collect())
            .collect();
        Subspace { field, ground, basis, pivots: (0..n).collect() }
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn basis(&self) -> &[Vec<F::Elem>] {
        &self.basis
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient_dim(&self) -> usize {
        self.ground.len()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.ground.iter().position(|g| g == label)
    }

    /// Column indices of the given labels.
    pub fn indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<BTreeSet<usize>> {
        labels
            .iter()
            .map(|l| self.index_of(l.as_ref()).ok_or_else(|| Error::NotASubset(l.as_ref().to_string())))
            .collect()
    }

    fn columns(&self, keep: &[usize]) -> Vec<Vec<F::Elem>> {
        self.basis.iter().map(|r| keep.iter().map(|&c| r[c].clone()).collect()).collect()
    }

    fn labels(&self, keep: &[usize]) -> Vec<String> {
        keep.iter().map(|&c| self.ground[c].clone()).collect()
    }

    fn complement(&self, set: &BTreeSet<usize>) -> Vec<usize> {
        (0..self.ground.len()).filter(|c| !set.contains(c)).collect()
    }

    /// Rank of the columns indexed by `cols`.
    pub fn column_rank(&self, cols: &BTreeSet<usize>) -> usize {
        let keep: Vec<usize> = cols.iter().copied().collect();
        rank(&self.field, &self.columns(&keep), keep.len())
    }

    /// V∖I: projection away from the coordinates in I.
    pub fn delete_indices(&self, set: &BTreeSet<usize>) -> Self {
        let keep = self.complement(set);
        Self::from_rows_unchecked(self.field.clone(), self.labels(&keep), &self.columns(&keep))
    }

    /// V/I: vectors vanishing on I, projected away from I.
    pub fn contract_indices(&self, set: &BTreeSet<usize>) -> Self {
        let keep = self.complement(set);
        let order: Vec<usize> = set.iter().copied().chain(keep.iter().copied()).collect();
        let ech = rref(&self.field, &self.columns(&order), order.len());
        let rows: Vec<Vec<F::Elem>> = ech
            .rows
            .iter()
            .zip(&ech.pivots)
            .filter(|(_, &piv)| piv >= set.len())
            .map(|(r, _)| r[set.len()..].to_vec())
            .collect();
        Self::from_rows_unchecked(self.field.clone(), self.labels(&keep), &rows)
    }

    pub fn delete<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        Ok(self.delete_indices(&self.indices(labels)?))
    }

    pub fn contract<S: AsRef<str>>(&self, labels: &[S]) -> Result<Self> {
        Ok(self.contract_indices(&self.indices(labels)?))
    }

    /// V⊥ under the standard bilinear form.
    pub fn orthogonal_complement(&self) -> Self {
        let n = self.ground.len();
        let ech = super::matrix::Echelon { rows: self.basis.clone(), rank: self.dim(), pivots: self.pivots.clone() };
        let rows = nullspace(&self.field, &ech, n);
        Self::from_rows_unchecked(self.field.clone(), self.ground.clone(), &rows)
    }

    /// Same subspace with columns permuted into the order of `ground`.
    pub fn reorder<S: AsRef<str>>(&self, ground: &[S]) -> Result<Self> {
        if ground.len() != self.ground.len() {
            return Err(Error::InvalidArgument("reordering must list every label once".into()));
        }
        let idx: Vec<usize> = ground
            .iter()
            .map(|l| self.index_of(l.as_ref()).ok_or_else(|| Error::NotASubset(l.as_ref().to_string())))
            .collect::<Result<_>>()?;
        if idx.iter().collect::<BTreeSet<_>>().len() != idx.len() {
            return Err(Error::InvalidArgument("reordering repeats a label".into()));
        }
        Ok(Self::from_rows_unchecked(self.field.clone(), self.labels(&idx), &self.columns(&idx)))
    }

    /// True iff x lies in V.
    pub fn contains(&self, x: &[F::Elem]) -> bool {
        let mut rows = self.basis.clone();
        rows.push(x.to_vec());
        rank(&self.field, &rows, self.ground.len()) == self.dim()
    }

    /// Applies `f` entrywise and recanonicalizes.
    pub fn map_entries<G: Field>(&self, target: G, f: impl Fn(&F::Elem) -> G::Elem) -> Subspace<G> {
        let rows: Vec<Vec<G::Elem>> = self.basis.iter().map(|r| r.iter().map(&f).collect()).collect();
        Subspace::from_rows_unchecked(target, self.ground.clone(), &rows)
    }
}

impl Subspace<GaloisField> {
    /// ψV for ψ = F^e applied coordinatewise.
    pub fn frobenius(&self, e: i64) -> Self {
        let k = self.field.clone();
        self.map_entries(k.clone(), |x| k.frobenius(x, e))
    }

    /// Reinterprets a subspace with prime-field entries over an extension
    /// of the same characteristic.
    pub fn extend_scalars(&self, target: &GaloisField) -> Result<Self> {
        if target.characteristic() != self.field.characteristic() {
            return Err(Error::FieldMismatch);
        }
        if self.field == *target {
            return Ok(self.clone());
        }
        let mut rows = Vec::with_capacity(self.dim());
        for r in &self.basis {
            let mut out: Vec<FieldElement> = Vec::with_capacity(r.len());
            for x in r {
                if !self.field.is_prime_field_element(x) {
                    return Err(Error::InvalidArgument("entries outside the prime field cannot be reinterpreted".into()));
                }
                out.push(target.from_u64(x.coeffs()[0]));
            }
            rows.push(out);
        }
        Ok(Self::from_rows_unchecked(target.clone(), self.ground.clone(), &rows))
    }
}

fn check_ground(ground: &[String]) -> Result<()> {
    let distinct: BTreeSet<&String> = ground.iter().collect();
    if distinct.len() != ground.len() {
        return Err(Error::InvalidArgument("ground labels must be distinct".into()));
    }
    Ok(())
}

/// Block-diagonal sum of subspaces on pairwise disjoint ground sets; the
/// ground set of the result is the concatenation of the parts.
pub fn direct_sum_along_partition<F: Field>(field: &F, parts: &[Subspace<F>]) -> Result<Subspace<F>> {
    let mut ground: Vec<String> = Vec::new();
    let mut seen = BTreeSet::new();
    for part in parts {
        if part.field != *field {
            return Err(Error::FieldMismatch);
        }
        for label in &part.ground {
            if !seen.insert(label.clone()) {
                return Err(Error::OverlappingParts(label.clone()));
            }
            ground.push(label.clone());
        }
    }
    let n = ground.len();
    let mut rows = Vec::new();
    let mut offset = 0;
    for part in parts {
        for r in &part.basis {
            let mut row = vec![field.zero(); n];
            row[offset..offset + r.len()].clone_from_slice(r);
            rows.push(row);
        }
        offset += part.ground.len();
    }
    Ok(Subspace::from_rows_unchecked(field.clone(), ground, &rows))
}
