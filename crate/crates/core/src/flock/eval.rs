use std::collections::{BTreeSet, HashMap};
use std::sync::Mutex;

use super::{Flock, FlockKind};
use crate::algebra::GaloisField;
use crate::error::{Error, Result};
use crate::linalg::{direct_sum_along_partition, p_reduce, Subspace};

type Key = (usize, Vec<i64>);

/// Evaluates flocks with a shared memo table keyed by flock node and point.
/// Memoized results are identical to direct evaluation.
#[derive(Default)]
pub struct Evaluator {
    cache: Mutex<HashMap<Key, Subspace<GaloisField>>>,
}

impl Evaluator {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn at(&self, f: &Flock, alpha: &[i64]) -> Result<Subspace<GaloisField>> {
        if alpha.len() != f.ground.len() {
            return Err(Error::InvalidArgument(format!(
                "point has {} coordinates, ground set has {}",
                alpha.len(),
                f.ground.len()
            )));
        }
        let key = (f as *const Flock as usize, alpha.to_vec());
        if let Some(v) = self.cache.lock().expect("memo lock").get(&key) {
            return Ok(v.clone());
        }
        let v = self.compute(f, alpha)?;
        self.cache.lock().expect("memo lock").insert(key, v.clone());
        Ok(v)
    }

    fn compute(&self, f: &Flock, alpha: &[i64]) -> Result<Subspace<GaloisField>> {
        match &f.kind {
            FlockKind::Valuation { matrix, p } => p_reduce(matrix, &f.ground, *p, alpha)?.extend_scalars(&f.field),
            FlockKind::Dual { inner } => {
                let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
                Ok(self.at(inner, &neg)?.orthogonal_complement())
            }
            FlockKind::Explicit { values, .. } => {
                values.get(alpha).cloned().ok_or_else(|| Error::OutOfWindow(format!("{alpha:?}")))
            }
            FlockKind::Stretched { inner, factor } => {
                let m = *factor as i64;
                let base: Vec<i64> = alpha.iter().map(|b| b.div_euclid(m)).collect();
                let r: Vec<i64> = alpha.iter().map(|b| b.rem_euclid(m)).collect();
                let v = self.at(inner, &base)?;
                let mut parts = Vec::with_capacity(m as usize);
                for k in 0..m {
                    let above: BTreeSet<usize> = (0..r.len()).filter(|&i| r[i] > k).collect();
                    let below: Vec<String> = (0..r.len()).filter(|&i| r[i] < k).map(|i| f.ground[i].clone()).collect();
                    let piece = v.contract_indices(&above).delete(&below)?;
                    parts.push(piece.frobenius(k * f.automorphism));
                }
                direct_sum_along_partition(&f.field, &parts)?.reorder(&f.ground)
            }
        }
    }
}
