use std::collections::BTreeMap;

use num_bigint::BigUint;
use rayon::prelude::*;

use super::propagate::{evaluate, plan};
use super::system::{EquationKind, EquationSystem, X0, X1};
use crate::algebra::{FieldElement, GaloisField, Ring};
use crate::error::{Error, Result};

/// Values keyed by variable name.
pub type Assignment<E> = BTreeMap<String, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ViolatedEquation {
    /// Equation index, or `None` for the forced constants x0 = 0, x1 = 1.
    pub index: Option<usize>,
    pub text: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub violated: Vec<ViolatedEquation>,
    pub collisions: Vec<(String, String)>,
    pub accepted: bool,
}

/// Checks the forced constants, every equation (in written operand order)
/// and pairwise distinctness.
pub fn verify_assignment<R: Ring>(ring: &R, s: &EquationSystem, a: &Assignment<R::Elem>) -> Result<VerificationReport> {
    let vals: Vec<&R::Elem> = s
        .vars()
        .iter()
        .map(|name| a.get(name).ok_or_else(|| Error::MissingVariable(name.clone())))
        .collect::<Result<_>>()?;
    Ok(verify_values(ring, s, &vals))
}

pub(crate) fn verify_values<R: Ring>(ring: &R, s: &EquationSystem, vals: &[&R::Elem]) -> VerificationReport {
    let mut violated = Vec::new();
    if !ring.is_zero(vals[X0]) {
        violated.push(ViolatedEquation { index: None, text: "x0 = 0".into() });
    }
    if !ring.is_one(vals[X1]) {
        violated.push(ViolatedEquation { index: None, text: "x1 = 1".into() });
    }
    for (idx, e) in s.equations().iter().enumerate() {
        let rhs = match e.kind {
            EquationKind::Sum => ring.add(vals[e.left], vals[e.right]),
            EquationKind::Product => ring.mul(vals[e.left], vals[e.right]),
        };
        if rhs != *vals[e.target] {
            violated.push(ViolatedEquation { index: Some(idx), text: s.render(e) });
        }
    }
    let mut collisions = Vec::new();
    for i in 0..vals.len() {
        for j in i + 1..vals.len() {
            if vals[i] == vals[j] {
                collisions.push((s.vars()[i].clone(), s.vars()[j].clone()));
            }
        }
    }
    let accepted = violated.is_empty() && collisions.is_empty();
    VerificationReport { violated, collisions, accepted }
}

/// Cheap acceptance test used inside searches.
fn accepts<R: Ring>(ring: &R, s: &EquationSystem, vals: &[R::Elem]) -> bool {
    for e in s.equations() {
        let rhs = match e.kind {
            EquationKind::Sum => ring.add(&vals[e.left], &vals[e.right]),
            EquationKind::Product => ring.mul(&vals[e.left], &vals[e.right]),
        };
        if rhs != vals[e.target] {
            return false;
        }
    }
    (0..vals.len()).all(|i| (i + 1..vals.len()).all(|j| vals[i] != vals[j]))
}

/// All accepting assignments with free variables ranging over `field`,
/// ordered lexicographically by the tuple of free values. Fails when
/// |field|^(free count) exceeds `limit`.
pub fn search_solutions(
    s: &EquationSystem,
    field: &GaloisField,
    limit: u128,
    max_results: Option<usize>,
) -> Result<Vec<Assignment<FieldElement>>> {
    let p = plan(s)?;
    let size = field.order().pow(p.free.len() as u32);
    if size > BigUint::from(limit) {
        return Err(Error::SearchTooLarge(size.to_string()));
    }
    let elements: Vec<FieldElement> = field.elements().collect();
    let f = p.free.len();
    let total = elements.len().pow(f as u32);
    let decode = |mut index: usize| -> Vec<FieldElement> {
        let mut tuple = vec![field.zero(); f];
        for slot in tuple.iter_mut().rev() {
            *slot = elements[index % elements.len()].clone();
            index /= elements.len();
        }
        tuple
    };
    let hits: Vec<usize> = (0..total)
        .into_par_iter()
        .filter(|&idx| {
            let vals = evaluate(field, s, &p, &decode(idx));
            accepts(field, s, &vals)
        })
        .collect();
    let cap = max_results.unwrap_or(usize::MAX);
    Ok(hits
        .into_iter()
        .take(cap)
        .map(|idx| {
            let vals = evaluate(field, s, &p, &decode(idx));
            s.vars().iter().cloned().zip(vals).collect()
        })
        .collect())
}
