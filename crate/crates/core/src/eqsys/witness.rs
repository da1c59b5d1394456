use super::builders::{build_finite_all, build_root_of_unity, prime_product, root_of_unity_params};
use super::propagate::{evaluate, plan};
use super::system::EquationSystem;
use super::verify::Assignment;
use crate::algebra::{Field, FieldElement, GaloisField, Ring, SkewPolyRing, SkewPolynomial};
use crate::arith::{is_prime, multiplicative_order};
use crate::error::{Error, Result};

/// A solution in K[F] together with the system it solves.
#[derive(Clone, Debug)]
pub struct SkewWitness {
    pub system: EquationSystem,
    pub ring: SkewPolyRing,
    pub assignment: Assignment<SkewPolynomial>,
}

fn assemble(system: EquationSystem, ring: SkewPolyRing, free: &[(&str, SkewPolynomial)]) -> Result<SkewWitness> {
    let p = plan(&system)?;
    let mut values = Vec::with_capacity(p.free.len());
    for &v in &p.free {
        let name = &system.vars()[v];
        let value = free
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, x)| x.clone())
            .ok_or_else(|| Error::MissingVariable(name.clone()))?;
        values.push(value);
    }
    let vals = evaluate(&ring, &system, &p, &values);
    let assignment = system.vars().iter().cloned().zip(vals).collect();
    Ok(SkewWitness { system, ring, assignment })
}

/// Smallest extension degree m for which GF(p^m) has an element outside
/// GF(p^(n−1)) ∪ GF(p^(n−2)), i.e. m ∤ n−1 and m ∤ n−2.
pub fn finite_all_degree(n: u64) -> usize {
    (2..).find(|&m: &u64| (n - 1) % m != 0 && (n - 2) % m != 0).unwrap() as usize
}

/// y₁ = F, u₁ = βF^(n−1) + γF^(n−2), u₂ = nα with β = (α^(p^(n−1)) − α)⁻¹ and
/// γ = (α^(p^(n−2)) − α)⁻¹; the remaining variables follow from the system.
/// Without `alpha`, the smallest admissible element of `field` is used.
pub fn witness_finite_all(primes: &[u64], field: &GaloisField, alpha: Option<FieldElement>) -> Result<SkewWitness> {
    let n = prime_product(primes)?;
    let p = field.characteristic();
    if primes.contains(&p) {
        return Err(Error::InvalidArgument(format!("characteristic {p} lies in the prime set")));
    }
    let (e1, e2) = ((n - 1) as i64, (n - 2) as i64);
    let admissible = |a: &FieldElement| field.frobenius(a, e1) != *a && field.frobenius(a, e2) != *a;
    let alpha = match alpha {
        Some(a) => {
            if !admissible(&a) {
                return Err(Error::ForbiddenSubfield(format!(
                    "{a} lies in GF({p}^{}) or GF({p}^{})",
                    n - 1,
                    n - 2
                )));
            }
            a
        }
        None => field.elements().find(admissible).ok_or_else(|| {
            Error::ForbiddenSubfield(format!(
                "every element of GF({p}^{}) lies in GF({p}^{}) or GF({p}^{})",
                field.degree(),
                n - 1,
                n - 2
            ))
        })?,
    };
    let inv = |e: i64| field.inv(&field.sub(&field.frobenius(&alpha, e), &alpha)).expect("admissible α");
    let (beta, gamma) = (inv(e1), inv(e2));
    let ring = SkewPolyRing::new(field.clone());
    let n_k = field.from_u64(n % p);
    let y1 = SkewPolynomial::frobenius_symbol(field);
    let u1 = SkewPolynomial::monomial(field, beta, (n - 1) as usize)
        .add(&SkewPolynomial::monomial(field, gamma, (n - 2) as usize));
    let u2 = SkewPolynomial::constant(field, field.mul(&n_k, &alpha));
    assemble(build_finite_all(primes)?, ring, &[("y1", y1), ("u1", u1), ("u2", u2)])
}

/// Witness in GF(p^m')[F] for the root-of-unity system: y₁ a primitive m-th
/// root of unity, z₁ = F. Requires p ∤ n and p ≢ 1 (mod n).
pub fn witness_root_of_unity(n: u64, p: u64) -> Result<SkewWitness> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    let system = build_root_of_unity(n)?;
    if n % p == 0 {
        return Err(Error::NotCoprime { n: n.to_string(), p });
    }
    if p % n == 1 {
        return Err(Error::Obstruction(format!("x^{n}-1 splits in GF({p})")));
    }
    let (m, _) = root_of_unity_params(n);
    let degree = multiplicative_order(p % m, m).ok_or_else(|| Error::NotCoprime { n: m.to_string(), p })?;
    let field = GaloisField::new(p, degree as usize)?;
    let y1 = field.primitive_root_of_unity(m)?;
    let ring = SkewPolyRing::new(field.clone());
    let free = [("y1", SkewPolynomial::constant(&field, y1)), ("z1", SkewPolynomial::frobenius_symbol(&field))];
    assemble(system, ring, &free)
}

#[cfg(test)]
mod tests {
    use super::super::verify::verify_assignment;
    use super::*;

    #[test]
    fn finite_all_over_gf8() {
        let k = GaloisField::new(2, 3).unwrap();
        assert_eq!(finite_all_degree(3), 3);
        let w = witness_finite_all(&[3], &k, None).unwrap();
        let report = verify_assignment(&w.ring, &w.system, &w.assignment).unwrap();
        assert!(report.accepted, "{report:?}");
        for a in k.elements().filter(|a| !k.in_subfield(a, 1)) {
            let w = witness_finite_all(&[3], &k, Some(a)).unwrap();
            assert!(verify_assignment(&w.ring, &w.system, &w.assignment).unwrap().accepted);
        }
        assert_eq!(witness_finite_all(&[3], &k, Some(k.one())).unwrap_err().code(), "forbidden_subfield");
        assert!(witness_finite_all(&[2], &k, None).is_err());
    }

    #[test]
    fn finite_all_matches_closed_forms() {
        let k = GaloisField::new(2, 3).unwrap();
        let alpha = k.generator();
        let w = witness_finite_all(&[3], &k, Some(alpha.clone())).unwrap();
        let n = 3usize;
        let nk = k.from_u64(1);
        let beta = k.inv(&k.sub(&k.frobenius(&alpha, 2), &alpha)).unwrap();
        let gamma = k.inv(&k.sub(&k.frobenius(&alpha, 1), &alpha)).unwrap();
        let mono = |c: FieldElement, d: usize| SkewPolynomial::monomial(&k, c, d);
        let nab = k.mul(&nk, &k.mul(&alpha, &beta));
        let nag = k.mul(&nk, &k.mul(&alpha, &gamma));
        let u4 = mono(k.add(&k.add(&nab, &nk), &beta), n - 1).add(&mono(k.add(&k.add(&nag, &nk), &gamma), n - 2));
        let u5 = mono(nab.clone(), n - 1).add(&mono(nag.clone(), n - 2));
        let u6 = mono(k.one(), n + 1)
            .add(&mono(k.add(&nab, &nk), n - 1))
            .add(&mono(k.add(&nag, &k.sub(&nk, &k.one())), n - 2));
        let u8 = mono(k.one(), n + 1)
            .add(&mono(k.add(&k.add(&nab, &nk), &beta), n - 1))
            .add(&mono(k.add(&k.add(&nag, &nk), &gamma), n - 2));
        assert_eq!(w.assignment["u4"], u4);
        assert_eq!(w.assignment["u5"], u5);
        assert_eq!(w.assignment["u6"], u6);
        assert_eq!(w.assignment["u8"], u8);
    }

    #[test]
    fn root_of_unity_witnesses() {
        for (p, degree) in [(2u64, 6usize), (5, 6), (11, 6)] {
            let w = witness_root_of_unity(3, p).unwrap();
            assert_eq!(w.ring.field().degree(), degree);
            let report = verify_assignment(&w.ring, &w.system, &w.assignment).unwrap();
            assert!(report.accepted, "p={p}: {report:?}");
            assert_ne!(w.assignment["z2"], w.assignment["z3"]);
        }
        for p in [7u64, 13] {
            let err = witness_root_of_unity(3, p).unwrap_err();
            assert_eq!(err, Error::Obstruction(format!("x^3-1 splits in GF({p})")));
        }
        assert_eq!(witness_root_of_unity(3, 3).unwrap_err().code(), "not_coprime");
    }

    #[test]
    fn commutative_evaluation_collapses_z2_and_z3() {
        // Over a commutative field the two z-products coincide.
        let k = GaloisField::new(2, 6).unwrap();
        let s = build_root_of_unity(3).unwrap();
        let p = plan(&s).unwrap();
        let y1 = k.primitive_root_of_unity(9).unwrap();
        let vals = evaluate(&k, &s, &p, &[y1, k.generator()]);
        let z2 = s.var("z2").unwrap();
        let z3 = s.var("z3").unwrap();
        assert_eq!(vals[z2], vals[z3]);
    }
}
