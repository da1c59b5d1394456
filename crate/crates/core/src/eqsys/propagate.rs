use num_bigint::BigUint;

use super::system::{EquationKind, EquationSystem, X0, X1};
use crate::algebra::{FpPolynomial, IntPolyRing, IntPolynomial, Ring};
use crate::error::{Error, Result};

/// How a system is evaluated: free variables are never a definition target;
/// each other variable is defined by its first equation; later equations
/// with an already-defined target are constraints.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Plan {
    pub free: Vec<usize>,
    pub definitions: Vec<usize>,
    pub constraints: Vec<usize>,
}

pub fn plan(s: &EquationSystem) -> Result<Plan> {
    let n = s.vars().len();
    let mut is_target = vec![false; n];
    for e in s.equations() {
        is_target[e.target] = true;
    }
    let free: Vec<usize> = (2..n).filter(|&v| !is_target[v]).collect();
    let mut defined = vec![false; n];
    defined[X0] = true;
    defined[X1] = true;
    for &v in &free {
        defined[v] = true;
    }
    let mut definitions = Vec::new();
    let mut constraints = Vec::new();
    for (idx, e) in s.equations().iter().enumerate() {
        if defined[e.target] {
            constraints.push(idx);
            continue;
        }
        for operand in [e.left, e.right] {
            if !defined[operand] {
                return Err(Error::NotTriangular(format!(
                    "equation {idx} ({}) uses {} before it is defined",
                    s.render(e),
                    s.vars()[operand]
                )));
            }
        }
        defined[e.target] = true;
        definitions.push(idx);
    }
    Ok(Plan { free, definitions, constraints })
}


/// Values of every variable given values for the free ones (in plan order).
pub fn evaluate<R: Ring>(ring: &R, s: &EquationSystem, plan: &Plan, free_values: &[R::Elem]) -> Vec<R::Elem> {
    assert_eq!(free_values.len(), plan.free.len(), "one value per free variable");
    let mut vals: Vec<Option<R::Elem>> = vec![None; s.vars().len()];
    vals[X0] = Some(ring.zero());
    vals[X1] = Some(ring.one());
    for (&v, x) in plan.free.iter().zip(free_values) {
        vals[v] = Some(x.clone());
    }
    for &idx in &plan.definitions {
        let e = s.equations()[idx];
        let a = vals[e.left].as_ref().expect("triangular");
        let b = vals[e.right].as_ref().expect("triangular");
        vals[e.target] = Some(match e.kind {
            EquationKind::Sum => ring.add(a, b),
            EquationKind::Product => ring.mul(a, b),
        });
    }
    vals.into_iter().map(|v| v.expect("every variable is constant, free or defined")).collect()
}

/// Values of all variables as polynomials in t, with y₁ ↦ t. The system must
/// have y₁ as its only free variable.
pub fn propagate_symbolic(s: &EquationSystem) -> Result<Vec<(String, IntPolynomial)>> {
    let p = plan(s)?;
    let y1 = s.var("y1").ok_or_else(|| Error::NotTriangular("system has no variable y1".into()))?;
    if p.free != [y1] {
        let names: Vec<&str> = p.free.iter().map(|&v| s.vars()[v].as_str()).collect();
        return Err(Error::NotTriangular(format!("free variables {names:?}; expected exactly y1")));
    }
    let vals = evaluate(&IntPolyRing, s, &p, &[IntPolynomial::t()]);
    Ok(s.vars().iter().cloned().zip(vals).collect())
}

/// Difference polynomial of one pair of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairDifference {
    pub left: String,
    pub right: String,
    pub difference: IntPolynomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrimeVerdict {
    pub prime: u64,
    /// True iff every difference stays nonzero mod p.
    pub all_nonzero: bool,
    /// First pair (in pair order) whose difference vanishes mod p.
    pub first_vanishing: Option<(String, String)>,
}

/// Differences of all propagated values: any t avoiding the (at most
/// `degree_bound`) roots of these polynomials gives distinct values.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadSetCertificate {
    pub differences: Vec<PairDifference>,
    pub verdicts: Vec<PrimeVerdict>,
    pub degree_bound: BigUint,
}

pub fn bad_set_certificate(s: &EquationSystem, primes: &[u64]) -> Result<BadSetCertificate> {
    let values = propagate_symbolic(s)?;
    let mut differences = Vec::new();
    for i in 0..values.len() {
        for j in i + 1..values.len() {
            differences.push(PairDifference {
                left: values[i].0.clone(),
                right: values[j].0.clone(),
                difference: values[i].1.sub(&values[j].1),
            });
        }
    }
    let degree_bound = differences.iter().map(|d| BigUint::from(d.difference.degree().unwrap_or(0))).sum();
    let verdicts = primes
        .iter()
        .map(|&p| {
            let first = differences.iter().find(|d| d.difference.reduce_mod(p).is_zero());
            PrimeVerdict {
                prime: p,
                all_nonzero: first.is_none(),
                first_vanishing: first.map(|d| (d.left.clone(), d.right.clone())),
            }
        })
        .collect();
    Ok(BadSetCertificate { differences, verdicts, degree_bound })
}

/// Reduction of a propagated value table into GF(p)[t].
pub fn reduce_values(values: &[(String, IntPolynomial)], p: u64) -> Vec<(String, FpPolynomial)> {
    values.iter().map(|(n, v)| (n.clone(), v.reduce_mod(p))).collect()
}

#[cfg(test)]
mod tests {
    use super::super::builders::*;
    use super::*;

    fn value(vals: &[(String, IntPolynomial)], name: &str) -> IntPolynomial {
        vals.iter().find(|(n, _)| n == name).unwrap().1.clone()
    }

    fn closed_form(n: i64, a: i64, b: i64) -> IntPolynomial {
        let n = n as usize;
        IntPolynomial::monomial(1.into(), n + 1)
            .add(&IntPolynomial::monomial(a.into(), n - 1))
            .add(&IntPolynomial::monomial(b.into(), n - 2))
    }

    #[test]
    fn value_table_for_phi3() {
        let vals = propagate_symbolic(&build_phi_n(3).unwrap()).unwrap();
        assert_eq!(value(&vals, "w").to_string(), "t^4+3t^2+2t");
        assert_eq!(value(&vals, "z2").to_string(), "t^2+t");
        assert_eq!(value(&vals, "w3").to_string(), "t^4+2t^2+t");
        assert_eq!(value(&vals, "y4").sub(&value(&vals, "z1")).to_string(), "t^4-t-1");
    }

    #[test]
    fn phi2_value() {
        let vals = propagate_symbolic(&build_phi_n(2).unwrap()).unwrap();
        assert_eq!(value(&vals, "w").to_string(), "t^3+2t+1");
    }

    #[test]
    fn closed_forms_up_to_forty() {
        for n in 2..=40i64 {
            let vals = propagate_symbolic(&build_phi_n(n as u64).unwrap()).unwrap();
            assert_eq!(value(&vals, "w"), closed_form(n, n, n - 1), "w for n={n}");
            assert_eq!(value(&vals, &format!("w{}", 2 * n - 3)), closed_form(n, n - 1, n - 2), "w_(2n-3) for n={n}");
        }
    }

    #[test]
    fn extra_free_variables_are_rejected() {
        let s = build_finite_all(&[3]).unwrap();
        assert_eq!(propagate_symbolic(&s).unwrap_err().code(), "not_triangular");
        let mut bad = EquationSystem::new();
        bad.sum("a", "b", "x1");
        bad.sum("b", "y1", "x1");
        assert_eq!(plan(&bad).unwrap_err().code(), "not_triangular");
    }

    #[test]
    fn plan_splits_constraints() {
        let s = build_finite_all(&[3]).unwrap();
        let p = plan(&s).unwrap();
        let names: Vec<&str> = p.free.iter().map(|&v| s.vars()[v].as_str()).collect();
        assert_eq!(names, ["y1", "u1", "u2"]);
        assert_eq!(p.constraints.len(), 1);
        assert_eq!(s.render(&s.equations()[p.constraints[0]]), "u8 = u7 + u1");
    }

    #[test]
    fn bad_set_examples() {
        let cert = bad_set_certificate(&build_phi_n(3).unwrap(), &[7]).unwrap();
        assert!(cert.verdicts[0].all_nonzero);
        let d = cert.differences.iter().find(|d| d.left == "y4" && d.right == "z1").unwrap();
        assert_eq!(d.difference.reduce_mod(7).to_string(), "t^4+6t+6");
        let cert2 = bad_set_certificate(&build_phi_n(2).unwrap(), &[2, 3, 5]).unwrap();
        assert!(cert2.differences.iter().any(|d| d.left == "y2" && d.right == "w" && d.difference.to_string() == "-t^3+t^2-2t-1"));
        assert!(cert2.verdicts.iter().all(|v| v.all_nonzero));
    }

    #[test]
    fn bad_set_bound_is_below_field_size_for_c3() {
        let cert = bad_set_certificate(&build_finite(&[3]).unwrap(), &[3]).unwrap();
        assert!(cert.degree_bound < BigUint::from(729u32), "{}", cert.degree_bound);
    }
}
