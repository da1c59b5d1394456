//! JSON forms of fields, matrices, matroids, systems, assignments and flocks.
//! Input objects have typed forms; reports are rendered to `serde_json::Value`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{
    decimal_string, format_rational, parse_rational, FieldElement, GaloisField, IntPolynomial, SkewPolynomial,
};
use crate::brylawski::{BrylawskiMatrix, GbReport, RigidityReport};
use crate::density::{DensityReport, GreedyResult};
use crate::eqsys::{Assignment, Equation, EquationKind, EquationSystem};
use crate::error::{Error, Result};
use crate::flock::{explicit_flock, Flock, FlockKind, Window, WindowEntry};
use crate::linalg::{RationalMatrix, Subspace};
use crate::matroid::Matroid;

pub const SCHEMA_VERSION: &str = "1";

fn parse_err(e: impl std::fmt::Display) -> Error {
    Error::Parse(e.to_string())
}

fn parse_u64(text: &str) -> Result<u64> {
    text.trim().parse().map_err(|_| Error::Parse(format!("not an integer: {text}")))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub m: usize,
    /// Monic modulus, little-endian coefficients as decimal text.
    pub modulus: Vec<String>,
}

impl FieldJson {
    pub fn from_field(f: &GaloisField) -> Self {
        FieldJson {
            p: f.characteristic(),
            m: f.degree(),
            modulus: f.modulus().coeffs().iter().map(|c| c.to_string()).collect(),
        }
    }

    pub fn to_field(&self) -> Result<GaloisField> {
        let coeffs: Vec<u64> = self.modulus.iter().map(|c| parse_u64(c)).collect::<Result<_>>()?;
        let f = GaloisField::with_modulus(self.p, &coeffs)?;
        if f.degree() != self.m {
            return Err(Error::Parse(format!("modulus degree {} ≠ m = {}", f.degree(), self.m)));
        }
        Ok(f)
    }
}

pub fn element_to_json(x: &FieldElement) -> Vec<String> {
    x.coeffs().iter().map(|c| c.to_string()).collect()
}

pub fn element_from_json(field: &GaloisField, coeffs: &[String]) -> Result<FieldElement> {
    if coeffs.len() > field.degree() {
        return Err(Error::Parse(format!("{} coefficients for a degree {} field", coeffs.len(), field.degree())));
    }
    let c: Vec<u64> = coeffs.iter().map(|c| parse_u64(c)).collect::<Result<_>>()?;
    Ok(field.element(&c))
}

/// Entry text of a field element: its polynomial in t, e.g. "2", "t+1".
pub fn element_text(field: &GaloisField, x: &FieldElement) -> String {
    field.display(x)
}

pub fn element_from_text(field: &GaloisField, text: &str) -> Result<FieldElement> {
    let poly = IntPolynomial::parse(text)?.reduce_mod(field.characteristic());
    let reduced = poly.rem(field.modulus());
    Ok(field.element(reduced.coeffs()))
}

pub fn skew_to_json(x: &SkewPolynomial) -> Vec<Vec<String>> {
    x.coeffs().iter().map(element_to_json).collect()
}

pub fn skew_from_json(field: &GaloisField, coeffs: &[Vec<String>]) -> Result<SkewPolynomial> {
    let c = coeffs.iter().map(|c| element_from_json(field, c)).collect::<Result<_>>()?;
    Ok(SkewPolynomial::new(field, c))
}

/// "Q" or a finite field descriptor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldTag {
    Finite(FieldJson),
    Named(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatrixJson {
    pub field: FieldTag,
    pub ground: Vec<String>,
    pub rows: Vec<Vec<String>>,
}

impl MatrixJson {
    pub fn from_subspace(v: &Subspace<GaloisField>) -> Self {
        let f = v.field();
        MatrixJson {
            field: FieldTag::Finite(FieldJson::from_field(f)),
            ground: v.ground().to_vec(),
            rows: v.basis().iter().map(|r| r.iter().map(|x| element_text(f, x)).collect()).collect(),
        }
    }

    pub fn from_rational(m: &RationalMatrix, ground: &[String]) -> Self {
        MatrixJson {
            field: FieldTag::Named("Q".into()),
            ground: ground.to_vec(),
            rows: m.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
        }
    }

    pub fn from_brylawski(m: &BrylawskiMatrix) -> Self {
        MatrixJson {
            field: FieldTag::Named("Q".into()),
            ground: m.labels.clone(),
            rows: m.rows().iter().map(|r| r.iter().map(BigInt::to_string).collect()).collect(),
        }
    }

    fn check_shape(&self) -> Result<()> {
        if self.rows.iter().any(|r| r.len() != self.ground.len()) {
            return Err(Error::Parse("row length differs from the ground set size".into()));
        }
        Ok(())
    }

    pub fn is_rational(&self) -> bool {
        matches!(&self.field, FieldTag::Named(n) if n == "Q")
    }

    pub fn to_rational(&self) -> Result<RationalMatrix> {
        if !self.is_rational() {
            return Err(Error::Parse("expected a matrix over Q".into()));
        }
        self.check_shape()?;
        let rows: Vec<Vec<BigRational>> =
            self.rows.iter().map(|r| r.iter().map(|x| parse_rational(x)).collect()).collect::<Result<_>>()?;
        RationalMatrix::new(self.ground.len(), rows)
    }

    pub fn finite_field(&self) -> Result<GaloisField> {
        match &self.field {
            FieldTag::Finite(f) => f.to_field(),
            FieldTag::Named(n) => Err(Error::Parse(format!("expected a finite field, got {n}"))),
        }
    }

    pub fn to_subspace(&self) -> Result<Subspace<GaloisField>> {
        self.check_shape()?;
        let f = self.finite_field()?;
        let rows: Vec<Vec<FieldElement>> =
            self.rows.iter().map(|r| r.iter().map(|x| element_from_text(&f, x)).collect()).collect::<Result<_>>()?;
        Subspace::new(f, self.ground.clone(), &rows)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub ground: Vec<String>,
    pub rank: usize,
    pub bases: Vec<Vec<String>>,
}

impl MatroidJson {
    pub fn from_matroid(m: &Matroid) -> Self {
        MatroidJson { ground: m.ground().to_vec(), rank: m.rank(), bases: m.basis_labels() }
    }

    pub fn to_matroid(&self) -> Result<Matroid> {
        let m = Matroid::new(self.ground.clone(), &self.bases)?;
        if m.rank() != self.rank {
            return Err(Error::Parse(format!("bases have size {}, rank says {}", m.rank(), self.rank)));
        }
        Ok(m)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquationJson {
    pub kind: String,
    pub target: String,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SystemJson {
    pub vars: Vec<String>,
    pub equations: Vec<EquationJson>,
}

impl SystemJson {
    pub fn from_system(s: &EquationSystem) -> Self {
        let name = |i: usize| s.vars()[i].clone();
        SystemJson {
            vars: s.vars().to_vec(),
            equations: s
                .equations()
                .iter()
                .map(|e| EquationJson {
                    kind: e.kind.as_str().into(),
                    target: name(e.target),
                    left: name(e.left),
                    right: name(e.right),
                })
                .collect(),
        }
    }

    pub fn to_system(&self) -> Result<EquationSystem> {
        let index = |n: &str| -> Result<usize> {
            self.vars.iter().position(|v| v == n).ok_or_else(|| Error::MissingVariable(n.to_string()))
        };
        let equations = self
            .equations
            .iter()
            .map(|e| {
                let kind = match e.kind.as_str() {
                    "sum" => EquationKind::Sum,
                    "product" => EquationKind::Product,
                    other => return Err(Error::Parse(format!("unknown equation kind {other}"))),
                };
                Ok(Equation { kind, target: index(&e.target)?, left: index(&e.left)?, right: index(&e.right)? })
            })
            .collect::<Result<_>>()?;
        EquationSystem::from_parts(self.vars.clone(), equations)
    }
}

/// Ring tag of an assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum RingJson {
    /// Values are coefficient arrays.
    Field { field: FieldJson },
    /// Values are arrays of coefficient arrays, lowest power of F first.
    Skew { field: FieldJson },
    /// Values are polynomial text in t.
    IntPoly,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AssignmentJson {
    pub ring: RingJson,
    pub values: BTreeMap<String, Value>,
}

/// Parsed assignment with its ring.
pub enum TypedAssignment {
    Field(GaloisField, Assignment<FieldElement>),
    Skew(GaloisField, Assignment<SkewPolynomial>),
    IntPoly(Assignment<IntPolynomial>),
}

impl AssignmentJson {
    pub fn field(field: &GaloisField, a: &Assignment<FieldElement>) -> Self {
        AssignmentJson {
            ring: RingJson::Field { field: FieldJson::from_field(field) },
            values: a.iter().map(|(k, v)| (k.clone(), json!(element_to_json(v)))).collect(),
        }
    }

    pub fn skew(field: &GaloisField, a: &Assignment<SkewPolynomial>) -> Self {
        AssignmentJson {
            ring: RingJson::Skew { field: FieldJson::from_field(field) },
            values: a.iter().map(|(k, v)| (k.clone(), json!(skew_to_json(v)))).collect(),
        }
    }

    pub fn int_poly(a: &[(String, IntPolynomial)]) -> Self {
        AssignmentJson { ring: RingJson::IntPoly, values: a.iter().map(|(k, v)| (k.clone(), json!(v.to_string()))).collect() }
    }

    pub fn parse(&self) -> Result<TypedAssignment> {
        match &self.ring {
            RingJson::Field { field } => {
                let f = field.to_field()?;
                let mut out = Assignment::new();
                for (k, v) in &self.values {
                    let c: Vec<String> = serde_json::from_value(v.clone()).map_err(parse_err)?;
                    out.insert(k.clone(), element_from_json(&f, &c)?);
                }
                Ok(TypedAssignment::Field(f, out))
            }
            RingJson::Skew { field } => {
                let f = field.to_field()?;
                let mut out = Assignment::new();
                for (k, v) in &self.values {
                    let c: Vec<Vec<String>> = serde_json::from_value(v.clone()).map_err(parse_err)?;
                    out.insert(k.clone(), skew_from_json(&f, &c)?);
                }
                Ok(TypedAssignment::Skew(f, out))
            }
            RingJson::IntPoly => {
                let mut out = Assignment::new();
                for (k, v) in &self.values {
                    let text = v.as_str().ok_or_else(|| Error::Parse(format!("value of {k} is not text")))?;
                    out.insert(k.clone(), IntPolynomial::parse(text)?);
                }
                Ok(TypedAssignment::IntPoly(out))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExplicitValueJson {
    pub alpha: Vec<i64>,
    pub rows: Vec<Vec<String>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum FlockJson {
    Valuation {
        ground: Vec<String>,
        p: u64,
        /// Rational entries as "a/b" text.
        rows: Vec<Vec<String>>,
        /// Field the subspaces are read in; GF(p) when absent.
        #[serde(default, skip_serializing_if = "Option::is_none")]
        field: Option<FieldJson>,
    },
    Stretched {
        inner: Box<FlockJson>,
        factor: u64,
        psi: i64,
    },
    Dual {
        inner: Box<FlockJson>,
    },
    Explicit {
        ground: Vec<String>,
        field: FieldJson,
        automorphism: i64,
        lower: Vec<i64>,
        upper: Vec<i64>,
        values: Vec<ExplicitValueJson>,
    },
}

impl FlockJson {
    pub fn from_flock(f: &Flock) -> Self {
        match f.kind() {
            FlockKind::Valuation { matrix, p } => FlockJson::Valuation {
                ground: f.ground().to_vec(),
                p: *p,
                rows: matrix.rows().iter().map(|r| r.iter().map(format_rational).collect()).collect(),
                field: (f.field().degree() > 1).then(|| FieldJson::from_field(f.field())),
            },
            FlockKind::Stretched { inner, factor } => FlockJson::Stretched {
                inner: Box::new(FlockJson::from_flock(inner)),
                factor: *factor,
                psi: f.automorphism(),
            },
            FlockKind::Dual { inner } => FlockJson::Dual { inner: Box::new(FlockJson::from_flock(inner)) },
            FlockKind::Explicit { window, values } => FlockJson::Explicit {
                ground: f.ground().to_vec(),
                field: FieldJson::from_field(f.field()),
                automorphism: f.automorphism(),
                lower: window.lower().to_vec(),
                upper: window.upper().to_vec(),
                values: values
                    .iter()
                    .map(|(a, v)| ExplicitValueJson { alpha: a.clone(), rows: MatrixJson::from_subspace(v).rows })
                    .collect(),
            },
        }
    }

    pub fn to_flock(&self) -> Result<Flock> {
        match self {
            FlockJson::Valuation { ground, p, rows, field } => {
                let m = MatrixJson { field: FieldTag::Named("Q".into()), ground: ground.clone(), rows: rows.clone() };
                let f = crate::flock::valuation_flock(m.to_rational()?, ground.clone(), *p)?;
                match field {
                    Some(fj) => f.base_change(&fj.to_field()?),
                    None => Ok(f),
                }
            }
            FlockJson::Stretched { inner, factor, psi } => {
                crate::flock::stretch_flock(&inner.to_flock()?, *factor, Some(*psi))
            }
            FlockJson::Dual { inner } => Ok(crate::flock::dual_flock(&inner.to_flock()?)),
            FlockJson::Explicit { ground, field, automorphism, lower, upper, values } => {
                let fj = field.clone();
                let f = fj.to_field()?;
                let mut table = BTreeMap::new();
                for v in values {
                    let m = MatrixJson { field: FieldTag::Finite(fj.clone()), ground: ground.clone(), rows: v.rows.clone() };
                    table.insert(v.alpha.clone(), m.to_subspace()?);
                }
                let w = Window::new(lower.clone(), upper.clone())?;
                explicit_flock(ground.clone(), f, *automorphism, w, table)
            }
        }
    }
}

pub fn rational_json(x: &BigRational, digits: usize) -> Value {
    json!({ "exact": format_rational(x), "decimal": decimal_string(x, digits) })
}

pub fn window_json(w: &Window) -> Value {
    json!({ "lower": w.lower(), "upper": w.upper(), "points": w.len().to_string() })
}

pub fn window_entry_json(e: &WindowEntry) -> Value {
    json!({
        "alpha": e.alpha,
        "basis": MatrixJson::from_subspace(&e.subspace),
        "bases": e.matroid.basis_labels(),
    })
}

pub fn gb_report_json(r: &GbReport) -> Value {
    json!({
        "primes": r.primes,
        "n": r.n.to_string(),
        "s": r.s,
        "verdict": r.verdict,
        "witness": r.witness.as_ref().map(|w| json!({"i": w.i, "j": w.j, "prime": w.prime, "residue": w.residue})),
        "exempt_pairs": r.exempt_differences.iter().map(|((i, j), d)| json!({"i": i, "j": j, "difference": d.to_string()})).collect::<Vec<_>>(),
    })
}

pub fn rigidity_json(r: &RigidityReport) -> Value {
    json!({
        "primes": r.primes,
        "p": r.p,
        "n": r.n.to_string(),
        "s": r.s,
        "passed": r.passed,
        "checks": r.checks.len(),
        "failures": r.failures().map(|c| json!({
            "kind": c.kind,
            "columns": c.columns,
            "value": c.value.as_ref().map(|v| v.to_string()),
            "expect_zero": c.expect_zero,
        })).collect::<Vec<_>>(),
        "final_minor": r.final_minor.to_string(),
        "final_minor_mod_p": r.final_minor_mod_p,
        "n_odd": r.n_odd,
    })
}

pub fn density_json(r: &DensityReport) -> Value {
    json!({
        "moduli": r.moduli,
        "cutoff": r.cutoff,
        "primes_below": r.primes_below,
        "in_set": r.in_set,
        "empirical": rational_json(&r.empirical, 6),
        "theoretical": r.theoretical.as_ref().map(|t| rational_json(t, 6)),
    })
}

pub fn greedy_json(r: &GreedyResult) -> Value {
    json!({
        "alpha": rational_json(&r.alpha, 6),
        "eps": rational_json(&r.eps, 6),
        "start_index": r.start_index,
        "primes": r.primes,
        "count": r.primes.len(),
        "product": rational_json(&r.product, 6),
        "error": rational_json(&r.error, 6),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::flock::{stretch_flock, valuation_flock};

    #[test]
    fn field_round_trip() {
        let f = GaloisField::new(3, 2).unwrap();
        let j = FieldJson::from_field(&f);
        assert_eq!(j.modulus, ["1", "0", "1"].map(String::from));
        assert_eq!(j.to_field().unwrap(), f);
        let x = f.generator();
        assert_eq!(element_from_json(&f, &element_to_json(&x)).unwrap(), x);
        assert_eq!(element_from_text(&f, &element_text(&f, &x)).unwrap(), x);
        assert_eq!(element_from_text(&f, "t^2").unwrap(), f.mul(&x, &x));
    }

    #[test]
    fn matrix_and_matroid_round_trip() {
        let a = RationalMatrix::from_i64s(&[&[1, 0, 1, 1], &[0, 1, 1, 2]]);
        let ground: Vec<String> = ["a", "b", "c", "d"].map(String::from).to_vec();
        let j = MatrixJson::from_rational(&a, &ground);
        let text = serde_json::to_string(&j).unwrap();
        assert!(text.contains("\"field\":\"Q\""));
        let back: MatrixJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_rational().unwrap(), a);
        let m = Matroid::uniform(2, 4);
        assert_eq!(MatroidJson::from_matroid(&m).to_matroid().unwrap(), m);
    }

    #[test]
    fn system_and_flock_round_trip() {
        let s = crate::eqsys::build_phi_n(3).unwrap();
        let j = SystemJson::from_system(&s);
        assert_eq!(j.to_system().unwrap(), s);
        let gf4 = GaloisField::new(2, 2).unwrap();
        let a = RationalMatrix::from_i64s(&[&[1, 1]]);
        let f = valuation_flock(a, vec!["1".into(), "2".into()], 2).unwrap().base_change(&gf4).unwrap();
        let st = stretch_flock(&f, 2, None).unwrap();
        let text = serde_json::to_string(&FlockJson::from_flock(&st)).unwrap();
        let back: FlockJson = serde_json::from_str(&text).unwrap();
        let g = back.to_flock().unwrap();
        for alpha in Window::cube(2, -2, 2).unwrap().points() {
            assert_eq!(g.at(&alpha).unwrap(), st.at(&alpha).unwrap());
        }
    }
}
