//! Flocks α ↦ V_α over ℤ^E, evaluated lazily: valuation flocks from rational
//! matrices, stretched flocks, dual flocks and explicitly tabulated windows.

mod check;
mod eval;

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::GaloisField;
use crate::error::{Error, Result};
use crate::linalg::{RationalMatrix, Subspace};

pub use check::{
    check_axioms, check_duality, check_stretch, support_matroid, sweep, AxiomReport, CheckOptions, DualityReport,
    StretchReport, Violation, WindowEntry,
};
pub use eval::Evaluator;

/// Default cap on the number of window points evaluated by a sweep.
pub const DEFAULT_POINT_BUDGET: u128 = 10_000;

/// Per-coordinate integer box.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Window {
    lower: Vec<i64>,
    upper: Vec<i64>,
}

impl Window {
    pub fn new(lower: Vec<i64>, upper: Vec<i64>) -> Result<Self> {
        if lower.len() != upper.len() || lower.iter().zip(&upper).any(|(l, u)| l > u) {
            return Err(Error::InvalidArgument("window needs lower ≤ upper in every coordinate".into()));
        }
        Ok(Window { lower, upper })
    }

    /// [lo, hi]^n.
    pub fn cube(n: usize, lo: i64, hi: i64) -> Result<Self> {
        Window::new(vec![lo; n], vec![hi; n])
    }

    /// [−r, r]^n with r ≤ `radius` shrunk until the point count fits `budget`.
    pub fn clamped(n: usize, radius: i64, budget: u128) -> Self {
        let mut r = radius.max(0);
        while r > 0 && (2 * r as u128 + 1).pow(n as u32) > budget {
            r -= 1;
        }
        Window { lower: vec![-r; n], upper: vec![r; n] }
    }

    pub fn lower(&self) -> &[i64] {
        &self.lower
    }

    pub fn upper(&self) -> &[i64] {
        &self.upper
    }

    pub fn dim(&self) -> usize {
        self.lower.len()
    }

    pub fn len(&self) -> u128 {
        self.lower.iter().zip(&self.upper).map(|(l, u)| (u - l + 1) as u128).product()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, alpha: &[i64]) -> bool {
        alpha.len() == self.lower.len()
            && alpha.iter().zip(self.lower.iter().zip(&self.upper)).all(|(a, (l, u))| l <= a && a <= u)
    }

    /// Points in lexicographic order.
    pub fn points(&self) -> Vec<Vec<i64>> {
        let mut out = Vec::with_capacity(self.len() as usize);
        let mut cur = self.lower.clone();
        loop {
            out.push(cur.clone());
            let mut i = cur.len();
            loop {
                if i == 0 {
                    return out;
                }
                i -= 1;
                if cur[i] < self.upper[i] {
                    cur[i] += 1;
                    break;
                }
                cur[i] = self.lower[i];
            }
        }
    }

    /// Coordinatewise scaling of the bounds by m.
    pub fn scaled(&self, m: i64) -> Window {
        Window { lower: self.lower.iter().map(|x| x * m).collect(), upper: self.upper.iter().map(|x| x * m).collect() }
    }
}

#[derive(Clone, Debug)]
pub enum FlockKind {
    /// V_α = p_reduce(matrix, p, α), reinterpreted over the flock's field.
    Valuation { matrix: RationalMatrix, p: u64 },
    /// The stretching of `inner` by `factor`; ψ = F^(flock automorphism).
    Stretched { inner: Arc<Flock>, factor: u64 },
    /// α ↦ (V_(−α))⊥.
    Dual { inner: Arc<Flock> },
    /// Values tabulated on a box.
    Explicit { window: Window, values: BTreeMap<Vec<i64>, Subspace<GaloisField>> },
}

/// A flock over a finite field with automorphism F^e.
#[derive(Clone, Debug)]
pub struct Flock {
    ground: Vec<String>,
    field: GaloisField,
    automorphism: i64,
    dim: usize,
    kind: FlockKind,
}

impl Flock {
    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn field(&self) -> &GaloisField {
        &self.field
    }

    /// Exponent e of the automorphism F^e.
    pub fn automorphism(&self) -> i64 {
        self.automorphism
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn kind(&self) -> &FlockKind {
        &self.kind
    }

    /// Short name of the variant.
    pub fn kind_name(&self) -> &'static str {
        match self.kind {
            FlockKind::Valuation { .. } => "valuation",
            FlockKind::Stretched { .. } => "stretched",
            FlockKind::Dual { .. } => "dual",
            FlockKind::Explicit { .. } => "explicit",
        }
    }

    /// The stretch factor for stretched flocks, 1 otherwise.
    pub fn stretch_factor(&self) -> u64 {
        match &self.kind {
            FlockKind::Stretched { factor, .. } => *factor,
            FlockKind::Dual { inner } => inner.stretch_factor(),
            _ => 1,
        }
    }

    /// Default verification window [−m, m]^E clamped by `budget` points,
    /// with m the stretch factor.
    pub fn default_window(&self, budget: u128) -> Window {
        Window::clamped(self.ground.len(), self.stretch_factor() as i64, budget)
    }

    pub fn at(&self, alpha: &[i64]) -> Result<Subspace<GaloisField>> {
        Evaluator::new().at(self, alpha)
    }

    /// Reinterprets a valuation flock over an extension of GF(p).
    pub fn base_change(&self, field: &GaloisField) -> Result<Flock> {
        match &self.kind {
            FlockKind::Valuation { p, .. } if field.characteristic() == *p => {
                Ok(Flock { field: field.clone(), ..self.clone() })
            }
            FlockKind::Valuation { .. } => Err(Error::FieldMismatch),
            _ => Err(Error::InvalidArgument("only valuation flocks can be base-changed".into())),
        }
    }
}

/// Flock with V_α = p_reduce(A, p, α) and trivial automorphism over GF(p).
pub fn valuation_flock(matrix: RationalMatrix, ground: Vec<String>, p: u64) -> Result<Flock> {
    let field = GaloisField::prime(p)?;
    if ground.len() != matrix.ncols() {
        return Err(Error::InvalidArgument("ground set and matrix width differ".into()));
    }
    if matrix.rank() != matrix.nrows() {
        return Err(Error::DependentRows);
    }
    Ok(Flock { ground, field, automorphism: 0, dim: matrix.nrows(), kind: FlockKind::Valuation { matrix, p } })
}

/// Stretches a φ-linear flock into a ψ-linear one with ψ^m = φ. `psi` is
/// the exponent e' of ψ = F^(e'); by default F⁻¹ is used when compatible,
/// otherwise the smallest compatible nonnegative exponent.
pub fn stretch_flock(f: &Flock, m: u64, psi: Option<i64>) -> Result<Flock> {
    if m == 0 {
        return Err(Error::InvalidArgument("stretch factor must be at least 1".into()));
    }
    let d = f.field.degree() as i64;
    let m_i = m as i64;
    let compatible = |e: i64| (m_i * e - f.automorphism).rem_euclid(d) == 0;
    let e = match psi {
        Some(e) if compatible(e) => e,
        Some(e) => {
            return Err(Error::IncompatibleAutomorphism(format!(
                "(F^{e})^{m} differs from F^{} on GF({}^{d})",
                f.automorphism,
                f.field.characteristic()
            )))
        }
        None if compatible(-1) => -1,
        None => (0..d).find(|&e| compatible(e)).ok_or_else(|| {
            Error::IncompatibleAutomorphism(format!(
                "no power of F on GF({}^{d}) has {m}-th power F^{}",
                f.field.characteristic(),
                f.automorphism
            ))
        })?,
    };
    Ok(Flock {
        ground: f.ground.clone(),
        field: f.field.clone(),
        automorphism: e,
        dim: f.dim,
        kind: FlockKind::Stretched { inner: Arc::new(f.clone()), factor: m },
    })
}

/// α ↦ (V_(−α))⊥, with the automorphism inverted.
pub fn dual_flock(f: &Flock) -> Flock {
    Flock {
        ground: f.ground.clone(),
        field: f.field.clone(),
        automorphism: -f.automorphism,
        dim: f.ground.len() - f.dim,
        kind: FlockKind::Dual { inner: Arc::new(f.clone()) },
    }
}

/// A flock tabulated on a window; every value must have the same dimension.
pub fn explicit_flock(
    ground: Vec<String>,
    field: GaloisField,
    automorphism: i64,
    window: Window,
    values: BTreeMap<Vec<i64>, Subspace<GaloisField>>,
) -> Result<Flock> {
    if window.dim() != ground.len() {
        return Err(Error::InvalidArgument("window dimension differs from the ground set size".into()));
    }
    let mut dim = None;
    for (alpha, v) in &values {
        if !window.contains(alpha) {
            return Err(Error::OutOfWindow(format!("{alpha:?}")));
        }
        if v.field() != &field || v.ground() != ground.as_slice() {
            return Err(Error::InvalidArgument(format!("value at {alpha:?} lives on another field or ground set")));
        }
        match dim {
            None => dim = Some(v.dim()),
            Some(d) if d != v.dim() => {
                return Err(Error::InvalidArgument(format!("value at {alpha:?} has dimension {} ≠ {d}", v.dim())));
            }
            _ => {}
        }
    }
    let missing = window.points().into_iter().find(|a| !values.contains_key(a));
    if let Some(a) = missing {
        return Err(Error::InvalidArgument(format!("window point {a:?} has no value")));
    }
    Ok(Flock {
        ground,
        field,
        automorphism,
        dim: dim.unwrap_or(0),
        kind: FlockKind::Explicit { window, values },
    })
}
