use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::eval::Evaluator;
use super::{dual_flock, Flock, FlockKind, Window};
use crate::algebra::GaloisField;
use crate::error::{Error, Result};
use crate::linalg::Subspace;
use crate::matroid::{k_subsets, matroid_from_subspace, Matroid, DEFAULT_ENUMERATION_LIMIT, DEFAULT_EXCHANGE_LIMIT};

#[derive(Clone, Debug)]
pub struct CheckOptions {
    /// Number of random subsets I tested for LF1' when 2^|E| > 64.
    pub lf1_prime_samples: usize,
    pub seed: u64,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions { lf1_prime_samples: 32, seed: 0 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    /// "LF1", "LF2", "LF1'" or "dimension".
    pub axiom: &'static str,
    pub alpha: Vec<i64>,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct AxiomReport {
    pub window: Window,
    pub points: u128,
    pub lf1_checks: usize,
    pub lf2_checks: usize,
    pub lf1_prime_checks: usize,
    /// Subsets I used for LF1', as label lists.
    pub lf1_prime_subsets: Vec<Vec<String>>,
    /// Checks skipped because a needed point lies outside a tabulated window.
    pub skipped: usize,
    pub violations: Vec<Violation>,
}

impl AxiomReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

fn lf1_prime_subsets(n: usize, opts: &CheckOptions) -> Vec<u64> {
    if n <= 6 {
        return (0..1u64 << n).collect();
    }
    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mask = if n >= 64 { u64::MAX } else { (1u64 << n) - 1 };
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    let mut attempts = 0;
    while out.len() < opts.lf1_prime_samples && attempts < 64 * opts.lf1_prime_samples.max(1) {
        attempts += 1;
        let s = rng.gen::<u64>() & mask;
        if seen.insert(s) {
            out.push(s);
        }
    }
    out
}

fn bits(set: u64, n: usize) -> BTreeSet<usize> {
    (0..n).filter(|i| set >> i & 1 == 1).collect()
}

enum Outcome {
    Holds,
    Fails,
    Skipped,
}

fn compare(lhs: Result<Subspace<GaloisField>>, rhs: Result<Subspace<GaloisField>>) -> Result<Outcome> {
    match (lhs, rhs) {
        (Ok(a), Ok(b)) => Ok(if a == b { Outcome::Holds } else { Outcome::Fails }),
        (Err(Error::OutOfWindow(_)), _) | (_, Err(Error::OutOfWindow(_))) => Ok(Outcome::Skipped),
        (Err(e), _) | (_, Err(e)) => Err(e),
    }
}

#[derive(Default)]
struct PointResult {
    lf1: usize,
    lf2: usize,
    lf1p: usize,
    skipped: usize,
    violations: Vec<Violation>,
}

/// Verifies LF1 for every α ∈ w and i ∈ E, LF2 for every α ∈ w, and LF1'
/// for a set of subsets I (all of them when 2^|E| ≤ 64).
pub fn check_axioms(f: &Flock, w: &Window, opts: &CheckOptions) -> Result<AxiomReport> {
    let n = f.ground().len();
    if w.dim() != n {
        return Err(Error::InvalidArgument("window dimension differs from the ground set size".into()));
    }
    let subsets = lf1_prime_subsets(n, opts);
    let ev = Evaluator::new();
    let results: Vec<PointResult> = w
        .points()
        .into_par_iter()
        .map(|alpha| check_point(f, &ev, &alpha, &subsets))
        .collect::<Result<_>>()?;
    let mut report = AxiomReport {
        window: w.clone(),
        points: w.len(),
        lf1_checks: 0,
        lf2_checks: 0,
        lf1_prime_checks: 0,
        lf1_prime_subsets: subsets.iter().map(|&s| bits(s, n).into_iter().map(|i| f.ground()[i].clone()).collect()).collect(),
        skipped: 0,
        violations: Vec::new(),
    };
    for r in results {
        report.lf1_checks += r.lf1;
        report.lf2_checks += r.lf2;
        report.lf1_prime_checks += r.lf1p;
        report.skipped += r.skipped;
        report.violations.extend(r.violations);
    }
    Ok(report)
}

fn check_point(f: &Flock, ev: &Evaluator, alpha: &[i64], subsets: &[u64]) -> Result<PointResult> {
    let n = f.ground().len();
    let mut out = PointResult::default();
    let v = match ev.at(f, alpha) {
        Ok(v) => v,
        Err(Error::OutOfWindow(_)) => {
            out.skipped += 1;
            return Ok(out);
        }
        Err(e) => return Err(e),
    };
    if v.dim() != f.dim() {
        out.violations.push(Violation {
            axiom: "dimension",
            alpha: alpha.to_vec(),
            detail: format!("dimension {} ≠ {}", v.dim(), f.dim()),
        });
    }
    let shifted = |set: &BTreeSet<usize>| -> Vec<i64> {
        alpha.iter().enumerate().map(|(i, a)| if set.contains(&i) { a + 1 } else { *a }).collect()
    };
    let mut record = |outcome: Outcome, axiom: &'static str, detail: String, counter: &mut usize, skipped: &mut usize| {
        match outcome {
            Outcome::Holds => *counter += 1,
            Outcome::Fails => {
                *counter += 1;
                out.violations.push(Violation { axiom, alpha: alpha.to_vec(), detail });
            }
            Outcome::Skipped => *skipped += 1,
        }
    };
    let (mut lf1, mut lf2, mut lf1p, mut skipped) = (0, 0, 0, 0);
    for i in 0..n {
        let set: BTreeSet<usize> = [i].into();
        let rhs = ev.at(f, &shifted(&set)).map(|u| u.delete_indices(&set));
        let outcome = compare(Ok(v.contract_indices(&set)), rhs)?;
        record(outcome, "LF1", format!("i = {}", f.ground()[i]), &mut lf1, &mut skipped);
    }
    let all: BTreeSet<usize> = (0..n).collect();
    let outcome = compare(ev.at(f, &shifted(&all)), Ok(v.frobenius(f.automorphism())))?;
    record(outcome, "LF2", String::new(), &mut lf2, &mut skipped);
    for &s in subsets {
        let set = bits(s, n);
        let rhs = ev.at(f, &shifted(&set)).map(|u| u.delete_indices(&set));
        let outcome = compare(Ok(v.contract_indices(&set)), rhs)?;
        let labels: Vec<&str> = set.iter().map(|&i| f.ground()[i].as_str()).collect();
        record(outcome, "LF1'", format!("I = {{{}}}", labels.join(",")), &mut lf1p, &mut skipped);
    }
    out.lf1 = lf1;
    out.lf2 = lf2;
    out.lf1p = lf1p;
    out.skipped += skipped;
    Ok(out)
}

/// One evaluated window point.
#[derive(Clone, Debug)]
pub struct WindowEntry {
    pub alpha: Vec<i64>,
    pub subspace: Subspace<GaloisField>,
    pub matroid: Matroid,
}

/// Evaluates the flock and its matroid at every point of the window.
pub fn sweep(f: &Flock, w: &Window) -> Result<Vec<WindowEntry>> {
    let ev = Evaluator::new();
    w.points()
        .into_par_iter()
        .map(|alpha| {
            let subspace = ev.at(f, &alpha)?;
            let matroid = matroid_from_subspace(&subspace, DEFAULT_ENUMERATION_LIMIT)?;
            Ok(WindowEntry { alpha, subspace, matroid })
        })
        .collect()
}

/// Union over the window of the bases of M(V_α). Window-relative: ℤ^E is
/// approximated by the finite box.
pub fn support_matroid(f: &Flock, w: &Window) -> Result<Matroid> {
    let entries = sweep(f, w)?;
    let bases: BTreeSet<u64> = entries.iter().flat_map(|e| e.matroid.bases().iter().copied()).collect();
    Matroid::from_bitsets(f.ground().to_vec(), bases, DEFAULT_EXCHANGE_LIMIT)
}

#[derive(Clone, Debug, Default)]
pub struct StretchReport {
    /// α with V'_(mα) ≠ V_α.
    pub identity_failures: Vec<Vec<i64>>,
    /// β with dim V'_β ≠ d.
    pub dimension_failures: Vec<Vec<i64>>,
    /// (β, B) with dim(V'_β/(E−B)) > dim(V_⌊β/m⌋/(E−B)) (contraction form).
    pub contraction_failures: Vec<(Vec<i64>, Vec<String>)>,
    /// (β, B) with dim(V'_β∖(E−B)) > dim(V_⌊β/m⌋∖(E−B)) (deletion form).
    pub deletion_failures: Vec<(Vec<i64>, Vec<String>)>,
    pub identity_checks: usize,
    pub inequality_checks: usize,
}

impl StretchReport {
    /// Identity, dimension and the deletion-form inequality. The
    /// contraction form is reported separately since it can fail.
    pub fn ok(&self) -> bool {
        self.identity_failures.is_empty() && self.dimension_failures.is_empty() && self.deletion_failures.is_empty()
    }
}

/// Checks V'_(mα) = V_α for α ∈ w, constant dimension, and both forms of
/// the support inequality for every d-subset B at every β ∈ w.
pub fn check_stretch(f: &Flock, w: &Window) -> Result<StretchReport> {
    let FlockKind::Stretched { inner, factor } = f.kind() else {
        return Err(Error::InvalidArgument("not a stretched flock".into()));
    };
    let m = *factor as i64;
    let n = f.ground().len();
    let d = f.dim();
    let ev = Evaluator::new();
    let subsets = k_subsets(n, d);
    let per_point: Vec<StretchReport> = w
        .points()
        .into_par_iter()
        .map(|beta| -> Result<StretchReport> {
            let mut r = StretchReport::default();
            let scaled: Vec<i64> = beta.iter().map(|a| a * m).collect();
            r.identity_checks += 1;
            if ev.at(f, &scaled)? != ev.at(inner, &beta)? {
                r.identity_failures.push(beta.clone());
            }
            let v_new = ev.at(f, &beta)?;
            if v_new.dim() != d {
                r.dimension_failures.push(beta.clone());
            }
            let base: Vec<i64> = beta.iter().map(|b| b.div_euclid(m)).collect();
            let v_old = ev.at(inner, &base)?;
            for &b in &subsets {
                let rest: BTreeSet<usize> = (0..n).filter(|i| b >> i & 1 == 0).collect();
                r.inequality_checks += 1;
                let labels = || bits(b, n).into_iter().map(|i| f.ground()[i].clone()).collect();
                if v_new.contract_indices(&rest).dim() > v_old.contract_indices(&rest).dim() {
                    r.contraction_failures.push((beta.clone(), labels()));
                }
                if v_new.delete_indices(&rest).dim() > v_old.delete_indices(&rest).dim() {
                    r.deletion_failures.push((beta.clone(), labels()));
                }
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let mut report = StretchReport::default();
    for r in per_point {
        report.identity_failures.extend(r.identity_failures);
        report.dimension_failures.extend(r.dimension_failures);
        report.contraction_failures.extend(r.contraction_failures);
        report.deletion_failures.extend(r.deletion_failures);
        report.identity_checks += r.identity_checks;
        report.inequality_checks += r.inequality_checks;
    }
    Ok(report)
}

#[derive(Clone, Debug, Default)]
pub struct DualityReport {
    /// α with M(V*_α) ≠ M(V_(−α))*.
    pub matroid_failures: Vec<Vec<i64>>,
    /// α where the double dual differs from the original.
    pub involution_failures: Vec<Vec<i64>>,
    pub points: usize,
}

impl DualityReport {
    pub fn ok(&self) -> bool {
        self.matroid_failures.is_empty() && self.involution_failures.is_empty()
    }
}

pub fn check_duality(f: &Flock, w: &Window) -> Result<DualityReport> {
    let g = dual_flock(f);
    let gg = dual_flock(&g);
    let ev = Evaluator::new();
    let per_point: Vec<(Vec<i64>, bool, bool)> = w
        .points()
        .into_par_iter()
        .map(|alpha| -> Result<(Vec<i64>, bool, bool)> {
            let neg: Vec<i64> = alpha.iter().map(|a| -a).collect();
            let md = matroid_from_subspace(&ev.at(&g, &alpha)?, DEFAULT_ENUMERATION_LIMIT)?;
            let m = matroid_from_subspace(&ev.at(f, &neg)?, DEFAULT_ENUMERATION_LIMIT)?;
            let invol = ev.at(&gg, &alpha)? == ev.at(f, &alpha)?;
            Ok((alpha, md == m.dual(), invol))
        })
        .collect::<Result<_>>()?;
    let mut report = DualityReport { points: per_point.len(), ..Default::default() };
    for (alpha, mat_ok, invol_ok) in per_point {
        if !mat_ok {
            report.matroid_failures.push(alpha.clone());
        }
        if !invol_ok {
            report.involution_failures.push(alpha);
        }
    }
    Ok(report)
}
