//! Brylawski matrices N_n, the b-sequence and the Gordon-Brylawski predicate.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use crate::algebra::GaloisField;
use crate::arith::is_prime;
use crate::density::{consecutive_primes, sieve_primes};
use crate::error::{Error, Result};
use crate::linalg::{determinant_int, Subspace};
use crate::matroid::k_subsets;

/// b_i = ⌊n / 2^(s−i+1)⌋ for 0 ≤ i ≤ s, s = ⌊log₂ n⌋.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BSequence {
    pub n: BigUint,
    pub s: usize,
    pub values: Vec<BigUint>,
}

pub fn b_sequence(n: &BigUint) -> Result<BSequence> {
    if n < &BigUint::from(2u32) {
        return Err(Error::InvalidArgument("b-sequence needs n ≥ 2".into()));
    }
    let s = (n.bits() - 1) as usize;
    let values = (0..=s).map(|i| n >> (s - i + 1)).collect();
    Ok(BSequence { n: n.clone(), s, values })
}

fn check_primes(primes: &[u64]) -> Result<Vec<u64>> {
    if primes.is_empty() {
        return Err(Error::InvalidArgument("prime set is empty".into()));
    }
    let mut out = primes.to_vec();
    out.sort_unstable();
    if let Some(&p) = out.iter().find(|&&p| !is_prime(p)) {
        return Err(Error::NotPrime(p.to_string()));
    }
    if out.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("primes must be distinct".into()));
    }
    Ok(out)
}

/// n = ∏ primes + 1.
pub fn brylawski_n(primes: &[u64]) -> BigUint {
    primes.iter().fold(BigUint::one(), |acc, &p| acc * p) + 1u32
}

/// 3 × (2s+6) integer matrix with columns v1..v6, w1, u1, ..., ws, us.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BrylawskiMatrix {
    pub primes: Vec<u64>,
    pub b: BSequence,
    pub labels: Vec<String>,
    pub columns: Vec<[BigInt; 3]>,
}

impl BrylawskiMatrix {
    pub fn index(&self, label: &str) -> Result<usize> {
        self.labels
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::InvalidArgument(format!("no column {label}")))
    }

    pub fn column(&self, label: &str) -> Result<&[BigInt; 3]> {
        Ok(&self.columns[self.index(label)?])
    }

    pub fn rows(&self) -> Vec<Vec<BigInt>> {
        (0..3).map(|r| self.columns.iter().map(|c| c[r].clone()).collect()).collect()
    }

    /// Row space over GF(p).
    pub fn subspace_mod(&self, p: u64) -> Result<Subspace<GaloisField>> {
        let field = GaloisField::prime(p)?;
        let rows: Vec<Vec<_>> =
            self.rows().iter().map(|r| r.iter().map(|x| field.from_bigint(x)).collect()).collect();
        Subspace::new(field, self.labels.clone(), &rows)
    }

    /// Exact determinant of three columns.
    pub fn minor(&self, labels: [&str; 3]) -> Result<BigInt> {
        let cols = [self.column(labels[0])?, self.column(labels[1])?, self.column(labels[2])?];
        Ok(det3([cols[0], cols[1], cols[2]]))
    }
}

pub fn brylawski_matrix(primes: &[u64]) -> Result<BrylawskiMatrix> {
    let primes = check_primes(primes)?;
    let b = b_sequence(&brylawski_n(&primes))?;
    let int = |x: i64| BigInt::from(x);
    let mut labels: Vec<String> = (1..=6).map(|i| format!("v{i}")).collect();
    let mut columns: Vec<[BigInt; 3]> = [[1, 0, 0], [0, 1, 0], [0, 0, 1], [1, 1, 1], [1, 1, 0], [1, 0, 1]]
        .iter()
        .map(|c| c.map(int))
        .collect();
    for i in 1..=b.s {
        let bi = BigInt::from(b.values[i].clone());
        labels.push(format!("w{i}"));
        columns.push([int(1), int(2), bi.clone()]);
        labels.push(format!("u{i}"));
        columns.push([int(0), int(1), bi]);
    }
    Ok(BrylawskiMatrix { primes, b, labels, columns })
}

/// Pairs exempt from the predicate.
pub const EXEMPT_PAIRS: [(usize, usize); 2] = [(0, 1), (1, 2)];

/// First failing pair: b_j − b_i ≡ residue (mod prime) with residue in {0, 1, p−1}.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbWitness {
    pub i: usize,
    pub j: usize,
    pub prime: u64,
    pub residue: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GbReport {
    pub primes: Vec<u64>,
    pub n: BigUint,
    pub s: usize,
    pub verdict: bool,
    pub witness: Option<GbWitness>,
    /// Differences at the exempt pairs that exist for this s.
    pub exempt_differences: Vec<((usize, usize), BigUint)>,
}

fn residues(b: &BSequence, p: u64) -> Vec<u64> {
    let pb = BigUint::from(p);
    b.values.iter().map(|v| (v % &pb).to_u64().expect("residue fits")).collect()
}

fn first_witness(res: &[u64], p: u64) -> Option<GbWitness> {
    let s = res.len() - 1;
    for i in 0..s {
        for j in i + 1..=s {
            if EXEMPT_PAIRS.contains(&(i, j)) {
                continue;
            }
            let d = (res[j] + p - res[i]) % p;
            if d == 0 || d == 1 || d == p - 1 {
                return Some(GbWitness { i, j, prime: p, residue: d });
            }
        }
    }
    None
}

/// Checks that b_j − b_i ≢ 0, ±1 (mod p) for all non-exempt pairs i < j
/// and all p in the set. Residues are computed once per prime; primes are
/// scanned in parallel and the witness reported is the first in
/// (prime ascending, i, j) order.
pub fn is_gordon_brylawski(primes: &[u64]) -> Result<GbReport> {
    let primes = check_primes(primes)?;
    let b = b_sequence(&brylawski_n(&primes))?;
    let witness = primes.par_iter().map(|&p| first_witness(&residues(&b, p), p)).find_first(|w| w.is_some()).flatten();
    let exempt_differences = EXEMPT_PAIRS
        .iter()
        .filter(|&&(_, j)| j <= b.s)
        .map(|&(i, j)| ((i, j), &b.values[j] - &b.values[i]))
        .collect();
    Ok(GbReport {
        n: b.n.clone(),
        s: b.s,
        verdict: witness.is_none(),
        witness,
        exempt_differences,
        primes,
    })
}

/// Candidate prime sets scanned by [`gb_search`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GbCandidates {
    /// Sets given verbatim.
    Explicit(Vec<Vec<u64>>),
    /// All k-subsets of the primes below a bound, in colexicographic order.
    Subsets { size: usize, below: u64 },
    /// Windows of `size` consecutive primes, the first starting at the
    /// smallest prime ≥ start and each next one shifted by one prime.
    Consecutive { start: u64, size: usize, windows: usize },
}

/// Scans at most `limit` candidates in order and returns the reports of all
/// Gordon-Brylawski sets found.
pub fn gb_search(c: &GbCandidates, limit: usize) -> Result<Vec<GbReport>> {
    let candidates: Vec<Vec<u64>> = match c {
        GbCandidates::Explicit(sets) => sets.iter().take(limit).cloned().collect(),
        GbCandidates::Subsets { size, below } => {
            let primes = sieve_primes(*below);
            if primes.len() > 63 {
                return Err(Error::SearchTooLarge(format!("{} primes below {below}", primes.len())));
            }
            if *size == 0 || *size > primes.len() {
                Vec::new()
            } else {
                k_subsets(primes.len(), *size)
                    .into_iter()
                    .take(limit)
                    .map(|bits| (0..primes.len()).filter(|i| bits >> i & 1 == 1).map(|i| primes[i]).collect())
                    .collect()
            }
        }
        GbCandidates::Consecutive { start, size, windows } => {
            let count = (*windows).min(limit);
            if count == 0 || *size == 0 {
                Vec::new()
            } else {
                let primes = consecutive_primes(*start, size + count - 1);
                primes.windows(*size).take(count).map(|w| w.to_vec()).collect()
            }
        }
    };
    let reports: Vec<GbReport> = candidates.par_iter().map(|s| is_gordon_brylawski(s)).collect::<Result<_>>()?;
    Ok(reports.into_iter().filter(|r| r.verdict).collect())
}

/// One check of the rigidity argument.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityCheck {
    /// "circuit" or "minor".
    pub kind: &'static str,
    pub columns: Vec<String>,
    /// For minors: the exact determinant over ℤ.
    pub value: Option<BigInt>,
    /// For minors: whether the determinant should vanish mod p.
    pub expect_zero: Option<bool>,
    pub passed: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RigidityReport {
    pub primes: Vec<u64>,
    pub p: u64,
    pub n: BigUint,
    pub s: usize,
    pub checks: Vec<RigidityCheck>,
    /// det[v1, w1, us] over ℤ; equals 2b_s − 1.
    pub final_minor: BigInt,
    pub final_minor_mod_p: u64,
    /// 2 ∈ primes, so n is odd and 2b_s − 1 = n − 2 instead of n − 1.
    pub n_odd: bool,
    pub passed: bool,
}

impl RigidityReport {
    pub fn failures(&self) -> impl Iterator<Item = &RigidityCheck> {
        self.checks.iter().filter(|c| !c.passed)
    }
}

fn det3(c: [&[BigInt; 3]; 3]) -> BigInt {
    let m: Vec<Vec<BigInt>> = (0..3).map(|r| c.iter().map(|col| col[r].clone()).collect()).collect();
    determinant_int(&m).expect("3×3 is square")
}

fn mod_p(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().expect("residue fits")
}

/// Three columns form a circuit over GF(p): dependent, every pair independent.
fn is_circuit3(cols: [&[BigInt; 3]; 3], p: u64) -> bool {
    if mod_p(&det3(cols), p) != 0 {
        return false;
    }
    for (a, b) in [(0, 1), (0, 2), (1, 2)] {
        let pair_rank2 = [(0, 1), (0, 2), (1, 2)].iter().any(|&(r, t)| {
            let d = &cols[a][r] * &cols[b][t] - &cols[a][t] * &cols[b][r];
            mod_p(&d, p) != 0
        });
        if !pair_rank2 {
            return false;
        }
    }
    true
}

/// Verifies over GF(p) every circuit and minor used to show that a flock
/// representation containing v1..v4 as a circuit is forced to be N_n.
pub fn verify_brylawski_rigidity(primes: &[u64], p: u64) -> Result<RigidityReport> {
    let n = brylawski_matrix(primes)?;
    if !n.primes.contains(&p) {
        return Err(Error::InvalidArgument(format!("{p} is not in the prime set")));
    }
    let s = n.b.s;
    let mut circuits: Vec<[String; 3]> = vec![
        ["v1", "v2", "v5"].map(String::from),
        ["v3", "v4", "v5"].map(String::from),
        ["v2", "v6", "w1"].map(String::from),
        ["v5", "u1", "w1"].map(String::from),
    ];
    for i in 1..=s {
        circuits.push(["v2".into(), "v3".into(), format!("u{i}")]);
        circuits.push(["v5".into(), format!("w{i}"), format!("u{i}")]);
        if i >= 2 {
            circuits.push(["v3".into(), "w1".into(), format!("w{i}")]);
        }
    }
    let mut checks: Vec<RigidityCheck> = circuits
        .par_iter()
        .map(|c| -> Result<RigidityCheck> {
            let cols = [n.column(&c[0])?, n.column(&c[1])?, n.column(&c[2])?];
            Ok(RigidityCheck {
                kind: "circuit",
                columns: c.to_vec(),
                value: None,
                expect_zero: None,
                passed: is_circuit3(cols, p),
            })
        })
        .collect::<Result<_>>()?;
    let minors: Vec<RigidityCheck> = (2..=s)
        .into_par_iter()
        .map(|i| -> Result<Vec<RigidityCheck>> {
            let (bi, prev) = (BigInt::from(n.b.values[i].clone()), BigInt::from(n.b.values[i - 1].clone()));
            let doubled = &bi == &(&prev * 2);
            let (u, w) = (format!("u{}", i - 1), format!("w{i}"));
            let d1 = n.minor(["v1", &u, &w])?;
            let d6 = n.minor(["v6", &u, &w])?;
            let f1 = &bi - &prev * 2;
            let f6 = &f1 - 1;
            let mk = |first: &str, value: BigInt, formula: BigInt, expect_zero: bool| RigidityCheck {
                kind: "minor",
                columns: vec![first.to_string(), u.clone(), w.clone()],
                passed: value == formula && (mod_p(&value, p) == 0) == expect_zero,
                value: Some(value),
                expect_zero: Some(expect_zero),
            };
            Ok(vec![mk("v1", d1, f1, doubled), mk("v6", d6, f6, !doubled)])
        })
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect();
    checks.extend(minors);
    let us = format!("u{s}");
    let final_minor = n.minor(["v1", "w1", &us])?;
    let final_minor_mod_p = mod_p(&final_minor, p);
    let two_bs_minus_one = BigInt::from(n.b.values[s].clone()) * 2 - 1;
    checks.push(RigidityCheck {
        kind: "minor",
        columns: vec!["v1".into(), "w1".into(), us],
        passed: final_minor == two_bs_minus_one && final_minor_mod_p == 0,
        value: Some(final_minor.clone()),
        expect_zero: Some(true),
    });
    let passed = checks.iter().all(|c| c.passed);
    Ok(RigidityReport {
        n_odd: n.b.n.is_odd(),
        primes: n.primes.clone(),
        p,
        n: n.b.n.clone(),
        s,
        checks,
        final_minor,
        final_minor_mod_p,
        passed,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Zero;
    use std::collections::BTreeSet;
    use crate::algebra::Rationals;
    use crate::matroid::is_circuit;
    use num_rational::BigRational;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn seq(n: u64) -> Vec<u64> {
        b_sequence(&BigUint::from(n)).unwrap().values.iter().map(|v| v.to_u64().unwrap()).collect()
    }

    #[test]
    fn b_sequence_examples() {
        assert_eq!(seq(6), vec![0, 1, 3]);
        assert_eq!(seq(16), vec![0, 1, 2, 4, 8]);
        assert_eq!(seq(8), vec![0, 1, 2, 4]);
        assert!(b_sequence(&BigUint::one()).is_err());
    }

    #[test]
    fn matrix_examples() {
        let m = brylawski_matrix(&[5]).unwrap();
        assert_eq!(m.columns.len(), 10);
        assert_eq!(m.column("w2").unwrap(), &[1, 2, 3].map(BigInt::from));
        assert_eq!(m.column("u2").unwrap(), &[0, 1, 3].map(BigInt::from));
        assert_eq!(m.column("v4").unwrap(), &[1, 1, 1].map(BigInt::from));
        let m = brylawski_matrix(&[2]).unwrap();
        assert_eq!((m.b.n.clone(), m.b.s, m.columns.len()), (BigUint::from(3u32), 1, 8));
        assert!(brylawski_matrix(&[]).is_err());
        assert!(brylawski_matrix(&[3, 3]).is_err());
    }

    #[test]
    fn predicate_examples() {
        let r = is_gordon_brylawski(&[5]).unwrap();
        assert!(r.verdict && r.witness.is_none());
        let r = is_gordon_brylawski(&[3, 5]).unwrap();
        assert!(!r.verdict);
        assert_eq!(r.witness, Some(GbWitness { i: 0, j: 2, prime: 3, residue: 2 }));
        assert!(is_gordon_brylawski(&[2]).unwrap().verdict);
        assert!(!is_gordon_brylawski(&[3]).unwrap().verdict);
    }

    #[test]
    fn eighty_consecutive_primes_have_a_failing_pair() {
        let w = consecutive_primes(12811987, 80);
        assert_eq!(w[79], 12813373);
        let r = is_gordon_brylawski(&w).unwrap();
        assert_eq!(r.s, 1888);
        assert_eq!(r.witness, Some(GbWitness { i: 22, j: 852, prime: 12812123, residue: 1 }));
    }

    #[test]
    fn search_examples() {
        let found = gb_search(&GbCandidates::Subsets { size: 1, below: 8 }, usize::MAX).unwrap();
        let sets: Vec<Vec<u64>> = found.iter().map(|r| r.primes.clone()).collect();
        assert_eq!(sets, vec![vec![2], vec![5], vec![7]]);
        let pairs = gb_search(&GbCandidates::Subsets { size: 2, below: 20 }, usize::MAX).unwrap();
        let primes = sieve_primes(20);
        let mut expected = Vec::new();
        for (a, &p) in primes.iter().enumerate() {
            for &q in &primes[a + 1..] {
                if naive_gb(&[p, q]) {
                    expected.push(vec![p, q]);
                }
            }
        }
        let mut got: Vec<Vec<u64>> = pairs.iter().map(|r| r.primes.clone()).collect();
        got.sort();
        assert_eq!(got, expected);
        let c = GbCandidates::Consecutive { start: 12811987, size: 80, windows: 1 };
        assert!(gb_search(&c, 1).unwrap().is_empty());
    }

    #[test]
    fn rigidity_for_five() {
        let r = verify_brylawski_rigidity(&[5], 5).unwrap();
        assert!(r.passed, "{:?}", r.failures().collect::<Vec<_>>());
        assert_eq!(r.final_minor, BigInt::from(5));
        assert!(verify_brylawski_rigidity(&[5], 3).is_err());
    }

    #[test]
    fn rigidity_for_odd_sets() {
        for set in [&[7u64][..], &[5, 7]] {
            let n = BigInt::from(brylawski_n(set));
            for &p in set {
                let r = verify_brylawski_rigidity(set, p).unwrap();
                assert!(r.passed, "{set:?} mod {p}: {:?}", r.failures().collect::<Vec<_>>());
                assert_eq!(r.final_minor, &n - 1);
            }
        }
    }

    #[test]
    fn rigidity_fails_for_two() {
        let r = verify_brylawski_rigidity(&[2], 2).unwrap();
        assert!(r.n_odd);
        assert_eq!(r.final_minor, BigInt::from(1));
        assert!(!r.passed);
        let failed: Vec<&Vec<String>> = r.failures().map(|c| &c.columns).collect();
        assert!(failed.contains(&&vec!["v2".to_string(), "v6".into(), "w1".into()]));
    }

    #[test]
    fn circuit_helper_matches_matroid_circuits() {
        for set in [&[5u64][..], &[3, 5], &[7], &[11, 13]] {
            let m = brylawski_matrix(set).unwrap();
            for &p in set {
                let v = m.subspace_mod(p).unwrap();
                for bits in k_subsets(m.columns.len(), 3) {
                    let idx: Vec<usize> = (0..m.columns.len()).filter(|i| bits >> i & 1 == 1).collect();
                    let cols = [&m.columns[idx[0]], &m.columns[idx[1]], &m.columns[idx[2]]];
                    assert_eq!(is_circuit3(cols, p), is_circuit(&v, &idx.iter().copied().collect()));
                }
            }
        }
    }

    fn naive_gb(primes: &[u64]) -> bool {
        let n = brylawski_n(primes);
        let b = b_sequence(&n).unwrap();
        for i in 0..=b.s {
            for j in i + 1..=b.s {
                if (i, j) == (0, 1) || (i, j) == (1, 2) {
                    continue;
                }
                let d = BigInt::from(b.values[j].clone()) - BigInt::from(b.values[i].clone());
                for &p in primes {
                    let r = mod_p(&d, p);
                    if r == 0 || r == 1 || r == p - 1 {
                        return false;
                    }
                }
            }
        }
        true
    }

    fn random_prime_set(rng: &mut ChaCha8Rng, bits: u32) -> Vec<u64> {
        let primes = sieve_primes(1 << 16);
        let mut set = BTreeSet::new();
        let mut log = 0.0;
        while log < bits as f64 {
            let k = rng.gen_range(0..primes.len());
            if set.insert(primes[k]) {
                log += (primes[k] as f64).log2();
            }
        }
        set.into_iter().collect()
    }

    #[test]
    fn b_sequence_invariants_on_large_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let bits = rng.gen_range(1..=240);
            let set = random_prime_set(&mut rng, bits);
            let n = brylawski_n(&set);
            let b = b_sequence(&n).unwrap();
            assert!(b.values[0].is_zero() && b.values[1].is_one());
            for i in 1..=b.s {
                let twice = &b.values[i - 1] * 2u32;
                assert!(b.values[i] == twice || b.values[i] == twice + 1u32);
                assert_eq!(b.values[i], &n / (BigUint::one() << (b.s - i + 1)));
            }
            let m = brylawski_matrix(&set).unwrap();
            let det = m.minor(["v1", "w1", &format!("u{}", b.s)]).unwrap();
            if set.contains(&2) {
                assert_eq!(det, BigInt::from(n) - 2);
            } else {
                assert_eq!(det, BigInt::from(n) - 1);
            }
        }
    }

    #[test]
    fn predicate_matches_naive_on_random_sets() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let small = sieve_primes(200);
        for _ in 0..100 {
            let k = rng.gen_range(1..=4);
            let mut set = BTreeSet::new();
            while set.len() < k {
                set.insert(small[rng.gen_range(0..small.len())]);
            }
            let set: Vec<u64> = set.into_iter().collect();
            assert_eq!(is_gordon_brylawski(&set).unwrap().verdict, naive_gb(&set), "{set:?}");
        }
    }

    #[test]
    fn rational_matroid_contains_u34() {
        for set in [&[2u64][..], &[5], &[3, 5], &[7, 11]] {
            let m = brylawski_matrix(set).unwrap();
            let rows: Vec<Vec<BigRational>> =
                m.rows().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect();
            let v = Subspace::new(Rationals, m.labels.clone(), &rows).unwrap();
            assert_eq!(v.dim(), 3);
            assert!(is_circuit(&v, &[0, 1, 2, 3].into()));
        }
    }

    proptest! {
        #[test]
        fn b_sequence_floor_formula(n in 2u64..1_000_000) {
            let b = seq(n);
            let s = 63 - n.leading_zeros() as usize;
            prop_assert_eq!(b.len(), s + 1);
            for (i, v) in b.iter().enumerate() {
                prop_assert_eq!(*v, n >> (s - i + 1));
            }
        }
    }
}
