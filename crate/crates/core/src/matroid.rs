//! Explicit matroids given by their basis families.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::algebra::Field;
use crate::error::{Error, Result};
use crate::linalg::Subspace;

pub const DEFAULT_ENUMERATION_LIMIT: u128 = 1_000_000;
pub const DEFAULT_EXCHANGE_LIMIT: usize = 12;

/// A matroid on ordered text labels. Bases are bitsets over label positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matroid {
    ground: Vec<String>,
    rank: usize,
    bases: BTreeSet<u64>,
}

pub fn binomial(n: usize, k: usize) -> u128 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

fn mask(n: usize) -> u64 {
    if n == 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// All `k`-subsets of `0..n` as bitsets, in colexicographic order.
pub fn k_subsets(n: usize, k: usize) -> Vec<u64> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    if k == 0 {
        out.push(0);
        return out;
    }
    let mut s: u64 = (1u64 << k) - 1;
    let limit = mask(n);
    loop {
        out.push(s);
        // Gosper's hack
        let c = s & s.wrapping_neg();
        let r = s.wrapping_add(c);
        if r == 0 || r > limit {
            break;
        }
        s = (((r ^ s) >> 2) / c) | r;
        if s > limit {
            break;
        }
    }
    out
}

/// Keeps the bits at positions `keep` and packs them in order.
fn compress(bits: u64, keep: &[usize]) -> u64 {
    keep.iter().enumerate().fold(0, |acc, (j, &i)| acc | ((bits >> i) & 1) << j)
}

fn set_bits(set: &BTreeSet<usize>) -> u64 {
    set.iter().fold(0, |acc, &i| acc | 1 << i)
}

fn bits_to_set(bits: u64) -> BTreeSet<usize> {
    (0..64).filter(|i| bits >> i & 1 == 1).collect()
}

impl Matroid {
    /// Builds and validates a matroid; the exchange axiom is checked when
    /// `|E| ≤ exchange_limit`.
    pub fn from_bitsets(ground: Vec<String>, bases: BTreeSet<u64>, exchange_limit: usize) -> Result<Self> {
        if ground.len() > 64 {
            return Err(Error::EnumerationTooLarge(format!("ground set of size {}", ground.len())));
        }
        if ground.iter().collect::<BTreeSet<_>>().len() != ground.len() {
            return Err(Error::InvalidArgument("ground labels must be distinct".into()));
        }
        let Some(&first) = bases.iter().next() else {
            return Err(Error::NotAMatroid);
        };
        let rank = first.count_ones() as usize;
        if bases.iter().any(|b| b.count_ones() as usize != rank || b & !mask(ground.len()) != 0) {
            return Err(Error::NotAMatroid);
        }
        let m = Matroid { ground, rank, bases };
        if m.ground.len() <= exchange_limit && !m.satisfies_exchange() {
            return Err(Error::NotAMatroid);
        }
        Ok(m)
    }

    pub fn new<S: AsRef<str>>(ground: Vec<String>, bases: &[Vec<S>]) -> Result<Self> {
        let index = |l: &str| ground.iter().position(|g| g == l).ok_or_else(|| Error::NotASubset(l.to_string()));
        let mut bits = BTreeSet::new();
        for b in bases {
            let mut x = 0u64;
            for l in b {
                x |= 1 << index(l.as_ref())?;
            }
            bits.insert(x);
        }
        Matroid::from_bitsets(ground, bits, DEFAULT_EXCHANGE_LIMIT)
    }

    /// U_{r,n} on labels 1..n.
    pub fn uniform(r: usize, n: usize) -> Self {
        let ground = (1..=n).map(|i| i.to_string()).collect();
        Matroid { ground, rank: r, bases: k_subsets(n, r).into_iter().collect() }
    }

    pub fn ground(&self) -> &[String] {
        &self.ground
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn bases(&self) -> &BTreeSet<u64> {
        &self.bases
    }

    pub fn labels(&self, bits: u64) -> Vec<String> {
        bits_to_set(bits).into_iter().map(|i| self.ground[i].clone()).collect()
    }

    /// Bases as sorted label lists, in bitset order.
    pub fn basis_labels(&self) -> Vec<Vec<String>> {
        self.bases.iter().map(|&b| self.labels(b)).collect()
    }

    pub fn indices<S: AsRef<str>>(&self, labels: &[S]) -> Result<BTreeSet<usize>> {
        labels
            .iter()
            .map(|l| {
                self.ground.iter().position(|g| g == l.as_ref()).ok_or_else(|| Error::NotASubset(l.as_ref().to_string()))
            })
            .collect()
    }

    pub fn satisfies_exchange(&self) -> bool {
        let bases: Vec<u64> = self.bases.iter().copied().collect();
        bases.par_iter().all(|&b1| {
            bases.iter().all(|&b2| {
                let mut out = b1 & !b2;
                while out != 0 {
                    let x = out & out.wrapping_neg();
                    out ^= x;
                    let mut inn = b2 & !b1;
                    let mut ok = false;
                    while inn != 0 {
                        let y = inn & inn.wrapping_neg();
                        inn ^= y;
                        if self.bases.contains(&((b1 ^ x) | y)) {
                            ok = true;
                            break;
                        }
                    }
                    if !ok {
                        return false;
                    }
                }
                true
            })
        })
    }

    pub fn is_independent(&self, set: u64) -> bool {
        self.bases.iter().any(|&b| b & set == set)
    }

    pub fn rank_of(&self, set: u64) -> usize {
        self.bases.iter().map(|&b| (b & set).count_ones() as usize).max().unwrap_or(0)
    }

    pub fn dual(&self) -> Matroid {
        let full = mask(self.ground.len());
        Matroid {
            ground: self.ground.clone(),
            rank: self.ground.len() - self.rank,
            bases: self.bases.iter().map(|b| full & !b).collect(),
        }
    }

    /// Ground sets must be disjoint; labels of `other` follow those of `self`.
    pub fn direct_sum(&self, other: &Matroid) -> Result<Matroid> {
        if let Some(l) = other.ground.iter().find(|l| self.ground.contains(l)) {
            return Err(Error::OverlappingParts(l.clone()));
        }
        let n = self.ground.len();
        if n + other.ground.len() > 64 {
            return Err(Error::EnumerationTooLarge("ground set larger than 64".into()));
        }
        let count = self.bases.len() as u128 * other.bases.len() as u128;
        if count > DEFAULT_ENUMERATION_LIMIT {
            return Err(Error::EnumerationTooLarge(count.to_string()));
        }
        let mut ground = self.ground.clone();
        ground.extend(other.ground.iter().cloned());
        let bases = self.bases.iter().flat_map(|&a| other.bases.iter().map(move |&b| a | b << n)).collect();
        Ok(Matroid { ground, rank: self.rank + other.rank, bases })
    }

    /// M / contract ∖ delete.
    pub fn minor<S: AsRef<str>>(&self, delete: &[S], contract: &[S]) -> Result<Matroid> {
        let d = self.indices(delete)?;
        let c = self.indices(contract)?;
        if !d.is_disjoint(&c) {
            return Err(Error::MinorOverlap);
        }
        let (db, cb) = (set_bits(&d), set_bits(&c));
        let max_c = self.bases.iter().map(|b| (b & cb).count_ones()).max().unwrap_or(0);
        let contracted: Vec<u64> = self.bases.iter().filter(|b| (*b & cb).count_ones() == max_c).map(|b| b & !cb).collect();
        let min_d = contracted.iter().map(|b| (b & db).count_ones()).min().unwrap_or(0);
        let keep: Vec<usize> = (0..self.ground.len()).filter(|i| !d.contains(i) && !c.contains(i)).collect();
        let bases: BTreeSet<u64> =
            contracted.iter().filter(|b| (*b & db).count_ones() == min_d).map(|&b| compress(b, &keep)).collect();
        let ground = keep.iter().map(|&i| self.ground[i].clone()).collect();
        let rank = bases.iter().next().map_or(0, |b| b.count_ones() as usize);
        Ok(Matroid { ground, rank, bases })
    }

    /// Minimal dependent sets, as bitsets in ascending order.
    pub fn circuits(&self) -> Result<Vec<u64>> {
        let n = self.ground.len();
        let total: u128 = (0..=(self.rank + 1).min(n)).map(|k| binomial(n, k)).sum();
        if total > DEFAULT_ENUMERATION_LIMIT {
            return Err(Error::EnumerationTooLarge(total.to_string()));
        }
        let mut found: Vec<u64> = Vec::new();
        for k in 1..=(self.rank + 1).min(n) {
            for s in k_subsets(n, k) {
                if found.iter().any(|&c| c & s == c) {
                    continue;
                }
                if !self.is_independent(s) {
                    found.push(s);
                }
            }
        }
        found.sort_unstable();
        Ok(found)
    }
}

/// M(V): d-subsets B whose columns of the basis matrix are independent.
pub fn matroid_from_subspace<F: Field>(v: &Subspace<F>, limit: u128) -> Result<Matroid> {
    let n = v.ambient_dim();
    let d = v.dim();
    let count = binomial(n, d);
    if n > 64 || count > limit {
        return Err(Error::EnumerationTooLarge(count.to_string()));
    }
    let bases: BTreeSet<u64> = k_subsets(n, d)
        .into_par_iter()
        .filter(|&b| v.column_rank(&bits_to_set(b)) == d)
        .collect();
    Ok(Matroid { ground: v.ground().to_vec(), rank: d, bases })
}

/// True iff the columns in C are dependent while every proper subset is
/// independent; works directly on columns.
pub fn is_circuit<F: Field>(v: &Subspace<F>, c: &BTreeSet<usize>) -> bool {
    if c.is_empty() || v.column_rank(c) != c.len() - 1 {
        return false;
    }
    c.iter().all(|x| {
        let mut rest = c.clone();
        rest.remove(x);
        v.column_rank(&rest) == rest.len()
    })
}

pub fn is_circuit_labels<F: Field, S: AsRef<str>>(v: &Subspace<F>, labels: &[S]) -> Result<bool> {
    Ok(is_circuit(v, &v.indices(labels)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::GaloisField;
    use proptest::prelude::*;

    fn sub(p: u64, rows: &[&[u64]]) -> Subspace<GaloisField> {
        let k = GaloisField::prime(p).unwrap();
        let n = rows[0].len();
        let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| k.from_u64(x)).collect()).collect();
        Subspace::new(k, (1..=n).map(|i| i.to_string()).collect(), &rows).unwrap()
    }

    fn bases_of(m: &Matroid) -> Vec<String> {
        m.basis_labels().iter().map(|b| b.concat()).collect()
    }

    #[test]
    fn from_subspace_examples() {
        let m = matroid_from_subspace(&sub(2, &[&[1, 0, 1], &[0, 1, 1]]), DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(m, Matroid::uniform(2, 3));
        let free = matroid_from_subspace(&sub(2, &[&[1, 0], &[0, 1]]), DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(bases_of(&free), vec!["12"]);
        let m = matroid_from_subspace(&sub(2, &[&[1, 0, 0], &[0, 1, 1]]), DEFAULT_ENUMERATION_LIMIT).unwrap();
        assert_eq!(bases_of(&m), vec!["12", "13"]);
        assert_eq!(m.circuits().unwrap().iter().map(|&c| m.labels(c).concat()).collect::<Vec<_>>(), vec!["23"]);
        assert!(matroid_from_subspace(&sub(2, &[&[1, 0, 0], &[0, 1, 1]]), 2).is_err());
    }

    #[test]
    fn dual_sum_minor_examples() {
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(u23.dual(), Matroid::uniform(1, 3));
        assert_eq!(u23.dual().dual(), u23);
        let free = Matroid::uniform(3, 3);
        assert_eq!(free.dual().bases().iter().copied().collect::<Vec<_>>(), vec![0]);
        let a = Matroid::new(vec!["a".into()], &[vec!["a"]]).unwrap();
        let b = Matroid::new(vec!["b".into()], &[vec!["b"]]).unwrap();
        assert_eq!(a.direct_sum(&b).unwrap().bases().len(), 1);
        let u12 = Matroid::new(vec!["a".into(), "b".into()], &[vec!["a"], vec!["b"]]).unwrap();
        let u12b = Matroid::new(vec!["c".into(), "d".into()], &[vec!["c"], vec!["d"]]).unwrap();
        assert_eq!(u12.direct_sum(&u12b).unwrap().bases().len(), 4);
        assert_eq!(u12.direct_sum(&u12).unwrap_err().code(), "overlapping_parts");
        let loops = Matroid::from_bitsets(vec!["x".into(), "y".into()], [0u64].into(), 12).unwrap();
        let s = u12.direct_sum(&loops).unwrap();
        assert_eq!(s.rank(), 1);
        assert_eq!(s.basis_labels(), vec![vec!["a".to_string()], vec!["b".to_string()]]);
        assert_eq!(u23.minor(&["3"], &[]).unwrap(), Matroid::uniform(2, 2));
        assert_eq!(u23.minor(&[], &["3"]).unwrap(), Matroid::uniform(1, 2));
        assert_eq!(u23.minor(&["3"], &["3"]).unwrap_err(), Error::MinorOverlap);
    }

    #[test]
    fn circuits_of_uniform_matroids() {
        let u23 = Matroid::uniform(2, 3);
        assert_eq!(u23.circuits().unwrap(), vec![0b111]);
        let u24 = Matroid::uniform(2, 4);
        let mut expected = k_subsets(4, 3);
        expected.sort_unstable();
        assert_eq!(u24.circuits().unwrap(), expected);
    }

    #[test]
    fn exchange_violation_detected() {
        let ground: Vec<String> = (1..=4).map(|i| i.to_string()).collect();
        assert_eq!(Matroid::new(ground, &[vec!["1", "2"], vec!["3", "4"]]).unwrap_err(), Error::NotAMatroid);
    }

    #[test]
    fn is_circuit_on_columns() {
        let v = sub(5, &[&[1, 0, 1], &[0, 1, 1]]);
        assert!(is_circuit_labels(&v, &["1", "2", "3"]).unwrap());
        assert!(!is_circuit_labels(&v, &["1", "2"]).unwrap());
    }

    #[test]
    fn k_subsets_counts() {
        for n in 0..10 {
            for k in 0..=n {
                let s = k_subsets(n, k);
                assert_eq!(s.len() as u128, binomial(n, k));
                assert!(s.iter().all(|b| b.count_ones() as usize == k && *b < 1 << n));
            }
        }
    }

    fn arb_subspace() -> impl Strategy<Value = Subspace<GaloisField>> {
        (1usize..6, prop::sample::select(vec![2u64, 3, 5])).prop_flat_map(|(n, p)| {
            prop::collection::vec(prop::collection::vec(0..p, n), 0..=n).prop_map(move |rows| {
                let k = GaloisField::prime(p).unwrap();
                let rows: Vec<Vec<_>> = rows.iter().map(|r| r.iter().map(|&x| k.from_u64(x)).collect()).collect();
                Subspace::new(k, (1..=n).map(|i| i.to_string()).collect(), &rows).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn complement_realizes_dual(v in arb_subspace()) {
            let m = matroid_from_subspace(&v, DEFAULT_ENUMERATION_LIMIT).unwrap();
            prop_assert!(m.satisfies_exchange());
            let md = matroid_from_subspace(&v.orthogonal_complement(), DEFAULT_ENUMERATION_LIMIT).unwrap();
            prop_assert_eq!(md, m.dual());
        }

        #[test]
        fn minors_commute_with_realization(v in arb_subspace(), bits in any::<u32>(), bits2 in any::<u32>()) {
            let n = v.ambient_dim();
            let i: Vec<String> = (0..n).filter(|c| bits >> c & 1 == 1).map(|c| v.ground()[c].clone()).collect();
            let j: Vec<String> = (0..n).filter(|c| bits2 >> c & 1 == 1 && bits >> c & 1 == 0).map(|c| v.ground()[c].clone()).collect();
            let m = matroid_from_subspace(&v, DEFAULT_ENUMERATION_LIMIT).unwrap();
            let realized = matroid_from_subspace(&v.contract(&i).unwrap().delete(&j).unwrap(), DEFAULT_ENUMERATION_LIMIT).unwrap();
            prop_assert_eq!(realized, m.minor(&j, &i).unwrap());
        }

        #[test]
        fn direct_sum_is_additive(v in arb_subspace(), w in arb_subspace()) {
            let m1 = matroid_from_subspace(&v, DEFAULT_ENUMERATION_LIMIT).unwrap();
            let mut m2 = matroid_from_subspace(&w, DEFAULT_ENUMERATION_LIMIT).unwrap();
            m2.ground = m2.ground.iter().map(|l| format!("{l}'")).collect();
            let s = m1.direct_sum(&m2).unwrap();
            prop_assert_eq!(s.rank(), m1.rank() + m2.rank());
            let n1 = m1.ground().len();
            let mut expected: Vec<u64> = m1.circuits().unwrap();
            expected.extend(m2.circuits().unwrap().into_iter().map(|c| c << n1));
            expected.sort_unstable();
            prop_assert_eq!(s.circuits().unwrap(), expected);
        }

        #[test]
        fn is_circuit_agrees_with_enumeration(v in arb_subspace()) {
            let m = matroid_from_subspace(&v, DEFAULT_ENUMERATION_LIMIT).unwrap();
            let circuits: BTreeSet<u64> = m.circuits().unwrap().into_iter().collect();
            for s in 1u64..1 << v.ambient_dim() {
                prop_assert_eq!(is_circuit(&v, &bits_to_set(s)), circuits.contains(&s));
            }
        }
    }
}
