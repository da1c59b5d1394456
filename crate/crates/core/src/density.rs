//! Prime sieves and natural densities of sets {p : p ≢ 1 mod q for q ∈ S}.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use rayon::prelude::*;

use crate::arith::is_prime;
use crate::error::{Error, Result};

const SEGMENT: u64 = 1 << 16;

/// Primes below n in increasing order.
pub fn sieve_primes(n: u64) -> Vec<u64> {
    if n <= 2 {
        return Vec::new();
    }
    let n = n as usize;
    let mut composite = vec![false; n];
    let mut out = Vec::new();
    for i in 2..n {
        if !composite[i] {
            out.push(i as u64);
            let mut j = i * i;
            while j < n {
                composite[j] = true;
                j += i;
            }
        }
    }
    out
}

/// Primes in [lo, hi), by a segmented sieve with segments processed in parallel.
pub fn primes_in_range(lo: u64, hi: u64) -> Vec<u64> {
    if hi <= lo {
        return Vec::new();
    }
    let root = (hi as f64).sqrt() as u64 + 2;
    let base = sieve_primes(root + 1);
    let starts: Vec<u64> = (lo..hi).step_by(SEGMENT as usize).collect();
    let segments: Vec<Vec<u64>> = starts
        .into_par_iter()
        .map(|start| {
            let end = (start + SEGMENT).min(hi);
            let mut composite = vec![false; (end - start) as usize];
            for &q in &base {
                if q * q >= end {
                    break;
                }
                let mut j = (q * q).max(start.div_ceil(q) * q);
                while j < end {
                    composite[(j - start) as usize] = true;
                    j += q;
                }
            }
            (start..end).filter(|&x| x >= 2 && !composite[(x - start) as usize]).collect()
        })
        .collect();
    segments.concat()
}

/// The first `count` primes ≥ start, from the segmented sieve.
pub fn consecutive_primes(start: u64, count: usize) -> Vec<u64> {
    let mut out = Vec::with_capacity(count);
    let mut lo = start;
    while out.len() < count {
        let hi = lo.saturating_add(SEGMENT * 16);
        for p in primes_in_range(lo, hi) {
            if out.len() == count {
                break;
            }
            out.push(p);
        }
        if hi == u64::MAX {
            break;
        }
        lo = hi;
    }
    out
}

fn check_moduli(moduli: &[u64]) -> Result<Vec<u64>> {
    let mut s = moduli.to_vec();
    s.sort_unstable();
    if let Some(&q) = s.iter().find(|&&q| !is_prime(q)) {
        return Err(Error::NotPrime(q.to_string()));
    }
    if s.windows(2).any(|w| w[0] == w[1]) {
        return Err(Error::InvalidArgument("moduli must be distinct".into()));
    }
    Ok(s)
}

/// ∏_{q∈S} (q−2)/(q−1) in lowest terms.
pub fn theoretical_density(moduli: &[u64]) -> Result<BigRational> {
    let s = check_moduli(moduli)?;
    if s.contains(&2) {
        return Err(Error::InvalidArgument("modulus 2 gives the factor (2−2)/(2−1) = 0".into()));
    }
    let (num, den) = s.iter().fold((BigInt::one(), BigInt::one()), |(n, d), &q| (n * (q - 2), d * (q - 1)));
    Ok(BigRational::new(num, den))
}

#[derive(Clone, Debug, PartialEq)]
pub struct DensityReport {
    pub moduli: Vec<u64>,
    pub cutoff: u64,
    pub primes_below: u64,
    pub in_set: u64,
    pub empirical: BigRational,
    /// None when 2 ∈ S.
    pub theoretical: Option<BigRational>,
}

/// p ≢ 1 (mod q) for every q ∈ S, read literally, so q itself qualifies.
pub fn in_congruence_set(p: u64, moduli: &[u64]) -> bool {
    moduli.iter().all(|&q| p % q != 1)
}

/// Counts primes p < n with p ≢ 1 mod q for all q ∈ S.
pub fn empirical_density(moduli: &[u64], n: u64) -> Result<DensityReport> {
    let s = check_moduli(moduli)?;
    let primes = primes_in_range(2, n);
    let in_set = primes.par_iter().filter(|&&p| in_congruence_set(p, &s)).count() as u64;
    let total = primes.len() as u64;
    let empirical = if total == 0 {
        BigRational::one()
    } else {
        BigRational::new(BigInt::from(in_set), BigInt::from(total))
    };
    let theoretical = if s.contains(&2) { None } else { Some(theoretical_density(&s)?) };
    Ok(DensityReport { moduli: s, cutoff: n, primes_below: total, in_set, empirical, theoretical })
}

#[derive(Clone, Debug, PartialEq)]
pub struct GreedyResult {
    pub alpha: BigRational,
    pub eps: BigRational,
    /// Index into the odd primes (0 for q = 3) where accumulation starts.
    pub start_index: usize,
    pub primes: Vec<u64>,
    pub product: BigRational,
    /// |product − α|.
    pub error: BigRational,
}

/// Odd primes, extending the sieve on demand.
struct OddPrimes {
    primes: Vec<u64>,
    limit: u64,
}

impl OddPrimes {
    fn new() -> Self {
        OddPrimes { primes: Vec::new(), limit: 3 }
    }

    fn get(&mut self, i: usize) -> u64 {
        while self.primes.len() <= i {
            let hi = self.limit.max(1 << 12) * 2;
            self.primes.extend(primes_in_range(self.limit, hi).into_iter().filter(|&p| p > 2));
            self.limit = hi;
        }
        self.primes[i]
    }
}

/// Finite set A of odd primes with |∏_{q∈A}(q−2)/(q−1) − α| < ε.
///
/// With x_q = ln((q−1)/(q−2)), a = −ln α and δ = ln((α+ε)/α): start at the
/// first odd prime with x_q < 2δ and take consecutive primes until the sum of
/// x_q exceeds a − δ. Every comparison of logarithms is done exactly after
/// exponentiating: x_q < 2δ ⟺ (q−1)/(q−2) < ((α+ε)/α)², and Σx_q > a − δ ⟺
/// ∏(q−2)/(q−1) < α+ε.
pub fn greedy_density_set(alpha: &BigRational, eps: &BigRational) -> Result<GreedyResult> {
    if !alpha.is_positive() || alpha > &BigRational::one() || !eps.is_positive() {
        return Err(Error::InvalidArgument("need 0 < α ≤ 1 and ε > 0".into()));
    }
    if alpha <= eps {
        return Err(Error::InvalidArgument("infeasible parameters: α − ε ≤ 0".into()));
    }
    let upper = alpha + eps;
    let ratio = &upper / alpha;
    let ratio_sq = &ratio * &ratio;
    let mut odd = OddPrimes::new();
    let mut start = 0;
    loop {
        let q = odd.get(start);
        if log_term_ratio(q) < ratio_sq {
            break;
        }
        start += 1;
    }
    // ∏(q−2)/(q−1) kept as an unreduced fraction num/den.
    let (un, ud) = (to_biguint(upper.numer()), to_biguint(upper.denom()));
    let mut num = BigUint::one();
    let mut den = BigUint::one();
    let mut primes = Vec::new();
    let mut i = start;
    while &num * &ud >= &un * &den {
        let q = odd.get(i);
        num *= q - 2;
        den *= q - 1;
        primes.push(q);
        i += 1;
    }
    let product = BigRational::new(BigInt::from(num), BigInt::from(den));
    let error = (&product - alpha).abs();
    Ok(GreedyResult { alpha: alpha.clone(), eps: eps.clone(), start_index: start, primes, product, error })
}

fn to_biguint(x: &BigInt) -> BigUint {
    x.magnitude().clone()
}

/// (q−1)/(q−2) = e^(x_q).
pub fn log_term_ratio(q: u64) -> BigRational {
    BigRational::new(BigInt::from(q - 1), BigInt::from(q - 2))
}
