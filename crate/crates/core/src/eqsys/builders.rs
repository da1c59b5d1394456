use std::collections::BTreeSet;

use super::system::EquationSystem;
use crate::arith::is_prime;
use crate::error::{Error, Result};

/// Largest chain length the builders accept.
pub const MAX_CHAIN: u64 = 10_000;

fn y(i: u64) -> String {
    format!("y{i}")
}
fn z(i: u64) -> String {
    format!("z{i}")
}
fn w(i: u64) -> String {
    format!("w{i}")
}
fn u(i: u64) -> String {
    format!("u{i}")
}

/// The system Φₙ whose solutions force w = y₁^(n+1) + n·y₁^(n−1) + (n−1)·y₁^(n−2).
pub fn build_phi_n(n: u64) -> Result<EquationSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("Φₙ needs n ≥ 2, got {n}")));
    }
    if n > MAX_CHAIN {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds the chain limit {MAX_CHAIN}")));
    }
    let mut s = EquationSystem::new();
    let last_w = 2 * n - 3;
    for i in 1..=n + 1 {
        s.add_var(&y(i));
    }
    for i in 1..n {
        s.add_var(&z(i));
    }
    for i in 1..=last_w {
        s.add_var(&w(i));
    }
    s.add_var("w");

    for i in 2..=n + 1 {
        s.product(&y(i), &y(i - 1), "y1");
    }
    s.sum("z1", "y1", "x1");
    for i in 2..n {
        s.product(&z(i), &z(i - 1), "y1");
    }
    s.sum("w1", "y3", "y1");
    if last_w >= 2 {
        s.sum("w2", "w1", "z1");
    }
    let mut k = 1;
    while 2 * k + 1 <= last_w {
        s.product(&w(2 * k + 1), &w(2 * k), "y1");
        if 2 * k + 2 <= last_w {
            s.sum(&w(2 * k + 2), &w(2 * k + 1), &z(k + 1));
        }
        k += 1;
    }
    s.sum("w", &w(last_w), &z(n - 1));
    Ok(s)
}

/// Product of a set of distinct primes, required to be at least 3.
pub fn prime_product(primes: &[u64]) -> Result<u64> {
    let set: BTreeSet<u64> = primes.iter().copied().collect();
    if set.len() != primes.len() {
        return Err(Error::InvalidArgument("primes must be distinct".into()));
    }
    let mut n: u64 = 1;
    for &p in &set {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        n = n
            .checked_mul(p)
            .filter(|&n| n <= MAX_CHAIN)
            .ok_or_else(|| Error::InvalidArgument(format!("product of primes exceeds the chain limit {MAX_CHAIN}")))?;
    }
    if n < 3 {
        return Err(Error::InvalidArgument(format!(
            "product of primes is {n}; the construction needs n ≥ 3 (y_(n-2) is undefined)"
        )));
    }
    Ok(n)
}

/// Φₙ plus the constraint y_(n+1) = w + y_(n−2), n = ∏C.
pub fn build_finite(primes: &[u64]) -> Result<EquationSystem> {
    let n = prime_product(primes)?;
    let mut s = build_phi_n(n)?;
    s.sum(&y(n + 1), "w", &y(n - 2));
    Ok(s)
}

/// Φₙ plus a fresh v = w + y_(n−2), n = product of the excluded primes.
pub fn build_cofinite(excluded: &[u64]) -> Result<EquationSystem> {
    let n = prime_product(excluded)?;
    let mut s = build_phi_n(n)?;
    s.sum("v", "w", &y(n - 2));
    Ok(s)
}

/// build_cofinite plus u₂ = u₁·u₁, u₃ = u₂·u₁ and the constraint x₁ = u₃ + u₁.
pub fn build_cofinite_cofinite(excluded: &[u64]) -> Result<EquationSystem> {
    let mut s = build_cofinite(excluded)?;
    for i in 1..=3 {
        s.add_var(&u(i));
    }
    s.product("u2", "u1", "u1");
    s.product("u3", "u2", "u1");
    s.sum("x1", "u3", "u1");
    Ok(s)
}

/// Φₙ plus u₁..u₈ tying u₁u₃ + y_(n+1) to u₂u₁ + w + y_(n−2) + u₁.
pub fn build_finite_all(primes: &[u64]) -> Result<EquationSystem> {
    let n = prime_product(primes)?;
    let mut s = build_phi_n(n)?;
    for i in 1..=8 {
        s.add_var(&u(i));
    }
    s.sum("u3", "u2", "x1");
    s.product("u4", "u1", "u3");
    s.product("u5", "u2", "u1");
    s.sum("u6", "u5", "w");
    s.sum("u7", "u6", &y(n - 2));
    s.sum("u8", "u4", &y(n + 1));
    s.sum("u8", "u7", "u1");
    Ok(s)
}

/// Chain parameters (m, k) of the root-of-unity system: m is the least
/// multiple of n exceeding 6 and k = m / n.
pub fn root_of_unity_params(n: u64) -> (u64, u64) {
    let m = (6 / n + 1) * n;
    (m, m / n)
}

/// y_i = y₁^i up to the constraint x₁ = y_(m−1)·y₁, then z₂ = y_k·z₁ and
/// z₃ = z₁·y_k.
pub fn build_root_of_unity(n: u64) -> Result<EquationSystem> {
    if n < 2 {
        return Err(Error::InvalidArgument(format!("root-of-unity system needs n ≥ 2, got {n}")));
    }
    if n > MAX_CHAIN {
        return Err(Error::InvalidArgument(format!("n = {n} exceeds the chain limit {MAX_CHAIN}")));
    }
    let (m, k) = root_of_unity_params(n);
    let mut s = EquationSystem::new();
    for i in 1..m {
        s.add_var(&y(i));
    }
    for i in 1..=3 {
        s.add_var(&z(i));
    }
    for i in 2..m {
        s.product(&y(i), &y(i - 1), "y1");
    }
    s.product("x1", &y(m - 1), "y1");
    s.product("z2", &y(k), "z1");
    s.product("z3", "z1", &y(k));
    Ok(s)
}

/// Named system families as exposed on the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Family {
    PhiN(u64),
    Finite(Vec<u64>),
    Cofinite(Vec<u64>),
    CofiniteCofinite(Vec<u64>),
    FiniteAll(Vec<u64>),
    RootOfUnity(u64),
}

impl Family {
    pub fn build(&self) -> Result<EquationSystem> {
        match self {
            Family::PhiN(n) => build_phi_n(*n),
            Family::Finite(c) => build_finite(c),
            Family::Cofinite(c) => build_cofinite(c),
            Family::CofiniteCofinite(c) => build_cofinite_cofinite(c),
            Family::FiniteAll(c) => build_finite_all(c),
            Family::RootOfUnity(n) => build_root_of_unity(*n),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Family::PhiN(_) => "phi_n",
            Family::Finite(_) => "finite",
            Family::Cofinite(_) => "cofinite",
            Family::CofiniteCofinite(_) => "cofinite_cofinite",
            Family::FiniteAll(_) => "finite_all",
            Family::RootOfUnity(_) => "root_of_unity",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn has(s: &EquationSystem, text: &str) -> bool {
        s.equations().iter().any(|e| s.render(e) == text)
    }

    #[test]
    fn phi_n_shapes() {
        let s = build_phi_n(3).unwrap();
        assert_eq!(s.vars().len(), 12);
        assert_eq!(s.equations().len(), 9);
        assert!(s.validate().is_empty());
        let s2 = build_phi_n(2).unwrap();
        assert!(has(&s2, "w1 = y3 + y1"));
        assert!(has(&s2, "w = w1 + z1"));
        assert!(!s2.vars().contains(&"w2".to_string()));
        let s4 = build_phi_n(4).unwrap();
        assert!(has(&s4, "w5 = w4 * y1"));
        assert!(has(&s4, "w4 = w3 + z2"));
        assert!(has(&s4, "w = w5 + z3"));
        assert!(build_phi_n(1).is_err());
    }

    #[test]
    fn finite_and_cofinite_families() {
        assert!(has(&build_finite(&[3]).unwrap(), "y4 = w + y1"));
        assert!(has(&build_finite(&[5]).unwrap(), "y6 = w + y3"));
        assert!(build_finite(&[2]).is_err());
        assert!(build_finite(&[4]).is_err());
        assert!(has(&build_cofinite(&[3]).unwrap(), "v = w + y1"));
        assert!(has(&build_cofinite(&[3, 5]).unwrap(), "v = w + y13"));
        assert!(build_cofinite(&[2]).is_err());
        let base = build_cofinite(&[3]).unwrap();
        let cc = build_cofinite_cofinite(&[3]).unwrap();
        assert_eq!(cc.vars().len(), base.vars().len() + 3);
        assert_eq!(cc.equations().len(), base.equations().len() + 3);
        assert!(has(&cc, "x1 = u3 + u1"));
    }

    #[test]
    fn finite_all_family() {
        let s = build_finite_all(&[3]).unwrap();
        assert!(has(&s, "u6 = u5 + w"));
        assert!(has(&s, "u7 = u6 + y1"));
        assert!(s.validate().is_empty());
        assert!(has(&build_finite_all(&[3, 5]).unwrap(), "u7 = u6 + y13"));
    }

    #[test]
    fn root_of_unity_family() {
        assert_eq!(root_of_unity_params(3), (9, 3));
        assert_eq!(root_of_unity_params(7), (7, 1));
        assert_eq!(root_of_unity_params(2), (8, 4));
        assert_eq!(root_of_unity_params(6), (12, 2));
        let s = build_root_of_unity(3).unwrap();
        assert_eq!(s.vars().len(), 13);
        assert!(has(&s, "z2 = y3 * z1"));
        assert!(has(&s, "z3 = z1 * y3"));
        let findings = s.validate();
        assert_eq!(findings.len(), 1);
        assert_eq!(findings[0].message, "product target is constant x1");
        assert_eq!(s.render(&s.equations()[findings[0].equation]), "x1 = y8 * y1");
    }
}
