//! Integer arithmetic behind the divisor-class decomposition of Z_n.
//!
//! Everything here works on `u64` and uses trial division; the crate only
//! ever deals with moduli up to a few million.

use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

/// Prime factorization `n = p_1^a_1 * ... * p_r^a_r` with strictly increasing primes.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Factorization {
    n: u64,
    factors: Vec<(u64, u32)>,
}

impl Factorization {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    /// Number of distinct primes, `r`.
    pub fn distinct_primes(&self) -> usize {
        self.factors.len()
    }

    pub fn max_exponent(&self) -> u32 {
        self.factors.iter().map(|&(_, a)| a).max().unwrap_or(0)
    }

    /// Product of the distinct primes (the radical of n).
    pub fn radical(&self) -> u64 {
        self.factors.iter().map(|&(p, _)| p).product()
    }

    /// Total number of divisors, `prod (a_i + 1)`.
    pub fn divisor_count(&self) -> u64 {
        self.factors.iter().map(|&(_, a)| u64::from(a) + 1).product()
    }

    /// `Some((p, t))` when n is a prime power `p^t`.
    pub fn as_prime_power(&self) -> Option<(u64, u32)> {
        match self.factors.as_slice() {
            [(p, t)] => Some((*p, *t)),
            _ => None,
        }
    }
}

pub fn factorize(n: u64) -> Result<Factorization> {
    if n < 2 {
        return Err(domain(format!("cannot factorize {n}: need n >= 2")));
    }
    let mut factors = Vec::new();
    let mut m = n;
    let mut p = 2u64;
    while p * p <= m {
        if m.is_multiple_of(p) {
            let mut a = 0;
            while m.is_multiple_of(p) {
                m /= p;
                a += 1;
            }
            factors.push((p, a));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if m > 1 {
        factors.push((m, 1));
    }
    Ok(Factorization { n, factors })
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut p = 2u64;
    while p * p <= n {
        if n.is_multiple_of(p) {
            return false;
        }
        p += 1;
    }
    true
}

/// Composite means n >= 4 and not prime.
pub fn is_composite(n: u64) -> bool {
    n >= 4 && !is_prime(n)
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

pub fn euler_phi(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(domain("euler_phi(0) is undefined"));
    }
    if n == 1 {
        return Ok(1);
    }
    let f = factorize(n)?;
    Ok(f.factors.iter().map(|&(p, a)| (p - 1) * p.pow(a - 1)).product())
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// All d with `d | n` and `1 < d < n`, ascending. Its length is s(n).
pub fn proper_divisors(n: u64) -> Vec<u64> {
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d * d != n {
                large.push(n / d);
            }
        }
        d += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

/// How the class A(d) induces a subgraph of the zero-divisor graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ClassKind {
    Complete,
    Null,
}

/// `A(d) = { k in [1, n-1] : gcd(k, n) = d }`, elements ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DivisorClass {
    n: u64,
    d: u64,
    elements: Vec<u64>,
}

impl DivisorClass {
    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn divisor(&self) -> u64 {
        self.d
    }

    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }
}

fn check_proper_divisor(n: u64, d: u64) -> Result<()> {
    if d <= 1 || d >= n || !n.is_multiple_of(d) {
        return Err(domain(format!("{d} is not a proper divisor of {n}")));
    }
    Ok(())
}

pub fn divisor_class(n: u64, d: u64) -> Result<DivisorClass> {
    check_proper_divisor(n, d)?;
    // k = r*d with gcd(r, n/d) = 1 and 1 <= r < n/d
    let m = n / d;
    let elements = (1..m).filter(|&r| gcd(r, m) == 1).map(|r| r * d).collect();
    Ok(DivisorClass { n, d, elements })
}

/// Complete iff `n | d^2`.
pub fn class_graph_kind(n: u64, d: u64) -> Result<ClassKind> {
    check_proper_divisor(n, d)?;
    let sq = u128::from(d) * u128::from(d);
    Ok(if sq % u128::from(n) == 0 {
        ClassKind::Complete
    } else {
        ClassKind::Null
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorize_examples() {
        assert_eq!(factorize(35).unwrap().factors(), &[(5, 1), (7, 1)]);
        assert_eq!(factorize(8).unwrap().factors(), &[(2, 3)]);
        assert_eq!(factorize(72).unwrap().factors(), &[(2, 3), (3, 2)]);
        assert_eq!(factorize(97).unwrap().factors(), &[(97, 1)]);
        assert!(factorize(1).is_err());
        assert!(factorize(0).is_err());
    }

    #[test]
    fn phi_examples() {
        assert_eq!(euler_phi(1).unwrap(), 1);
        assert_eq!(euler_phi(35).unwrap(), 24);
        assert_eq!(euler_phi(8).unwrap(), 4);
        assert!(euler_phi(0).is_err());
    }

    #[test]
    fn proper_divisor_examples() {
        assert_eq!(proper_divisors(35), vec![5, 7]);
        assert_eq!(proper_divisors(8), vec![2, 4]);
        assert_eq!(proper_divisors(12), vec![2, 3, 4, 6]);
        assert_eq!(proper_divisors(49), vec![7]);
        assert!(proper_divisors(13).is_empty());
    }

    #[test]
    fn class_examples() {
        assert_eq!(divisor_class(35, 5).unwrap().elements(), &[5, 10, 15, 20, 25, 30]);
        assert_eq!(divisor_class(35, 7).unwrap().elements(), &[7, 14, 21, 28]);
        assert_eq!(divisor_class(8, 4).unwrap().elements(), &[4]);
        assert!(divisor_class(35, 3).is_err());
        assert!(divisor_class(35, 35).is_err());
        assert!(divisor_class(35, 1).is_err());
    }

    #[test]
    fn class_kind_examples() {
        assert_eq!(class_graph_kind(35, 5).unwrap(), ClassKind::Null);
        assert_eq!(class_graph_kind(27, 9).unwrap(), ClassKind::Complete);
        for p in [2, 3, 5, 7, 11] {
            assert_eq!(class_graph_kind(p * p * p, p).unwrap(), ClassKind::Null);
        }
    }

    #[test]
    fn invariants_up_to_2000() {
        for n in 2..=2000u64 {
            let f = factorize(n).unwrap();
            let prod: u64 = f.factors().iter().map(|&(p, a)| p.pow(a)).product();
            assert_eq!(prod, n);
            assert!(f.factors().windows(2).all(|w| w[0].0 < w[1].0));

            let divs = proper_divisors(n);
            assert_eq!(divs.len() as u64, f.divisor_count() - 2, "s({n})");

            if !is_composite(n) {
                continue;
            }
            let mut seen = vec![false; n as usize];
            for &d in &divs {
                let class = divisor_class(n, d).unwrap();
                assert_eq!(class.len() as u64, euler_phi(n / d).unwrap());
                for &k in class.elements() {
                    assert!(!seen[k as usize], "classes overlap at {k} for n={n}");
                    seen[k as usize] = true;
                }
            }
            // the union is exactly the nonzero zero divisors
            for k in 1..n {
                assert_eq!(seen[k as usize], gcd(k, n) > 1, "n={n}, k={k}");
            }
        }
    }
}
