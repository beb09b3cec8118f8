//! Exact characteristic polynomials by multi-modular Hessenberg reduction.
//!
//! `det(xI - M)` is computed modulo enough 62-bit primes to cover a Hadamard
//! bound on every coefficient, then lifted with the Chinese remainder theorem
//! into the symmetric residue range.

use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::matrix::IntMatrix;
use super::poly::IntPolynomial;

fn mul_mod(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

fn pow_mod(mut b: u64, mut e: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, p);
        }
        b = mul_mod(b, b, p);
        e >>= 1;
    }
    acc
}

/// Deterministic Miller–Rabin for all `u64`.
fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const BASES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for &b in &BASES {
        if n.is_multiple_of(b) {
            return n == b;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const PRIME_POOL: usize = 256;

/// Descending primes just below 2^62.
fn moduli() -> &'static [u64] {
    static POOL: OnceLock<Vec<u64>> = OnceLock::new();
    POOL.get_or_init(|| {
        let mut out = Vec::with_capacity(PRIME_POOL);
        let mut c = (1u64 << 62) - 1;
        while out.len() < PRIME_POOL {
            if is_prime_u64(c) {
                out.push(c);
            }
            c -= 2;
        }
        out
    })
}

/// Upper bound on `log2 |c_k|` over all coefficients of `det(xI - M)`.
///
/// The coefficient of `x^(n-k)` is a signed sum of the `C(n,k)` principal
/// k×k minors, each bounded by Hadamard's `(sqrt(k) * B)^k`.
fn coefficient_bits(n: usize, max_entry: u64) -> f64 {
    if max_entry == 0 {
        return 0.0;
    }
    let lb = (max_entry as f64).log2();
    let mut log_binom = 0.0f64;
    let mut best = 0.0f64;
    for k in 1..=n {
        log_binom += ((n - k + 1) as f64).log2() - (k as f64).log2();
        let bits = log_binom + k as f64 * (0.5 * (k as f64).log2() + lb);
        best = best.max(bits);
    }
    best
}

/// Characteristic polynomial of `m` reduced modulo `p`, ascending coefficients.
fn char_poly_mod(m: &IntMatrix, p: u64) -> Vec<u64> {
    let n = m.order();
    let reduce = |v: i64| -> u64 { (i128::from(v).rem_euclid(i128::from(p))) as u64 };
    let mut h: Vec<Vec<u64>> = (0..n).map(|i| m.row(i).iter().map(|&v| reduce(v)).collect()).collect();

    // Similarity transform to upper Hessenberg form.
    for col in 0..n.saturating_sub(2) {
        let target = col + 1;
        let Some(piv) = (target..n).find(|&i| h[i][col] != 0) else {
            continue;
        };
        if piv != target {
            h.swap(piv, target);
            for row in h.iter_mut() {
                row.swap(piv, target);
            }
        }
        let inv = pow_mod(h[target][col], p - 2, p);
        for i in target + 1..n {
            if h[i][col] == 0 {
                continue;
            }
            let u = mul_mod(h[i][col], inv, p);
            // row_i -= u * row_target
            let pivot_row = h[target].clone();
            for (x, &y) in h[i].iter_mut().zip(&pivot_row) {
                *x = (*x + p - mul_mod(u, y, p)) % p;
            }
            // col_target += u * col_i
            for row in h.iter_mut() {
                let t = mul_mod(u, row[i], p);
                row[target] = (row[target] + t) % p;
            }
        }
    }

    // p_0 = 1; p_{k+1} = (x - h_kk) p_k - sum_i h_{k-i,k} (prod subdiag) p_{k-i}
    let mut polys: Vec<Vec<u64>> = vec![vec![1]];
    for k in 0..n {
        let prev = &polys[k];
        let mut next = vec![0u64; k + 2];
        for (d, &c) in prev.iter().enumerate() {
            next[d + 1] = (next[d + 1] + c) % p;
            let t = mul_mod(h[k][k], c, p);
            next[d] = (next[d] + p - t) % p;
        }
        let mut sub = 1u64;
        for i in 1..=k {
            sub = mul_mod(sub, h[k - i + 1][k - i], p);
            if sub == 0 {
                break;
            }
            let t = mul_mod(h[k - i][k], sub, p);
            if t == 0 {
                continue;
            }
            for (d, &c) in polys[k - i].iter().enumerate() {
                let v = mul_mod(t, c, p);
                next[d] = (next[d] + p - v) % p;
            }
        }
        polys.push(next);
    }
    polys.pop().expect("at least p_0")
}

/// Exact monic characteristic polynomial `det(xI - M)`.
pub fn char_poly(m: &IntMatrix) -> IntPolynomial {
    let n = m.order();
    let needed_bits = coefficient_bits(n, m.max_abs()) + 2.0;
    let primes = moduli();
    let count = ((needed_bits / 61.0).ceil() as usize).max(1) + 1;
    assert!(
        count <= primes.len(),
        "matrix of order {n} needs {count} moduli; pool has {}",
        primes.len()
    );

    let mut modulus = BigInt::one();
    let mut acc: Vec<BigInt> = vec![BigInt::zero(); n + 1];
    for &p in &primes[..count] {
        let residues = char_poly_mod(m, p);
        let pb = BigInt::from(p);
        if modulus.is_one() {
            acc = residues.iter().map(|&r| BigInt::from(r)).collect();
        } else {
            // x ≡ acc (mod M), x ≡ r (mod p)  =>  x = acc + M * ((r - acc) * M^{-1} mod p)
            let m_mod_p = (&modulus % &pb).to_u64().expect("residue below p");
            let inv = pow_mod(m_mod_p, p - 2, p);
            for (a, &r) in acc.iter_mut().zip(&residues) {
                let a_mod = a.mod_floor(&pb).to_u64().expect("residue below p");
                let diff = (r + p - a_mod) % p;
                let t = mul_mod(diff, inv, p);
                *a += &modulus * BigInt::from(t);
            }
        }
        modulus *= pb;
    }
    let half = &modulus >> 1usize;
    let coeffs = acc
        .into_iter()
        .map(|c| if c > half { c - &modulus } else { c })
        .collect::<Vec<_>>();
    debug_assert!(coeffs.last().is_some_and(|c| c.is_one()));
    debug_assert!(coeffs.iter().all(|c| c.abs() < half));
    IntPolynomial::new(coeffs)
}
