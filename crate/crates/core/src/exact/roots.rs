use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use super::charpoly::char_poly;
use super::matrix::IntMatrix;
use super::poly::IntPolynomial;

/// Integer roots of a monic polynomial with multiplicities, and what is left.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct IntegerRoots {
    /// Ascending by root.
    #[serde(serialize_with = "ser_roots")]
    pub roots: Vec<(BigInt, usize)>,
    pub residual: IntPolynomial,
}

fn ser_roots<S: serde::Serializer>(roots: &[(BigInt, usize)], s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(roots.len()))?;
    for (r, m) in roots {
        seq.serialize_element(&(r.to_string(), m))?;
    }
    seq.end()
}

impl IntegerRoots {
    /// `prod (x - r)^m * residual`.
    pub fn product(&self) -> IntPolynomial {
        IntPolynomial::from_roots(self.roots.iter().map(|(r, m)| (r, *m))).mul(&self.residual)
    }

    pub fn root_count(&self) -> usize {
        self.roots.iter().map(|(_, m)| m).sum()
    }
}

/// Fujiwara bound `2 max |a_{n-k}|^{1/k}` (last term halved) for a monic
/// polynomial with nonzero constant term, as an integer ceiling.
fn fujiwara_bound(p: &IntPolynomial) -> u64 {
    let c = p.coeffs();
    let n = p.degree();
    let mut best = f64::NEG_INFINITY;
    for k in 1..=n {
        let a = &c[n - k];
        if a.is_zero() {
            continue;
        }
        let mut lg = IntPolynomial::log2_abs(a);
        if k == n {
            lg -= 1.0;
        }
        best = best.max(lg / k as f64);
    }
    let bound = 2f64.powf(best + 1.0);
    if bound.is_finite() && bound < 9.0e15 {
        bound.ceil() as u64 + 1
    } else {
        u64::MAX
    }
}

/// Divides out `(x - r)` as often as it goes; returns the multiplicity.
fn deflate(p: &mut IntPolynomial, r: &BigInt) -> usize {
    let mut mult = 0;
    loop {
        if p.degree() == 0 {
            return mult;
        }
        let (q, rem) = p.div_linear(r);
        if !rem.is_zero() {
            return mult;
        }
        *p = q;
        mult += 1;
    }
}

/// Every integer root of a monic polynomial, by the rational-root theorem.
///
/// Candidates are the divisors of the constant term inside the Fujiwara
/// root bound (and never beyond `|c_0|`), tried in increasing magnitude with
/// deflation after each hit.
pub fn integer_roots(p: &IntPolynomial) -> IntegerRoots {
    assert!(p.is_monic(), "integer_roots expects a monic polynomial");
    let mut residual = p.clone();
    let mut roots: Vec<(BigInt, usize)> = Vec::new();

    let zero = BigInt::zero();
    let zeros = deflate(&mut residual, &zero);
    if zeros > 0 {
        roots.push((zero, zeros));
    }
    if residual.degree() > 0 {
        let c0 = residual.coeffs()[0].abs();
        let limit = fujiwara_bound(&residual).min(c0.to_u64().unwrap_or(u64::MAX));
        let mut r = 1u64;
        while r <= limit && residual.degree() > 0 {
            let rb = BigInt::from(r);
            if residual.coeffs()[0].is_multiple_of(&rb) {
                for cand in [rb.clone(), -rb] {
                    let m = deflate(&mut residual, &cand);
                    if m > 0 {
                        roots.push((cand, m));
                    }
                }
            }
            r += 1;
        }
    }
    roots.sort_by(|a, b| a.0.cmp(&b.0));
    IntegerRoots { roots, residual }
}

/// Integrality certificate for a symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Integrality {
    pub integral: bool,
    pub char_poly: IntPolynomial,
    pub factorization: IntegerRoots,
}

/// True iff the characteristic polynomial splits into integer linear factors.
pub fn is_integral_spectrum(m: &IntMatrix) -> Integrality {
    let cp = char_poly(m);
    let factorization = integer_roots(&cp);
    Integrality {
        integral: factorization.residual.degree() == 0 && factorization.residual.coeffs()[0].is_one(),
        char_poly: cp,
        factorization,
    }
}
