//! Determinant identities used to reduce eccentricity characteristic
//! polynomials, each computed both directly and through the identity.

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::matrix::RatMatrix;
use crate::error::{domain, Error, Result};

/// Both sides of a determinant identity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentityCheck {
    pub direct: BigRational,
    pub via_identity: BigRational,
}

impl IdentityCheck {
    pub fn holds(&self) -> bool {
        self.direct == self.via_identity
    }
}

/// `D - C A^{-1} B` for the split after the leading `k x k` block `A`.
pub fn schur_complement(m: &RatMatrix, k: usize) -> Result<RatMatrix> {
    let n = m.order();
    if k == 0 || k > n {
        return Err(domain(format!("leading block size {k} out of range for order {n}")));
    }
    let a = RatMatrix::from_square(m.block(0, k, 0, k));
    let a_inv = a.inverse().ok_or(Error::SingularBlock { k })?;
    let b = m.block(0, k, k, n);
    let c = m.block(k, n, 0, k);
    let r = n - k;

    // A^{-1} B, k x r
    let aib: Vec<Vec<BigRational>> = (0..k)
        .map(|i| {
            (0..r)
                .map(|j| (0..k).fold(BigRational::zero(), |acc, t| acc + a_inv.get(i, t) * &b[t][j]))
                .collect()
        })
        .collect();
    Ok(RatMatrix::from_fn(r, |i, j| {
        let cab = (0..k).fold(BigRational::zero(), |acc, t| acc + &c[i][t] * &aib[t][j]);
        m.get(k + i, k + j) - cab
    }))
}

/// `det(M) == det(A) * det(M/A)`.
pub fn schur_det_check(m: &RatMatrix, k: usize) -> Result<IdentityCheck> {
    let s = schur_complement(m, k)?;
    let a = RatMatrix::from_square(m.block(0, k, 0, k));
    Ok(IdentityCheck {
        direct: m.determinant(),
        via_identity: a.determinant() * s.determinant(),
    })
}

fn shifted_inverse(m: &RatMatrix, x: &BigRational) -> Result<RatMatrix> {
    m.shifted(x)
        .inverse()
        .ok_or_else(|| Error::EvaluationAtEigenvalue { x: x.to_string() })
}

/// Sum of all entries of `(xI - M)^{-1}`.
pub fn coronel(m: &RatMatrix, x: &BigRational) -> Result<BigRational> {
    let inv = shifted_inverse(m, x)?;
    let n = m.order();
    let mut total = BigRational::zero();
    for i in 0..n {
        for j in 0..n {
            total += inv.get(i, j);
        }
    }
    Ok(total)
}

/// Common row sum, if every row of `m` sums to the same value.
pub fn constant_row_sum(m: &RatMatrix) -> Option<BigRational> {
    let n = m.order();
    let sums: Vec<BigRational> = (0..n)
        .map(|i| (0..n).fold(BigRational::zero(), |acc, j| acc + m.get(i, j)))
        .collect();
    let first = sums.first()?.clone();
    sums.iter().all(|s| *s == first).then_some(first)
}

/// `det(xI - A - beta J)` directly and as `(1 - beta * coronel_A(x)) det(xI - A)`.
pub fn det_shifted_j(a: &RatMatrix, beta: &BigRational, x: &BigRational) -> Result<IdentityCheck> {
    let n = a.order();
    let shifted = a.shifted(x);
    let gamma = coronel(a, x)?;
    let j = RatMatrix::from_fn(n, |_, _| beta.clone());
    Ok(IdentityCheck {
        direct: shifted.sub(&j).determinant(),
        via_identity: (BigRational::one() - beta * gamma) * shifted.determinant(),
    })
}

/// `det(M + u v^T)` directly and as `det(M) + v^T adj(M) u`.
pub fn det_rank_one_update(m: &RatMatrix, u: &[BigRational], v: &[BigRational]) -> Result<IdentityCheck> {
    let n = m.order();
    if u.len() != n || v.len() != n {
        return Err(domain(format!(
            "vector lengths {} and {} do not match order {n}",
            u.len(),
            v.len()
        )));
    }
    let updated = RatMatrix::from_fn(n, |i, j| m.get(i, j) + &u[i] * &v[j]);
    let adj_u = m.adjugate().mul_vec(u);
    let quad = v
        .iter()
        .zip(&adj_u)
        .fold(BigRational::zero(), |acc, (a, b)| acc + a * b);
    Ok(IdentityCheck {
        direct: updated.determinant(),
        via_identity: m.determinant() + quad,
    })
}
