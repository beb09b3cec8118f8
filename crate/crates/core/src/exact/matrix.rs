use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{domain, Result};

/// Dense square matrix with `i64` entries.
///
/// Graph matrices have tiny entries; anything that can grow (determinants,
/// characteristic polynomial coefficients) is returned as `BigInt`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMatrix {
    n: usize,
    data: Vec<i64>,
}

impl IntMatrix {
    pub fn zeros(n: usize) -> Self {
        IntMatrix {
            n,
            data: vec![0; n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds an n×n matrix from `f(i, j)`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> i64) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        IntMatrix { n, data }
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(domain("matrix rows must form a square"));
        }
        Ok(IntMatrix { n, data: rows.concat() })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.n + j] = v;
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.data[i * self.n..(i + 1) * self.n]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        (0..self.n).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn trace(&self) -> i64 {
        (0..self.n).map(|i| self.get(i, i)).sum()
    }

    pub fn max_abs(&self) -> u64 {
        self.data.iter().map(|v| v.unsigned_abs()).max().unwrap_or(0)
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.data.iter().map(|&v| v as f64).collect()
    }

    pub fn to_rat(&self) -> RatMatrix {
        RatMatrix::from_fn(self.n, |i, j| BigRational::from_integer(self.get(i, j).into()))
    }

    /// Exact determinant by Bareiss fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        let rows: Vec<Vec<BigInt>> = (0..self.n)
            .map(|i| self.row(i).iter().map(|&v| BigInt::from(v)).collect())
            .collect();
        bareiss(rows)
    }

    /// Whitespace-separated rows, one per line.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for i in 0..self.n {
            let row: Vec<String> = self.row(i).iter().map(i64::to_string).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Determinant of a square integer matrix, consuming it.
pub(crate) fn bareiss(mut a: Vec<Vec<BigInt>>) -> BigInt {
    let n = a.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&i| !a[i][k].is_zero()) {
                Some(i) => {
                    a.swap(i, k);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                a[i][j] = v / &prev;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

/// Dense square matrix over Q, entries kept in lowest terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RatMatrix {
    n: usize,
    data: Vec<BigRational>,
}

impl RatMatrix {
    pub fn zeros(n: usize) -> Self {
        RatMatrix {
            n,
            data: vec![BigRational::zero(); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| {
            if i == j {
                BigRational::one()
            } else {
                BigRational::zero()
            }
        })
    }

    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> BigRational) -> Self {
        let mut data = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                data.push(f(i, j));
            }
        }
        RatMatrix { n, data }
    }

    pub fn from_i64_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Ok(IntMatrix::from_rows(rows)?.to_rat())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &BigRational {
        &self.data[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigRational) {
        self.data[i * self.n + j] = v;
    }

    /// Principal-free sub-block with rows `r0..r1`, columns `c0..c1`, as a
    /// general (possibly rectangular) row list.
    pub(crate) fn block(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Vec<Vec<BigRational>> {
        (r0..r1)
            .map(|i| (c0..c1).map(|j| self.get(i, j).clone()).collect())
            .collect()
    }

    pub(crate) fn from_square(rows: Vec<Vec<BigRational>>) -> Self {
        let n = rows.len();
        debug_assert!(rows.iter().all(|r| r.len() == n));
        RatMatrix {
            n,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn add(&self, other: &RatMatrix) -> RatMatrix {
        RatMatrix::from_fn(self.n, |i, j| self.get(i, j) + other.get(i, j))
    }

    pub fn sub(&self, other: &RatMatrix) -> RatMatrix {
        RatMatrix::from_fn(self.n, |i, j| self.get(i, j) - other.get(i, j))
    }

    pub fn scale(&self, c: &BigRational) -> RatMatrix {
        RatMatrix::from_fn(self.n, |i, j| self.get(i, j) * c)
    }

    pub fn mul(&self, other: &RatMatrix) -> RatMatrix {
        let n = self.n;
        RatMatrix::from_fn(n, |i, j| {
            (0..n).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * other.get(k, j))
        })
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vec<BigRational> {
        (0..self.n)
            .map(|i| (0..self.n).fold(BigRational::zero(), |acc, k| acc + self.get(i, k) * &v[k]))
            .collect()
    }

    /// `x I - self`.
    pub fn shifted(&self, x: &BigRational) -> RatMatrix {
        RatMatrix::identity(self.n).scale(x).sub(self)
    }

    /// Exact determinant: rows are cleared of denominators, then Bareiss.
    pub fn determinant(&self) -> BigRational {
        let mut scale = BigInt::one();
        let rows = (0..self.n)
            .map(|i| {
                let row = &self.data[i * self.n..(i + 1) * self.n];
                let lcm = row.iter().fold(BigInt::one(), |acc, v| acc.lcm(v.denom()));
                scale *= &lcm;
                row.iter().map(|v| v.numer() * (&lcm / v.denom())).collect::<Vec<_>>()
            })
            .collect();
        BigRational::new(bareiss(rows), scale)
    }

    /// Exact inverse by Gauss–Jordan; `None` when singular.
    pub fn inverse(&self) -> Option<RatMatrix> {
        let n = self.n;
        let mut a: Vec<Vec<BigRational>> = self.block(0, n, 0, n);
        let mut inv: Vec<Vec<BigRational>> = RatMatrix::identity(n).block(0, n, 0, n);
        for col in 0..n {
            let pivot = (col..n).find(|&r| !a[r][col].is_zero())?;
            a.swap(col, pivot);
            inv.swap(col, pivot);
            let p = a[col][col].clone();
            for j in 0..n {
                a[col][j] = &a[col][j] / &p;
                inv[col][j] = &inv[col][j] / &p;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                for j in 0..n {
                    let da = &f * &a[col][j];
                    let di = &f * &inv[col][j];
                    a[r][j] -= da;
                    inv[r][j] -= di;
                }
            }
        }
        Some(RatMatrix::from_square(inv))
    }

    /// Matrix with row `r` and column `c` removed.
    pub fn minor(&self, r: usize, c: usize) -> RatMatrix {
        let rows = (0..self.n)
            .filter(|&i| i != r)
            .map(|i| {
                (0..self.n)
                    .filter(|&j| j != c)
                    .map(|j| self.get(i, j).clone())
                    .collect()
            })
            .collect();
        RatMatrix::from_square(rows)
    }

    /// Adjugate: `det(M) M^{-1}` when invertible, transposed cofactors otherwise.
    pub fn adjugate(&self) -> RatMatrix {
        let n = self.n;
        if n == 0 {
            return RatMatrix::zeros(0);
        }
        if n == 1 {
            return RatMatrix::identity(1);
        }
        let det = self.determinant();
        if !det.is_zero() {
            return self.inverse().expect("nonzero determinant").scale(&det);
        }
        RatMatrix::from_fn(n, |i, j| {
            let c = self.minor(j, i).determinant();
            if (i + j) % 2 == 0 {
                c
            } else {
                -c
            }
        })
    }

    pub fn max_abs(&self) -> BigRational {
        self.data
            .iter()
            .map(|v| v.abs())
            .max()
            .unwrap_or_else(BigRational::zero)
    }
}
