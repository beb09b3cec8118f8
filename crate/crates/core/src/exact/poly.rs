use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Serialize, Serializer};

/// Polynomial with integer coefficients, stored in ascending degree.
/// Trailing zero coefficients are trimmed, so the zero polynomial is `[]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntPolynomial {
    coeffs: Vec<BigInt>,
}

impl IntPolynomial {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        IntPolynomial { coeffs }
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn one() -> Self {
        Self::from_i64(&[1])
    }

    /// `x - r`.
    pub fn linear(r: &BigInt) -> Self {
        Self::new(vec![-r.clone(), BigInt::one()])
    }

    /// `prod (x - r)^m`.
    pub fn from_roots<'a>(roots: impl IntoIterator<Item = (&'a BigInt, usize)>) -> Self {
        let mut p = Self::one();
        for (r, m) in roots {
            for _ in 0..m {
                p = p.mul(&Self::linear(r));
            }
        }
        p
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial reports 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(One::is_one)
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_rational(&self, x: &BigRational) -> BigRational {
        self.coeffs.iter().rev().fold(BigRational::zero(), |acc, c| {
            acc * x + BigRational::from_integer(c.clone())
        })
    }

    /// Horner evaluation in floating point. Meaningless once coefficients
    /// overflow `f64`, so keep it to low-degree inputs.
    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }

    pub fn mul(&self, other: &IntPolynomial) -> IntPolynomial {
        if self.is_zero() || other.is_zero() {
            return IntPolynomial::new(Vec::new());
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPolynomial::new(out)
    }

    /// Synthetic division by `x - r`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, r: &BigInt) -> (IntPolynomial, BigInt) {
        if self.coeffs.is_empty() {
            return (self.clone(), BigInt::zero());
        }
        let mut q = vec![BigInt::zero(); self.coeffs.len() - 1];
        let mut carry = BigInt::zero();
        for i in (0..self.coeffs.len()).rev() {
            let v = &self.coeffs[i] + &carry * r;
            if i == 0 {
                return (IntPolynomial::new(q), v);
            }
            q[i - 1] = v.clone();
            carry = v;
        }
        unreachable!()
    }

    /// Approximate `log2 |c|` for each nonzero coefficient; used for root bounds.
    pub(crate) fn log2_abs(c: &BigInt) -> f64 {
        let bits = c.bits();
        if bits <= 1000 {
            return c.abs().to_f64().map(f64::log2).unwrap_or(f64::NEG_INFINITY);
        }
        let shift = bits - 60;
        let top: BigInt = c.abs() >> shift;
        top.to_f64().unwrap().log2() + shift as f64
    }

    /// Content-free check that `self` divides `other` exactly, returning the quotient.
    pub fn exact_div(&self, other: &IntPolynomial) -> Option<IntPolynomial> {
        let lead = other.leading()?;
        let mut rem = self.coeffs.clone();
        let dq = other.degree();
        if self.is_zero() {
            return Some(self.clone());
        }
        if self.degree() < dq {
            return None;
        }
        let mut q = vec![BigInt::zero(); self.degree() - dq + 1];
        for k in (0..q.len()).rev() {
            let (c, r) = rem[k + dq].div_rem(lead);
            if !r.is_zero() {
                return None;
            }
            for (j, oc) in other.coeffs.iter().enumerate() {
                rem[k + j] -= &c * oc;
            }
            q[k] = c;
        }
        if rem.iter().all(Zero::is_zero) {
            Some(IntPolynomial::new(q))
        } else {
            None
        }
    }
}

impl fmt::Display for IntPolynomial {
    /// Highest power first, `x^k + ... + c1*x + c0`; zero coefficients are
    /// skipped, negative ones appear as `- c`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    f.write_str("-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if k == 1 {
                        f.write_str("x")?;
                    } else {
                        write!(f, "x^{k}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl Serialize for IntPolynomial {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}
