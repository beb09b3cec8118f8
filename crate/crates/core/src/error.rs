use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// Z_n has no nonzero zero divisors (n prime or n < 4).
    #[error("Z_{n} has no nonzero zero divisors")]
    EmptyGraph { n: u64 },

    #[error("partition is not equitable: block pair ({block_i}, {block_j}) has row {row_a} sum {sum_a} but row {row_b} sum {sum_b}")]
    Equitability {
        block_i: usize,
        block_j: usize,
        row_a: usize,
        sum_a: i64,
        row_b: usize,
        sum_b: i64,
    },

    #[error("leading {k}x{k} block is singular")]
    SingularBlock { k: usize },

    #[error("xI - M is singular at x = {x}")]
    EvaluationAtEigenvalue { x: String },

    #[error("matrix is not symmetric (|a[{i}][{j}] - a[{j}][{i}]| = {gap:e})")]
    NotSymmetric { i: usize, j: usize, gap: f64 },

    #[error("Jacobi iteration did not converge in {sweeps} sweeps (off-diagonal norm {off:e})")]
    Convergence { sweeps: usize, off: f64 },

    #[error("matrix order {order} exceeds the exact-arithmetic cap {cap}")]
    Oversize { order: usize, cap: usize },

    #[error("not applicable: {0}")]
    NotApplicable(String),

    #[error("sanity check failed: {0}")]
    Sanity(String),
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
