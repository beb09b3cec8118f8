//! Exact integer and rational linear algebra.

mod charpoly;
mod lemmas;
mod matrix;
mod poly;
mod roots;

pub use charpoly::char_poly;
pub use lemmas::{
    constant_row_sum, coronel, det_rank_one_update, det_shifted_j, schur_complement, schur_det_check, IdentityCheck,
};
pub use matrix::{IntMatrix, RatMatrix};
pub use poly::IntPolynomial;
pub use roots::{integer_roots, is_integral_spectrum, IntegerRoots, Integrality};
