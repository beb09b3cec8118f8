//! Inputs shared by the benchmarks.

use zdg_core::ecc::eccentricity_matrix;
use zdg_core::exact::IntMatrix;
use zdg_core::graph::build_zdg;

/// Moduli whose eccentricity matrices have orders 10, 31, 63 and 127.
pub const SIZES: [u64; 4] = [35, 64, 128, 256];

pub fn zdg_matrix(n: u64) -> IntMatrix {
    eccentricity_matrix(&build_zdg(n).expect("composite modulus"))
}
