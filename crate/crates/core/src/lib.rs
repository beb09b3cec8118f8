pub mod audit;
pub mod ecc;
pub mod error;
pub mod exact;
pub mod graph;
pub mod number_theory;
pub mod spectra;

pub use error::{Error, Result};
