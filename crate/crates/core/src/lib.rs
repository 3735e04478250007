//! Exactly solvable Woods-Saxon type problems through the Nikiforov-Uvarov
//! method: Hermitian, PT-symmetric and non-PT complex variants.

// `!(x > 0.0)` doubles as a NaN check
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod cmath;
pub mod eigenfunctions;
pub mod error;
pub mod nu_engine;
pub mod params;
pub mod poly;
pub mod potential;
pub mod report;
pub mod spectra;
pub mod verifier;

pub use error::{Error, Result};
pub use num_complex::Complex64;
