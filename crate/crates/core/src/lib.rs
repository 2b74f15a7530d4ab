//! Slice and axial monogenic coherent state transforms for ℂ_m-valued
//! signals on the real line.

pub mod clifford;
pub mod error;
pub mod grid;
pub mod harness;
pub mod quadrature;
pub mod radon;
pub mod signal;
pub mod slice;
pub mod specfun;

pub use error::{Error, Result};
