//! Exact counts of 2x2 integer matrices with a prescribed integer eigenvalue,
//! the limiting eigenvalue densities of integer and uniform real 2x2
//! matrices, and Monte Carlo checks of both.

pub mod cli;
pub mod closedform;
pub mod error;
pub mod exactcount;
pub mod matrix;
pub mod montecarlo;
pub mod verify;

pub use error::{Error, Result};
pub use matrix::{IntMatrix2, RealMatrix2, SingularForm, SpectrumClass};
