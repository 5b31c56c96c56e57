//! Littlewood-Richardson homotopy for Schubert problems on Grassmannians.
//!
//! Solutions are counted with checkerboard tournaments and computed by
//! tracking them through coordinate homotopies attached to each checkerboard
//! move, followed by a parameter homotopy to the requested flags.

// `!(x < tol)` is used on purpose so that NaN fails tolerance checks.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod cli;
pub mod combinatorics;
pub mod coords;
pub mod equations;
pub mod error;
pub mod linalg;
pub mod solver;
pub mod tracker;

#[cfg(test)]
mod testutil;

pub use error::{Error, Result};
