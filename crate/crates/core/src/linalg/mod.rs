//! Complex dense linear algebra: echelon forms, Plücker vectors, exterior
//! minors, flags and the moving flags of the checkerboard game.

pub mod dense;
mod dual;
mod echelon;
mod flags;
mod plucker;
pub mod scalar;

use nalgebra::DMatrix;

pub use dense::{
    hcat, intersection_dim, inverse, lstsq, null_vector, orthonormal_columns, rank, singular_values, RANK_TOL,
};
pub use dual::Dual;
pub use echelon::echelonize;
pub use flags::{
    antidiag, complex_gaussian, flag_chain, random_flag, random_matrix, random_unitriangular, to_complex, Flag,
    FlagChain, MAX_FLAG_CONDITION,
};
pub use plucker::{exterior_rows, exterior_rows_generic, not_leq_set, plucker_vector, PluckerPlan};
pub use scalar::{det, Scalar, C};

/// Dense complex matrix.
pub type CMatrix = DMatrix<C>;
