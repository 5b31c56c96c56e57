//! Stiefel coordinates for checkerboard varieties, the coordinate families
//! of the three move cases, and transfer between child and parent.

mod family;
mod pattern;
mod transfer;

pub use family::{family_pattern, Expr, FamilyPattern, SwapData, Term};
pub use pattern::{pattern_from_board, Entry, StiefelPattern};
pub use transfer::{
    basis_change, case_one_closed_form, fit_to_pattern, read_slots, reduce_to_pattern, transfer_to_parent, SLOT_TOL,
};
