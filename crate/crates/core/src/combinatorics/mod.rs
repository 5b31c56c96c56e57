//! Brackets, permutation arrays, checkerboards, the checkerboard game and the
//! tournament of games that counts solutions.

mod board;
mod bracket;
mod render;
mod schedule;
mod tournament;

pub use board::{
    children, classify_move, initial_checkerboard, leaf_bracket, Branch, Checkerboard, Child, HomotopyCase, MoveCase,
};
pub use bracket::{all_brackets, bracket_codim, dual_bracket, is_schubert_problem, Bracket};
pub use render::{game_to_dot, tournament_to_dot, tournament_to_text};
pub use schedule::{bubble_sort_schedule, Move, PermutationArray, Schedule};
pub use tournament::{
    build_tournament, count_chains, count_solutions, game_chains, Edge, EdgeKind, NodeId, Tournament, TournamentNode,
};
