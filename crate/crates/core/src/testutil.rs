//! Shared helpers for unit tests.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::combinatorics::{all_brackets, initial_checkerboard, Checkerboard, HomotopyCase};
use crate::coords::family_pattern;
use crate::linalg::{complex_gaussian, C};

/// Every parent-child edge of every game in `Gr(k, n)`.
pub fn game_edges(k: usize, n: usize) -> Vec<(Checkerboard, Checkerboard)> {
    let brackets = all_brackets(k, n);
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for a in &brackets {
        for b in &brackets {
            if a.codim() + b.codim() > k * (n - k) {
                continue;
            }
            let Some(root) = initial_checkerboard(a, b) else {
                continue;
            };
            let mut stack = vec![root];
            while let Some(board) = stack.pop() {
                if board.is_final() || !seen.insert(board.clone()) {
                    continue;
                }
                for child in board.children().unwrap() {
                    edges.push((board.clone(), child.board.clone()));
                    stack.push(child.board);
                }
            }
        }
    }
    edges
}

pub fn random_values(d: usize, rng: &mut ChaCha8Rng) -> Vec<C> {
    (0..d).map(|_| complex_gaussian(rng)).collect()
}

pub fn sample_edges(case: HomotopyCase, count: usize, seed: u64) -> Vec<(Checkerboard, Checkerboard)> {
    let mut pool = Vec::new();
    for (k, n) in [(2, 4), (2, 5), (3, 6), (2, 7), (3, 7), (4, 8)] {
        for (p, c) in game_edges(k, n) {
            if family_pattern(&p, &c).unwrap().case == case {
                pool.push((p, c));
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| pool[rng.random_range(0..pool.len())].clone())
        .collect()
}
