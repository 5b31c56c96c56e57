//! The bubble sort of black checkers from the anti-diagonal to the diagonal.
//!
//! Rows and columns are 1-based, rows counted from the top. For
//! `c = 2, …, n` the checker in column `c` descends from row `n+1−c` to row
//! `n`, one row per move, trading rows with the checker just below it.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

/// One-line permutation: `perm[c-1]` is the row of the black checker in
/// column `c`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PermutationArray {
    pub perm: Vec<usize>,
    /// Row swapped with the row below it to reach this array from the
    /// previous one in the schedule.
    pub critical_row: Option<usize>,
}

impl PermutationArray {
    pub fn n(&self) -> usize {
        self.perm.len()
    }

    pub fn row_of_column(&self, c: usize) -> usize {
        self.perm[c - 1]
    }

    pub fn column_of_row(&self, r: usize) -> usize {
        self.perm.iter().position(|&x| x == r).unwrap() + 1
    }

    /// `dim(M_i ∩ F_j) = #{ℓ ≤ j : π(ℓ) ≤ i}`.
    pub fn intersection_dim(&self, i: usize, j: usize) -> usize {
        self.perm[..j].iter().filter(|&&p| p <= i).count()
    }

    pub fn one_line(&self) -> String {
        self.perm.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("")
    }
}

/// Geometry of a single move from one stage to the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    /// Column of the descending checker.
    pub column: usize,
    /// Critical row: the descending checker's row before the move.
    pub row: usize,
    /// Column of the ascending checker, which sits at `(row+1, asc_column)`
    /// before the move and at `(row, asc_column)` after it.
    pub asc_column: usize,
}

impl Move {
    /// Region B holds the columns `1..asc_column` at rows `n−c+1..row`.
    pub fn b_columns(&self) -> usize {
        self.asc_column - 1
    }
}

/// The full schedule for one board size.
#[derive(Clone, Debug)]
pub struct Schedule {
    pub n: usize,
    pub arrays: Vec<PermutationArray>,
    /// `moves[s]` takes `arrays[s]` to `arrays[s+1]`.
    pub moves: Vec<Move>,
}

impl Schedule {
    fn build(n: usize) -> Self {
        assert!(n >= 2, "bubble sort needs n >= 2");
        let mut perm: Vec<usize> = (1..=n).map(|c| n + 1 - c).collect();
        let mut arrays = vec![PermutationArray {
            perm: perm.clone(),
            critical_row: None,
        }];
        let mut moves = Vec::with_capacity(n * (n - 1) / 2);
        for c in 2..=n {
            for r in (n + 1 - c)..n {
                debug_assert_eq!(perm[c - 1], r);
                let asc = perm.iter().position(|&x| x == r + 1).unwrap();
                moves.push(Move {
                    column: c,
                    row: r,
                    asc_column: asc + 1,
                });
                perm[c - 1] = r + 1;
                perm[asc] = r;
                arrays.push(PermutationArray {
                    perm: perm.clone(),
                    critical_row: Some(r),
                });
            }
        }
        Self { n, arrays, moves }
    }

    /// Cached schedule for `n`.
    pub fn get(n: usize) -> Arc<Schedule> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<Schedule>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        let mut guard = cache.lock().unwrap();
        guard.entry(n).or_insert_with(|| Arc::new(Schedule::build(n))).clone()
    }

    pub fn stages(&self) -> usize {
        self.arrays.len()
    }

    pub fn last_stage(&self) -> usize {
        self.arrays.len() - 1
    }
}

/// The `n(n−1)/2 + 1` permutation arrays from `ω₀` to the identity.
pub fn bubble_sort_schedule(n: usize) -> Vec<PermutationArray> {
    Schedule::get(n).arrays.clone()
}
