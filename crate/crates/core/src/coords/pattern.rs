//! Stiefel coordinate patterns of checkerboard varieties.

use std::fmt;

use crate::combinatorics::Checkerboard;
use crate::linalg::{CMatrix, C};

/// Kind of one entry of a coordinate pattern.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Zero,
    One,
    Var(usize),
}

/// `n × k` pattern whose column `j` belongs to the `j`-th red checker from
/// the top. Variables are numbered column by column, top to bottom.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StiefelPattern {
    n: usize,
    k: usize,
    entries: Vec<Entry>,
    pivots: Vec<usize>,
    slots: Vec<(usize, usize)>,
}

impl StiefelPattern {
    /// Builds a pattern from per-column entries, numbering variables.
    /// `kinds[j][i]` is `None` for zero, `Some(true)` for one and
    /// `Some(false)` for a variable.
    fn from_kinds(n: usize, kinds: &[Vec<Option<bool>>]) -> Self {
        let k = kinds.len();
        let mut entries = vec![Entry::Zero; n * k];
        let mut pivots = vec![0; k];
        let mut slots = Vec::new();
        for (j, col) in kinds.iter().enumerate() {
            for (i, kind) in col.iter().enumerate() {
                entries[i * k + j] = match kind {
                    None => Entry::Zero,
                    Some(true) => {
                        pivots[j] = i + 1;
                        Entry::One
                    }
                    Some(false) => {
                        slots.push((i, j));
                        Entry::Var(slots.len() - 1)
                    }
                };
            }
        }
        Self {
            n,
            k,
            entries,
            pivots,
            slots,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Entry at 0-based `(row, col)`.
    pub fn get(&self, i: usize, j: usize) -> Entry {
        self.entries[i * self.k + j]
    }

    pub fn var_count(&self) -> usize {
        self.slots.len()
    }

    /// 1-based row of the 1 in each column.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// 0-based `(row, col)` of each variable.
    pub fn slots(&self) -> &[(usize, usize)] {
        &self.slots
    }

    /// Numeric matrix for given variable values.
    pub fn substitute(&self, values: &[C]) -> CMatrix {
        assert_eq!(values.len(), self.var_count(), "variable count mismatch");
        CMatrix::from_fn(self.n, self.k, |i, j| match self.get(i, j) {
            Entry::Zero => C::new(0.0, 0.0),
            Entry::One => C::new(1.0, 0.0),
            Entry::Var(v) => values[v],
        })
    }
}

impl fmt::Display for StiefelPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for i in 0..self.n {
            let row: Vec<String> = (0..self.k)
                .map(|j| match self.get(i, j) {
                    Entry::Zero => ".".to_string(),
                    Entry::One => "1".to_string(),
                    Entry::Var(_) => format!("y{},{}", i + 1, j + 1),
                })
                .collect();
            writeln!(f, "{}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Stiefel coordinates of a checkerboard variety: entry `(i, j)` is zero
/// unless the black checker in row `i` is weakly northwest of red checker
/// `j` and its square holds no other red checker; it is 1 in red checker
/// `j`'s own row.
pub fn pattern_from_board(b: &Checkerboard) -> StiefelPattern {
    let n = b.n();
    let black = b.black();
    let kinds: Vec<Vec<Option<bool>>> = b
        .reds()
        .iter()
        .map(|&(rho, kappa)| {
            (1..=n)
                .map(|i| {
                    let col = black.column_of_row(i);
                    if i == rho {
                        debug_assert!(col <= kappa, "black checker in red row is east of it");
                        Some(true)
                    } else if i < rho && col <= kappa && !b.has_red(i, col) {
                        Some(false)
                    } else {
                        None
                    }
                })
                .collect()
        })
        .collect();
    StiefelPattern::from_kinds(n, &kinds)
}
