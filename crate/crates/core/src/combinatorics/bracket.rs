//! Brackets: strictly increasing k-subsets of `{1, …, n}` indexing Schubert
//! conditions on `Gr(k, n)`.

use std::fmt;

use itertools::Itertools;

use crate::error::{Error, Result};

/// A strictly increasing k-subset of `{1, …, n}`.
///
/// Ordering is lexicographic on the entries, which is the global convention
/// for indexing Plücker coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Bracket {
    entries: Vec<usize>,
    n: usize,
}

impl Bracket {
    pub fn new(entries: Vec<usize>, n: usize) -> Result<Self> {
        let invalid = |reason| Error::InvalidBracket {
            entries: entries.clone(),
            n,
            reason,
        };
        if entries.is_empty() {
            return Err(invalid("empty"));
        }
        if entries.len() >= n {
            return Err(invalid("need k < n"));
        }
        if entries.iter().any(|&e| e == 0 || e > n) {
            return Err(invalid("entry outside 1..=n"));
        }
        if entries.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("entries not strictly increasing"));
        }
        Ok(Self { entries, n })
    }

    /// The bracket `[1, 2, …, k]` of the point Schubert class.
    pub fn bottom(k: usize, n: usize) -> Self {
        Self {
            entries: (1..=k).collect(),
            n,
        }
    }

    /// The bracket `[n−k+1, …, n]` of the whole Grassmannian.
    pub fn top(k: usize, n: usize) -> Self {
        Self {
            entries: (n - k + 1..=n).collect(),
            n,
        }
    }

    pub fn k(&self) -> usize {
        self.entries.len()
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[usize] {
        &self.entries
    }

    /// `|α| = Σ (α_i − i)`.
    pub fn dim(&self) -> usize {
        self.entries.iter().enumerate().map(|(i, &a)| a - (i + 1)).sum()
    }

    /// `‖α‖ = k(n−k) − |α|`.
    pub fn codim(&self) -> usize {
        self.k() * (self.n - self.k()) - self.dim()
    }

    /// `(n+1−α_k, …, n+1−α_1)`.
    pub fn dual(&self) -> Self {
        Self {
            entries: self.entries.iter().rev().map(|&a| self.n + 1 - a).collect(),
            n: self.n,
        }
    }

    /// Componentwise order: `self ≤ other` iff `self_i ≤ other_i` for all i.
    pub fn leq(&self, other: &Bracket) -> bool {
        self.entries.iter().zip(&other.entries).all(|(a, b)| a <= b)
    }

    /// Partition `λ_i = n−k+i−α_i` of the Schubert class; `|λ| = ‖α‖`.
    pub fn partition(&self) -> Vec<usize> {
        let k = self.k();
        self.entries
            .iter()
            .enumerate()
            .map(|(i, &a)| self.n - k + i + 1 - a)
            .collect()
    }
}

impl fmt::Display for Bracket {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.entries.iter().join(","))
    }
}

/// All brackets of `Gr(k, n)` in lexicographic order.
pub fn all_brackets(k: usize, n: usize) -> Vec<Bracket> {
    (1..=n).combinations(k).map(|entries| Bracket { entries, n }).collect()
}

pub fn bracket_codim(alpha: &Bracket) -> usize {
    alpha.codim()
}

pub fn dual_bracket(beta: &Bracket) -> Bracket {
    beta.dual()
}

/// True iff the codimensions sum to `k(n−k)`; errors when the brackets do not
/// all live on `Gr(k, n)`.
pub fn is_schubert_problem(brackets: &[Bracket], k: usize, n: usize) -> Result<bool> {
    if let Some(b) = brackets.iter().find(|b| b.k() != k || b.n() != n) {
        return Err(Error::InvalidProblem(format!(
            "bracket {b} does not belong to Gr({k},{n})"
        )));
    }
    let total: usize = brackets.iter().map(Bracket::codim).sum();
    Ok(total == k * (n - k))
}
