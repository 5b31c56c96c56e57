//! Plücker vectors by the column-subset recursion, exterior minors, and the
//! brackets that index the efficient Schubert equations.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use itertools::Itertools;

use super::scalar::{Scalar, C};
use super::CMatrix;
use crate::combinatorics::{all_brackets, Bracket};

/// Precomputed recursion for all maximal minors of an `n × k` matrix.
///
/// Level `j` holds the minors on the first `j` columns over all `j`-subsets
/// of rows, each an expansion along column `j` into level `j−1` minors.
#[derive(Debug)]
pub struct PluckerPlan {
    pub n: usize,
    pub k: usize,
    /// `terms[j-1][s]` lists `(row, sign, index into level j−1)`.
    terms: Vec<Vec<Vec<(usize, f64, usize)>>>,
    brackets: Vec<Bracket>,
    position: HashMap<Vec<usize>, usize>,
}

impl PluckerPlan {
    fn build(n: usize, k: usize) -> Self {
        let mut terms = Vec::with_capacity(k);
        let mut prev_index: HashMap<Vec<usize>, usize> = HashMap::new();
        prev_index.insert(Vec::new(), 0);
        for j in 1..=k {
            let subsets: Vec<Vec<usize>> = (0..n).combinations(j).collect();
            let level: Vec<Vec<(usize, f64, usize)>> = subsets
                .iter()
                .map(|s| {
                    (0..j)
                        .map(|m| {
                            let mut rest = s.clone();
                            rest.remove(m);
                            let sign = if (m + j + 1) % 2 == 0 { 1.0 } else { -1.0 };
                            (s[m], sign, prev_index[&rest])
                        })
                        .collect()
                })
                .collect();
            prev_index = subsets.into_iter().enumerate().map(|(i, s)| (s, i)).collect();
            terms.push(level);
        }
        let brackets = all_brackets(k, n);
        let position = brackets
            .iter()
            .enumerate()
            .map(|(i, b)| (b.entries().to_vec(), i))
            .collect();
        Self {
            n,
            k,
            terms,
            brackets,
            position,
        }
    }

    /// Cached plan for `(n, k)`.
    pub fn get(n: usize, k: usize) -> Arc<PluckerPlan> {
        type Cache = Mutex<HashMap<(usize, usize), Arc<PluckerPlan>>>;
        static CACHE: OnceLock<Cache> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        cache
            .lock()
            .unwrap()
            .entry((n, k))
            .or_insert_with(|| Arc::new(PluckerPlan::build(n, k)))
            .clone()
    }

    /// Brackets in the order of the Plücker vector.
    pub fn brackets(&self) -> &[Bracket] {
        &self.brackets
    }

    pub fn len(&self) -> usize {
        self.brackets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.brackets.is_empty()
    }

    pub fn index_of(&self, b: &Bracket) -> usize {
        self.position[b.entries()]
    }

    /// Multiply-adds per evaluation: `Σ_j C(n,j)·j`.
    pub fn term_count(&self) -> usize {
        self.terms.iter().map(|l| l.iter().map(Vec::len).sum::<usize>()).sum()
    }

    /// All maximal minors of `h`, given row-major `n × k`.
    pub fn evaluate<T: Scalar>(&self, h: &[T]) -> Vec<T> {
        let k = self.k;
        debug_assert_eq!(h.len(), self.n * k);
        let mut prev = vec![T::constant(C::new(1.0, 0.0))];
        for (j, level) in self.terms.iter().enumerate() {
            let cur: Vec<T> = level
                .iter()
                .map(|terms| {
                    let mut acc = T::zero();
                    for &(row, sign, sub) in terms {
                        let entry = &h[row * k + j];
                        if sign > 0.0 {
                            acc.add_prod(entry, &prev[sub]);
                        } else {
                            acc.sub_prod(entry, &prev[sub]);
                        }
                    }
                    acc
                })
                .collect();
            prev = cur;
        }
        prev
    }
}

/// Plücker vector of an `n × k` matrix, indexed by brackets in lexicographic
/// order.
pub fn plucker_vector(h: &CMatrix) -> Vec<C> {
    let (n, k) = h.shape();
    let plan = PluckerPlan::get(n, k);
    let flat: Vec<C> = (0..n).flat_map(|i| (0..k).map(move |j| h[(i, j)])).collect();
    plan.evaluate(&flat)
}

/// Rows `β` of the k-th exterior power of `a`: entry `(β, γ)` is the minor
/// of `a` on rows `β` and columns `γ`.
pub fn exterior_rows(a: &CMatrix, rows: &[Bracket]) -> CMatrix {
    let n = a.nrows();
    let Some(k) = rows.first().map(Bracket::k) else {
        return CMatrix::zeros(0, 0);
    };
    let plan = PluckerPlan::get(n, k);
    let mut out = CMatrix::zeros(rows.len(), plan.len());
    for (i, beta) in rows.iter().enumerate() {
        // minors of the k × n row block over column subsets are the Plücker
        // coordinates of its transpose
        let flat: Vec<C> = (0..n)
            .flat_map(|col| beta.entries().iter().map(move |&r| a[(r - 1, col)]))
            .collect();
        for (j, v) in plan.evaluate(&flat).into_iter().enumerate() {
            out[(i, j)] = v;
        }
    }
    out
}

/// [`exterior_rows`] over any scalar, for `a` given row-major `n × n`.
/// Returns one vector of minors per requested row bracket.
pub fn exterior_rows_generic<T: Scalar>(a: &[T], n: usize, rows: &[Bracket]) -> Vec<Vec<T>> {
    let Some(k) = rows.first().map(Bracket::k) else {
        return Vec::new();
    };
    let plan = PluckerPlan::get(n, k);
    rows.iter()
        .map(|beta| {
            let flat: Vec<T> = (0..n)
                .flat_map(|col| beta.entries().iter().map(move |&r| a[(r - 1) * n + col].clone()))
                .collect();
            plan.evaluate(&flat)
        })
        .collect()
}

/// All brackets `β` with `β_i > α_i` for some `i`.
pub fn not_leq_set(alpha: &Bracket) -> Vec<Bracket> {
    all_brackets(alpha.k(), alpha.n())
        .into_iter()
        .filter(|b| !b.leq(alpha))
        .collect()
}
