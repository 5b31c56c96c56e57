//! Resolving the tournament bottom-up: the seed at the final leaf,
//! checkerboard homotopies along moves, and splices between games.

use std::sync::Arc;

use num_traits::ToPrimitive;
use rand::Rng;
use rayon::prelude::*;

use crate::combinatorics::{Bracket, Checkerboard, EdgeKind, HomotopyCase, Tournament};
use crate::coords::{
    basis_change, family_pattern, fit_to_pattern, pattern_from_board, transfer_to_parent, StiefelPattern,
};
use crate::equations::{stacked_coefficients, ConditionSystem, SchubertCondition};
use crate::error::{Error, Result};
use crate::linalg::{flag_chain, CMatrix, Flag, C};
use crate::tracker::{track, PathStatus, TrackerSettings};

/// Scale of the strictly upper entries of the random unitriangular `A`s.
/// Smaller entries keep long products of `A`s well conditioned.
pub const A_SCALE: f64 = 0.5;

/// Below this (relative) the swap family's critical entry is treated as
/// a non-generic coincidence.
pub const SWAP_PIVOT_TOL: f64 = 1e-10;

/// Random unitriangular matrix with entries scaled by [`A_SCALE`].
pub fn random_a<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut a = CMatrix::identity(n, n);
    for i in 0..n {
        for j in i + 1..n {
            a[(i, j)] = crate::linalg::complex_gaussian(rng) * A_SCALE;
        }
    }
    a
}

/// Conditions remaining in one game, in the game's own frame.
#[derive(Clone, Debug)]
pub struct LevelConditions {
    pub conditions: Vec<SchubertCondition>,
    pub coeffs: Arc<CMatrix>,
    pub block_sizes: Vec<usize>,
}

/// The random unitriangular matrices `A_3, …, A_s` and the remaining
/// conditions of every level.
///
/// In the frame of game `g` the fixed flag is the standard one, the game's
/// second bracket sits on the root flag `M_0`, and condition `j > g + 2`
/// sits on `A_{g+3} ⋯ A_j · M_0`.
#[derive(Clone, Debug)]
pub struct GameFlags {
    pub n: usize,
    /// `a[j]` is `A_j` for `j ≥ 3` (1-based condition index).
    pub a: Vec<CMatrix>,
    pub levels: Vec<LevelConditions>,
}

impl GameFlags {
    pub fn new(brackets: &[Bracket], a: Vec<CMatrix>) -> Result<Self> {
        let s = brackets.len();
        let (k, n) = (brackets[0].k(), brackets[0].n());
        assert_eq!(a.len(), s + 1, "need A_0..A_s with A_0..A_2 unused");
        let root = flag_chain(n).stage(0);
        let mut levels = Vec::new();
        for g in 0..s.saturating_sub(2) {
            let mut prod = CMatrix::identity(n, n);
            let mut conditions = Vec::new();
            for j in g + 3..=s {
                prod = &prod * &a[j];
                let flag = Flag::new(&prod * &root)?;
                conditions.push(SchubertCondition::new(brackets[j - 1].clone(), flag)?);
            }
            let (coeffs, block_sizes) = stacked_coefficients(&conditions, k, n)?;
            levels.push(LevelConditions {
                conditions,
                coeffs: Arc::new(coeffs),
                block_sizes,
            });
        }
        Ok(Self { n, a, levels })
    }

    pub fn random<R: Rng + ?Sized>(brackets: &[Bracket], rng: &mut R) -> Result<Self> {
        let n = brackets[0].n();
        let a = (0..=brackets.len())
            .map(|j| {
                if j >= 3 {
                    random_a(n, rng)
                } else {
                    CMatrix::identity(n, n)
                }
            })
            .collect();
        Self::new(brackets, a)
    }
}

/// The single point of `X_{β^∨}(I) ∩ X_β(A · M_0)`: columns `β_j` of
/// `A · M_0`, read into the leaf pattern.
pub fn seed_leaf(beta: &Bracket, a_s: &CMatrix, leaf: &StiefelPattern) -> Result<Vec<C>> {
    let f = a_s * flag_chain(beta.n()).stage(0);
    let cols: Vec<_> = beta.entries().iter().map(|&b| f.column(b - 1).into_owned()).collect();
    let h = CMatrix::from_columns(&cols);
    fit_to_pattern(&h, leaf).map_err(|e| Error::NonGeneric(format!("leaf seed: {e}")))
}

/// Path bookkeeping of one edge or node.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct PathStats {
    pub tracked: usize,
    pub failures: usize,
}

/// Transports a child's solutions to its parent along one move.
///
/// Case I moves need no tracking: the child's points already lie in the
/// parent's variety and are only re-expressed. Otherwise each solution is
/// tracked from `t = 0` to `t = 1` in the edge's coordinate family and
/// transferred. Failed paths are dropped and counted.
pub fn checkerboard_homotopy(
    parent: &Checkerboard,
    child: &Checkerboard,
    solutions: &[Vec<C>],
    level: &LevelConditions,
    settings: &TrackerSettings,
) -> Result<(Vec<Vec<C>>, PathStats)> {
    let n = parent.n();
    let family = family_pattern(parent, child)?;
    let parent_pattern = pattern_from_board(parent);
    let change = basis_change(n, parent.stage())?;
    if family.case == HomotopyCase::I {
        let out = solutions
            .par_iter()
            .map(|y| transfer_to_parent(y, &family, &change, &parent_pattern))
            .collect::<Result<Vec<_>>>()?;
        return Ok((out, PathStats::default()));
    }
    if let Some(swap) = family.swap {
        let child_pattern = pattern_from_board(child);
        for y in solutions {
            let m = child_pattern.substitute(y);
            let scale = m.iter().map(|z| z.norm()).fold(1.0, f64::max);
            if m[(family.critical_row, swap.s + 1)].norm() < SWAP_PIVOT_TOL * scale {
                return Err(Error::NonGeneric("vanishing swap pivot".into()));
            }
        }
    }
    let m_child = flag_chain(n).stage(child.stage());
    let sys = ConditionSystem::with_coefficients(level.coeffs.clone(), level.block_sizes.clone(), family, m_child)?;
    let results: Vec<Option<Vec<C>>> = solutions
        .par_iter()
        .map(|y| {
            let r = track(&sys, y, 0.0, 1.0, settings);
            if r.status != PathStatus::Success {
                return None;
            }
            transfer_to_parent(&r.endpoint, sys.family(), &change, &parent_pattern).ok()
        })
        .collect();
    let stats = PathStats {
        tracked: results.len(),
        failures: results.iter().filter(|r| r.is_none()).count(),
    };
    Ok((results.into_iter().flatten().collect(), stats))
}

/// Moves a game root's solutions to the previous game's leaf:
/// `Y_leaf = A_{g+3} · M_0 · Y_root`.
pub fn splice(root: &StiefelPattern, leaf: &StiefelPattern, a: &CMatrix, solutions: &[Vec<C>]) -> Result<Vec<Vec<C>>> {
    let m = a * flag_chain(root.n()).stage(0);
    solutions
        .par_iter()
        .map(|y| fit_to_pattern(&(&m * root.substitute(y)), leaf))
        .collect()
}

/// A node whose solution count fell short of its chain count.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub struct NodeDeficit {
    pub node: usize,
    pub level: usize,
    pub stage: usize,
    pub expected: usize,
    pub found: usize,
    /// Solutions that coincide with an earlier one (a jump between paths).
    pub duplicates: usize,
}

/// Relative distance below which two coordinate vectors count as the same.
pub const DUPLICATE_TOL: f64 = 1e-6;

/// Number of entries that coincide with an earlier entry.
pub fn count_duplicates(points: &[Vec<C>]) -> usize {
    let dist = |a: &[C], b: &[C]| {
        let d = a.iter().zip(b).map(|(x, y)| (x - y).norm_sqr()).sum::<f64>().sqrt();
        let scale = a.iter().map(|x| x.norm_sqr()).sum::<f64>().sqrt().max(1.0);
        d / scale
    };
    (0..points.len())
        .filter(|&i| (0..i).any(|j| dist(&points[i], &points[j]) < DUPLICATE_TOL))
        .count()
}

/// Outcome of resolving a whole tournament once.
#[derive(Clone, Debug)]
pub struct Resolution {
    /// Solutions at the tournament root, in the root's pattern.
    pub root_solutions: Vec<Vec<C>>,
    pub stats: PathStats,
}

/// Largest number of solutions the solver will carry.
pub const MAX_SOLUTIONS: usize = 1_000_000;

/// Resolves every node from the final leaf up to the root. Children carry
/// larger ids than parents, so descending ids is a valid order.
pub fn resolve_tournament(
    t: &Tournament,
    flags: &GameFlags,
    settings: &TrackerSettings,
) -> std::result::Result<Resolution, (Error, PathStats, Option<NodeDeficit>)> {
    let (Some(root), Some(leaf)) = (t.root, t.leaf) else {
        return Err((
            Error::InvalidProblem("tournament has no games".into()),
            PathStats::default(),
            None,
        ));
    };
    let s = t.brackets.len();
    let mut stats = PathStats::default();
    let mut sols: Vec<Option<Vec<Vec<C>>>> = vec![None; t.nodes.len()];
    let mut remaining_parents = vec![0usize; t.nodes.len()];
    for node in &t.nodes {
        for e in &node.children {
            remaining_parents[e.child] += 1;
        }
    }
    for id in (0..t.nodes.len()).rev() {
        let node = &t.nodes[id];
        let expected = node
            .chains
            .to_usize()
            .filter(|&c| c <= MAX_SOLUTIONS)
            .ok_or_else(|| (Error::InvalidProblem("too many solutions to track".into()), stats, None))?;
        let pattern = pattern_from_board(&node.board);
        let level = &flags.levels[node.level];
        let mut out = Vec::with_capacity(expected);
        if id == leaf {
            let seed = seed_leaf(&t.brackets[s - 1], &flags.a[s], &pattern).map_err(|e| (e, stats, None))?;
            out.push(seed);
        }
        for e in &node.children {
            let child = &t.nodes[e.child];
            let child_sols = sols[e.child].as_ref().expect("children resolve first");
            let moved = match e.kind {
                EdgeKind::Splice => splice(
                    &pattern_from_board(&child.board),
                    &pattern,
                    &flags.a[node.level + 3],
                    child_sols,
                ),
                EdgeKind::Move { .. } => checkerboard_homotopy(&node.board, &child.board, child_sols, level, settings)
                    .map(|(v, st)| {
                        stats.tracked += st.tracked;
                        stats.failures += st.failures;
                        v
                    }),
            };
            out.extend(moved.map_err(|e| (e, stats, None))?);
            remaining_parents[e.child] -= 1;
            if remaining_parents[e.child] == 0 && e.child != root {
                sols[e.child] = None;
            }
        }
        let duplicates = count_duplicates(&out);
        if out.len() != expected || duplicates > 0 {
            let deficit = NodeDeficit {
                node: id,
                level: node.level,
                stage: node.board.stage(),
                expected,
                found: out.len(),
                duplicates,
            };
            return Err((
                Error::Deficit(format!(
                    "node {id} (level {}, stage {}): expected {expected}, found {} with {duplicates} duplicates",
                    node.level,
                    node.board.stage(),
                    out.len()
                )),
                stats,
                Some(deficit),
            ));
        }
        sols[id] = Some(out);
    }
    Ok(Resolution {
        root_solutions: sols[root].take().unwrap_or_default(),
        stats,
    })
}

/// `M_0 · Y_root(y)` for every root solution: points of the first game's
/// intersection in its own frame.
pub fn root_points(t: &Tournament, root_solutions: &[Vec<C>]) -> Vec<CMatrix> {
    let root = &t.nodes[t.root.expect("tournament root")];
    let pattern = pattern_from_board(&root.board);
    let m = flag_chain(t.n).stage(0);
    root_solutions.iter().map(|y| &m * pattern.substitute(y)).collect()
}
