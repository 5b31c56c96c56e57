//! Oracles and property checks shared by the property suites and the
//! acceptance harness. Each check returns `Err` with a description on the
//! first violated case.

#![allow(dead_code)]

use std::collections::{HashMap, HashSet};
use std::sync::OnceLock;

use lrhomotopy::combinatorics::{
    all_brackets, count_solutions, initial_checkerboard, Bracket, Checkerboard, HomotopyCase,
};
use lrhomotopy::coords::{family_pattern, fit_to_pattern, pattern_from_board, SwapData};
use lrhomotopy::equations::{minor_oracle_residual, ConditionSystem, SchubertCondition};
use lrhomotopy::linalg::{
    complex_gaussian, exterior_rows, flag_chain, hcat, inverse, orthonormal_columns, plucker_vector, random_flag,
    random_matrix, rank, CMatrix, Flag, C, RANK_TOL,
};
use nalgebra::DVector;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub type Check = Result<(), String>;

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Check {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

// ---------------------------------------------------------------------------
// Littlewood-Richardson oracle: Jacobi-Trudi expansion into complete
// symmetric functions, multiplied into the class by the Pieri rule and
// truncated to the k × (n − k) box.

type Class = HashMap<Vec<usize>, i128>;

/// Partition of a bracket: `λ_i = n − k + i − α_i` (1-based `i`).
pub fn partition_of(entries: &[usize], n: usize) -> Vec<usize> {
    let k = entries.len();
    (0..k).map(|i| n - k + i + 1 - entries[i]).collect()
}

/// Multiplies by `h_r`: add `r` boxes, no two in a column, inside the box.
fn pieri(class: &Class, r: usize, width: usize) -> Class {
    let mut out = Class::new();
    for (lam, &c) in class {
        let mut cur = lam.clone();
        fn rec(i: usize, rem: usize, lam: &[usize], width: usize, cur: &mut Vec<usize>, c: i128, out: &mut Class) {
            if i == lam.len() {
                if rem == 0 {
                    *out.entry(cur.clone()).or_insert(0) += c;
                }
                return;
            }
            let cap = if i == 0 { width } else { lam[i - 1] } - lam[i];
            for a in 0..=cap.min(rem) {
                cur[i] = lam[i] + a;
                rec(i + 1, rem - a, lam, width, cur, c, out);
            }
            cur[i] = lam[i];
        }
        rec(0, r, lam, width, &mut cur, c, &mut out);
    }
    out.retain(|_, c| *c != 0);
    out
}

fn permutations(k: usize) -> Vec<(Vec<usize>, i128)> {
    fn rec(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<(Vec<usize>, i128)>) {
        let k = used.len();
        if prefix.len() == k {
            let mut inversions = 0;
            for i in 0..k {
                for j in i + 1..k {
                    if prefix[i] > prefix[j] {
                        inversions += 1;
                    }
                }
            }
            out.push((prefix.clone(), if inversions % 2 == 0 { 1 } else { -1 }));
            return;
        }
        for v in 0..k {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// `class · s_μ` with `s_μ = det(h_{μ_i − i + j})`.
fn times_schur(class: &Class, mu: &[usize], width: usize, perms: &[(Vec<usize>, i128)]) -> Class {
    let mut total = Class::new();
    'perm: for (perm, sign) in perms {
        let mut cur = class.clone();
        for i in 0..mu.len() {
            let r = mu[i] as isize - i as isize + perm[i] as isize;
            if r < 0 || r as usize > width {
                continue 'perm;
            }
            if r > 0 {
                cur = pieri(&cur, r as usize, width);
            }
        }
        for (lam, c) in cur {
            *total.entry(lam).or_insert(0) += sign * c;
        }
    }
    total.retain(|_, c| *c != 0);
    total
}

/// Intersection number of the Schubert classes of `brackets` in `Gr(k, n)`.
pub fn pieri_count(k: usize, n: usize, brackets: &[Vec<usize>]) -> i128 {
    let width = n - k;
    let perms = permutations(k);
    let mut class: Class = HashMap::from([(vec![0; k], 1)]);
    for b in brackets {
        class = times_schur(&class, &partition_of(b, n), width, &perms);
        if class.is_empty() {
            return 0;
        }
    }
    class.get(&vec![width; k]).copied().unwrap_or(0)
}

fn codim(entries: &[usize], n: usize) -> usize {
    partition_of(entries, n).iter().sum()
}

fn k_subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for v in start..=n {
            cur.push(v);
            rec(v + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Every Schubert problem in `Gr(k, n)`: multisets of brackets of positive
/// codimension summing to `k(n − k)`, listed as non-decreasing sequences.
pub fn all_problems(k: usize, n: usize) -> Vec<Vec<Vec<usize>>> {
    let pool: Vec<Vec<usize>> = k_subsets(n, k).into_iter().filter(|b| codim(b, n) > 0).collect();
    let sizes: Vec<usize> = pool.iter().map(|b| codim(b, n)).collect();
    let mut out = Vec::new();
    fn rec(
        i: usize,
        rem: usize,
        pool: &[Vec<usize>],
        sizes: &[usize],
        cur: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        if rem == 0 {
            out.push(cur.clone());
            return;
        }
        for j in i..pool.len() {
            if sizes[j] <= rem {
                cur.push(pool[j].clone());
                rec(j, rem - sizes[j], pool, sizes, cur, out);
                cur.pop();
            }
        }
    }
    rec(0, k * (n - k), &pool, &sizes, &mut Vec::new(), &mut out);
    out
}

/// Every `(k, n)` with `0 < k < n ≤ max_n`.
pub fn small_grassmannians(max_n: usize) -> Vec<(usize, usize)> {
    (2..=max_n).flat_map(|n| (1..n).map(move |k| (k, n))).collect()
}

/// A random Schubert problem in some `Gr(k, n)` with `n ≤ max_n`, in random
/// condition order.
pub fn random_problem(rng: &mut impl Rng, max_n: usize) -> (usize, usize, Vec<Vec<usize>>) {
    let n = rng.random_range(2..=max_n);
    let k = rng.random_range(1..n);
    let pool: Vec<Vec<usize>> = k_subsets(n, k).into_iter().filter(|b| codim(b, n) > 0).collect();
    let mut rem = k * (n - k);
    let mut out = Vec::new();
    while rem > 0 {
        let fits: Vec<&Vec<usize>> = pool.iter().filter(|b| codim(b, n) <= rem).collect();
        let b = fits[rng.random_range(0..fits.len())].clone();
        rem -= codim(&b, n);
        out.push(b);
    }
    (k, n, out)
}

/// Tournament count against the oracle.
pub fn check_lr_count(k: usize, n: usize, problem: &[Vec<usize>]) -> Check {
    let want = pieri_count(k, n, problem);
    let brackets: Vec<Bracket> = problem.iter().map(|b| Bracket::new(b.clone(), n).unwrap()).collect();
    let got = count_solutions(&brackets).map_err(|e| format!("{problem:?}: {e}"))?;
    ensure(got.to_string() == want.to_string(), || {
        format!("Gr({k},{n}) {problem:?}: tournament {got}, oracle {want}")
    })
}

// ---------------------------------------------------------------------------
// Game edges.

fn game_edges(k: usize, n: usize) -> Vec<(Checkerboard, Checkerboard)> {
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

/// Every game edge over a spread of Grassmannians, grouped by case.
pub fn edge_pool(case: HomotopyCase) -> &'static [(Checkerboard, Checkerboard)] {
    static POOL: OnceLock<HashMap<HomotopyCase, Vec<(Checkerboard, Checkerboard)>>> = OnceLock::new();
    let pool = POOL.get_or_init(|| {
        let mut map: HashMap<HomotopyCase, Vec<_>> = HashMap::new();
        for (k, n) in [(2, 4), (2, 5), (3, 6), (2, 7), (3, 7), (4, 8)] {
            for (p, c) in game_edges(k, n) {
                let case = family_pattern(&p, &c).unwrap().case;
                map.entry(case).or_default().push((p, c));
            }
        }
        map
    });
    &pool[&case]
}

pub fn pick_edge(case: HomotopyCase, rng: &mut impl Rng) -> (Checkerboard, Checkerboard) {
    let pool = edge_pool(case);
    pool[rng.random_range(0..pool.len())].clone()
}

pub fn random_values(d: usize, rng: &mut impl Rng) -> Vec<C> {
    (0..d).map(|_| complex_gaussian(rng)).collect()
}

fn random_condition(k: usize, n: usize, rng: &mut impl Rng) -> SchubertCondition {
    let pool: Vec<Bracket> = all_brackets(k, n).into_iter().filter(|b| b.codim() > 0).collect();
    let b = pool[rng.random_range(0..pool.len())].clone();
    SchubertCondition::new(b, random_flag(n, rng)).unwrap()
}

/// A random point of `X_α F`: column `j` of `F⁻¹H` supported on the first
/// `α_j` rows.
fn member(alpha: &Bracket, flag: &Flag, rng: &mut impl Rng) -> CMatrix {
    let (k, n) = (alpha.k(), alpha.n());
    let e = CMatrix::from_fn(n, k, |i, j| {
        if i < alpha.entries()[j] {
            complex_gaussian(rng)
        } else {
            C::new(0.0, 0.0)
        }
    });
    flag.basis() * e
}

// ---------------------------------------------------------------------------
// Property checks, each driven by one seed.

/// `det((AH)_β) = Σ_γ det(A_{β,γ}) det(H_γ)`, with every determinant taken
/// independently and also through the crate's exterior rows.
pub fn check_cauchy_binet(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(2..=8);
    let k = rng.random_range(1..=n);
    let a = random_matrix(n, n, &mut rng);
    let h = random_matrix(n, k, &mut rng);
    let all = all_brackets(k, n);
    let beta = all[rng.random_range(0..all.len())].clone();
    let rows: Vec<usize> = beta.entries().iter().map(|r| r - 1).collect();
    let lhs = (&a * &h).select_rows(&rows).determinant();
    let mut oracle = C::new(0.0, 0.0);
    let mut scale = 0.0;
    for gamma in &all {
        let cols: Vec<usize> = gamma.entries().iter().map(|c| c - 1).collect();
        let minor_a = a.select_rows(&rows).select_columns(&cols).determinant();
        let minor_h = h.select_rows(&cols).determinant();
        oracle += minor_a * minor_h;
        scale += minor_a.norm() * minor_h.norm();
    }
    let coeffs = exterior_rows(&a, std::slice::from_ref(&beta));
    let p = DVector::from_vec(plucker_vector(&h));
    let efficient = (coeffs * p)[0];
    let tol = 1e-12 * scale.max(lhs.norm());
    ensure((lhs - oracle).norm() <= tol, || {
        format!(
            "Gr({k},{n}) {beta}: identity off by {:.2e}",
            (lhs - oracle).norm() / scale
        )
    })?;
    ensure((efficient - oracle).norm() <= tol, || {
        format!(
            "Gr({k},{n}) {beta}: exterior rows off by {:.2e}",
            (efficient - oracle).norm() / scale
        )
    })
}

/// At random `t`, the family plane `M_child Y(y, t)` lies in the parent
/// checkerboard variety for the moving flag `M(t)`.
pub fn check_span_equality(case: HomotopyCase, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (parent, child) = pick_edge(case, &mut rng);
    let fam = family_pattern(&parent, &child).map_err(|e| e.to_string())?;
    let chain = flag_chain(parent.n());
    let y = random_values(fam.var_count(), &mut rng);
    let t = C::new(rng.random_range(0.05..1.0), 0.0);
    let h = chain.stage(child.stage()) * fam.substitute(&y, t);
    let moving = chain.family(parent.stage(), t);
    let coords = inverse(&moving).map_err(|e| e.to_string())? * &h;
    let pp = pattern_from_board(&parent);
    let w = fit_to_pattern(&coords, &pp).map_err(|e| format!("{parent:?} -> {child:?}: {e}"))?;
    let other = &moving * pp.substitute(&w);
    let k = parent.k();
    ensure(
        rank(&h, RANK_TOL) == k && rank(&hcat(&h, &other), RANK_TOL) == k,
        || format!("{parent:?} -> {child:?}: spans differ at t = {}", t.re),
    )
}

/// `Y(y, 0)` equals the child pattern; in the swap case the swapped column
/// carries the factor `y_{r+1,s+1}`.
pub fn check_t0_specialization(case: HomotopyCase, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (parent, child) = pick_edge(case, &mut rng);
    let fam = family_pattern(&parent, &child).map_err(|e| e.to_string())?;
    let y = random_values(fam.var_count(), &mut rng);
    let at_zero = fam.substitute(&y, C::new(0.0, 0.0));
    let mut want = pattern_from_board(&child).substitute(&y);
    if let Some(SwapData { s, .. }) = fam.swap {
        let scale = want[(fam.critical_row, s + 1)];
        let col = want.column(s) * scale;
        want.set_column(s, &col);
    }
    ensure((&at_zero - &want).norm() < 1e-14 * want.norm().max(1.0), || {
        format!("{parent:?} -> {child:?}: differs by {:.2e}", (&at_zero - &want).norm())
    })
}

/// Analytic Jacobian against central differences, relative `1e-5`.
pub fn check_jacobian(case: HomotopyCase, seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (parent, child) = pick_edge(case, &mut rng);
    let fam = family_pattern(&parent, &child).map_err(|e| e.to_string())?;
    let (k, n) = (child.k(), child.n());
    let conds: Vec<_> = (0..2).map(|_| random_condition(k, n, &mut rng)).collect();
    let sys = ConditionSystem::build(&conds, fam, random_matrix(n, n, &mut rng)).map_err(|e| e.to_string())?;
    let d = sys.variable_count();
    let y = random_values(d, &mut rng);
    let t = C::new(rng.random_range(0.1..0.9), 0.0);
    let (_, jy, jt) = sys.evaluate_with_jacobian(&y, t);
    let h = 1e-6;
    for v in 0..=d {
        let at = |s: f64| {
            if v == d {
                sys.evaluate(&y, t + C::new(s, 0.0))
            } else {
                let mut z = y.clone();
                z[v] += C::new(s, 0.0);
                sys.evaluate(&z, t)
            }
        };
        let fd = (at(h) - at(-h)) / C::new(2.0 * h, 0.0);
        let exact = if v == d { jt.clone() } else { jy.column(v).into_owned() };
        let scale = exact.camax().max(fd.camax()).max(1.0);
        let err = (&fd - &exact).camax() / scale;
        ensure(err < 1e-5, || {
            format!("{parent:?} -> {child:?}: variable {v} off by {err:.2e}")
        })?;
    }
    Ok(())
}

/// The efficient Plücker-linear equations and the rank-minor formulation
/// agree on membership, for members and for generic planes.
pub fn check_oracle_equivalence(seed: u64) -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = rng.random_range(3..=8);
    let k = rng.random_range(1..n);
    let cond = random_condition(k, n, &mut rng);
    let inside = rng.random_bool(0.5);
    let h = if inside {
        member(&cond.bracket, &cond.flag, &mut rng)
    } else {
        random_matrix(n, k, &mut rng)
    };
    let p = DVector::from_vec(plucker_vector(&orthonormal_columns(&h)));
    let efficient = (cond.coefficients() * p).camax();
    let oracle = minor_oracle_residual(&h, &cond).into_iter().fold(0.0, f64::max);
    if inside {
        ensure(efficient < 1e-10 && oracle < 1e-10, || {
            format!("{}: member residuals {efficient:.2e} / {oracle:.2e}", cond.bracket)
        })
    } else {
        ensure(efficient > 1e-6 && oracle > 1e-6, || {
            format!("{}: generic residuals {efficient:.2e} / {oracle:.2e}", cond.bracket)
        })
    }
}
