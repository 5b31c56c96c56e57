use super::*;
use crate::linalg::{intersection_dim, RANK_TOL};

fn brackets(list: &[(&[usize], usize)], n: usize) -> Vec<Bracket> {
    list.iter()
        .flat_map(|&(e, m)| std::iter::repeat_n(Bracket::new(e.to_vec(), n).unwrap(), m))
        .collect()
}

fn min_distance_to(h: &CMatrix, others: &[CMatrix]) -> f64 {
    let p = normalized_plucker(h);
    others
        .iter()
        .map(|g| projective_distance(&p, &normalized_plucker(g)))
        .fold(f64::INFINITY, f64::min)
}

/// Lines meeting four lines `V_i` in P³: write `H = span(V₁(1,a), V₂(1,b))`;
/// each further condition `det[p q V_i] = 0` is bilinear in `(a, b)`, and
/// eliminating `b` leaves a quadratic in `a`.
fn four_lines_closed_form(v: &[CMatrix]) -> Vec<CMatrix> {
    let point = |m: &CMatrix, s: C| m.column(0) + m.column(1) * s;
    let bilinear = |w: &CMatrix| {
        let f = |a: f64, b: f64| {
            let mut m = CMatrix::zeros(4, 4);
            m.set_column(0, &point(&v[0], C::new(a, 0.0)));
            m.set_column(1, &point(&v[1], C::new(b, 0.0)));
            m.set_column(2, &w.column(0));
            m.set_column(3, &w.column(1));
            m.determinant()
        };
        let c0 = f(0.0, 0.0);
        let c1 = f(1.0, 0.0) - c0;
        let c2 = f(0.0, 1.0) - c0;
        [c0, c1, c2, f(1.0, 1.0) - c0 - c1 - c2]
    };
    let e = bilinear(&v[2]);
    let g = bilinear(&v[3]);
    // (g0 + g1 a)(e2 + e3 a) − (g2 + g3 a)(e0 + e1 a) = q0 + q1 a + q2 a².
    let q2 = g[1] * e[3] - g[3] * e[1];
    let q1 = g[0] * e[3] + g[1] * e[2] - g[2] * e[1] - g[3] * e[0];
    let q0 = g[0] * e[2] - g[2] * e[0];
    let root = (q1 * q1 - q0 * q2 * 4.0).sqrt();
    [(-q1 + root) / (q2 * 2.0), (-q1 - root) / (q2 * 2.0)]
        .into_iter()
        .map(|a| {
            let b = -(e[0] + e[1] * a) / (e[2] + e[3] * a);
            let mut h = CMatrix::zeros(4, 2);
            h.set_column(0, &point(&v[0], a));
            h.set_column(1, &point(&v[1], b));
            h
        })
        .collect()
}

#[test]
fn four_lines_agree_with_the_closed_form() {
    for seed in 0..5 {
        let inst = Instance::with_random_flags(brackets(&[(&[2, 4], 4)], 4), seed).unwrap();
        let out = solve(&inst, &SolveOptions::default()).unwrap();
        assert!(out.report.pass, "{:?}", out.report.failures);
        assert_eq!(out.solutions.len(), 2);
        let lines: Vec<CMatrix> = inst.flags.iter().map(|f| f.subspace(2)).collect();
        for h in &out.solutions {
            for l in &lines {
                assert!(intersection_dim(h, l, RANK_TOL) >= 1);
            }
        }
        let oracle = four_lines_closed_form(&lines);
        for h in &out.solutions {
            assert!(min_distance_to(h, &oracle) < 1e-8, "seed {seed}");
        }
    }
}

#[test]
fn five_conics_problem_in_gr_2_5() {
    let inst = Instance::with_random_flags(brackets(&[(&[3, 5], 6)], 5), 2).unwrap();
    let out = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(out.report.pass, "{:?}", out.report.failures);
    assert_eq!(out.solutions.len(), 5);
    assert_eq!(out.accounting.total_failures(), 0);
}

#[test]
fn trivial_conditions_are_ignored() {
    let mut b = brackets(&[(&[2, 4], 4)], 4);
    b.insert(2, Bracket::top(2, 4));
    let inst = Instance::with_random_flags(b, 4).unwrap();
    let out = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(out.report.pass);
    assert_eq!(out.solutions.len(), 2);
}

#[test]
fn single_condition_of_full_codimension() {
    let inst = Instance::with_random_flags(brackets(&[(&[1, 2], 1)], 4), 1).unwrap();
    let out = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(out.report.pass);
    assert_eq!(out.solutions.len(), 1);
    assert_eq!(
        intersection_dim(&out.solutions[0], &inst.flags[0].subspace(2), RANK_TOL),
        2
    );
}

#[test]
fn two_dual_conditions_meet_in_one_plane() {
    let inst = Instance::with_random_flags(brackets(&[(&[2, 4, 5], 1), (&[2, 3, 5], 1)], 6), 3).unwrap();
    assert_eq!(inst.brackets[1], inst.brackets[0].dual());
    let out = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(out.report.pass, "{:?}", out.report.failures);
    assert_eq!(out.solutions.len(), 1);
}

#[test]
fn two_non_dual_conditions_have_no_solution() {
    let inst = Instance::with_random_flags(brackets(&[(&[1, 4], 1), (&[2, 3], 1)], 4), 3).unwrap();
    let out = solve(&inst, &SolveOptions::default()).unwrap();
    assert!(out.report.pass);
    assert!(out.solutions.is_empty());
}

#[test]
fn one_thread_runs_are_bitwise_reproducible() {
    let inst = Instance::with_random_flags(brackets(&[(&[3, 5], 6)], 5), 9).unwrap();
    let options = SolveOptions {
        threads: Some(1),
        ..SolveOptions::default()
    };
    let a = solve(&inst, &options).unwrap();
    let b = solve(&inst, &options).unwrap();
    assert_eq!(a.solutions, b.solutions);
    assert_eq!(a.report, b.report);
    let many = solve(
        &inst,
        &SolveOptions {
            threads: Some(4),
            ..SolveOptions::default()
        },
    )
    .unwrap();
    assert_eq!(a.solutions, many.solutions);
}

#[test]
fn verification_catches_duplicates_and_perturbations() {
    let inst = Instance::with_random_flags(brackets(&[(&[2, 4], 4)], 4), 7).unwrap();
    let out = solve(&inst, &SolveOptions::default()).unwrap();
    let h = out.solutions[0].clone();
    let dup = verify(&[h.clone(), h.clone()], &inst, RESIDUAL_TOL);
    assert!(!dup.pass);
    assert!(dup.failures.iter().any(|f| f.contains("coincide")));
    let mut moved = h.clone();
    moved[(1, 0)] += C::new(1e-3, 0.0);
    let bad = verify(&[moved, out.solutions[1].clone()], &inst, RESIDUAL_TOL);
    assert!(!bad.pass);
    assert!(bad.failures[0].starts_with("solution 0: residual"));
    let short = verify(&[h], &inst, RESIDUAL_TOL);
    assert!(short.failures.iter().any(|f| f.starts_with("expected 2 solutions")));
}

#[test]
fn projective_distance_ignores_scale_and_phase() {
    let inst = Instance::with_random_flags(brackets(&[(&[2, 4], 4)], 4), 7).unwrap();
    let h = inst.flags[0].subspace(2);
    let p = normalized_plucker(&h);
    let q = normalized_plucker(&(&h * C::new(0.3, -2.0)));
    assert!(projective_distance(&p, &q) < 1e-7);
    let r = normalized_plucker(&inst.flags[1].subspace(2));
    assert!(projective_distance(&p, &r) > 1e-3);
}

#[test]
fn instances_are_validated() {
    assert!(Instance::with_random_flags(brackets(&[(&[2, 4], 3)], 4), 0).is_err());
    assert!(Instance::with_random_flags(Vec::new(), 0).is_err());
    let b = brackets(&[(&[2, 4], 4)], 4);
    let flags = Instance::with_random_flags(b.clone(), 0).unwrap().flags;
    assert!(Instance::new(b.clone(), flags[..3].to_vec(), 0).is_err());
    let small = Instance::with_random_flags(brackets(&[(&[1, 3], 2)], 3), 0);
    assert!(small.is_ok());
    let mut mixed = flags;
    mixed[0] = small.unwrap().flags[0].clone();
    assert!(Instance::new(b, mixed, 0).is_err());
}
