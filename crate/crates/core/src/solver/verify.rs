//! Independent checks of a solution list: rank-minor residuals,
//! distinctness and the expected count.

use serde::{Deserialize, Serialize};

use crate::combinatorics::count_solutions;
use crate::equations::max_oracle_residual;
use crate::linalg::{orthonormal_columns, plucker_vector, CMatrix, C};

use super::Instance;

/// Default residual bound for accepted solutions.
pub const RESIDUAL_TOL: f64 = 1e-8;
/// Smallest projective distance between distinct solutions.
pub const DISTANCE_TOL: f64 = 1e-6;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Number of solutions predicted by the tournament, in decimal.
    pub expected: String,
    pub found: usize,
    pub residuals: Vec<f64>,
    pub max_residual: f64,
    /// Smallest pairwise distance, or `null` with fewer than two solutions.
    pub min_distance: Option<f64>,
    pub residual_tol: f64,
    pub distance_tol: f64,
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Unit Plücker vector of the column span of `h`.
pub fn normalized_plucker(h: &CMatrix) -> Vec<C> {
    let p = plucker_vector(&orthonormal_columns(h));
    let norm = p.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
    p.into_iter().map(|z| z / norm).collect()
}

/// `sqrt(1 − |⟨p, q⟩|²)` for unit vectors: the sine of the angle between
/// the lines they span, so it ignores phase.
pub fn projective_distance(p: &[C], q: &[C]) -> f64 {
    let inner: C = p.iter().zip(q).map(|(a, b)| a.conj() * b).sum();
    (1.0 - inner.norm_sqr()).max(0.0).sqrt()
}

pub fn verify(solutions: &[CMatrix], instance: &Instance, residual_tol: f64) -> VerificationReport {
    let conditions = instance.conditions();
    let mut failures = Vec::new();
    let residuals: Vec<f64> = solutions
        .iter()
        .map(|h| {
            if h.shape() != (instance.n, instance.k) || h.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
                f64::INFINITY
            } else {
                max_oracle_residual(h, &conditions)
            }
        })
        .collect();
    for (i, r) in residuals.iter().enumerate() {
        if !(*r < residual_tol) {
            failures.push(format!("solution {i}: residual {r:.3e} exceeds {residual_tol:.1e}"));
        }
    }
    let pluckers: Vec<Vec<C>> = solutions
        .iter()
        .zip(&residuals)
        .map(|(h, r)| {
            if r.is_finite() {
                normalized_plucker(h)
            } else {
                Vec::new()
            }
        })
        .collect();
    let mut min_distance: Option<f64> = None;
    for i in 0..pluckers.len() {
        for j in i + 1..pluckers.len() {
            if pluckers[i].is_empty() || pluckers[j].is_empty() {
                continue;
            }
            let d = projective_distance(&pluckers[i], &pluckers[j]);
            min_distance = Some(min_distance.map_or(d, |m| m.min(d)));
            if !(d > DISTANCE_TOL) {
                failures.push(format!("solutions {i} and {j} coincide (distance {d:.3e})"));
            }
        }
    }
    let expected = match count_solutions(&instance.brackets) {
        Ok(c) => {
            if c.to_string() != solutions.len().to_string() {
                failures.push(format!("expected {c} solutions, found {}", solutions.len()));
            }
            c.to_string()
        }
        Err(e) => {
            failures.push(format!("cannot count solutions: {e}"));
            "unknown".into()
        }
    };
    let max_residual = residuals.iter().copied().fold(0.0, f64::max);
    VerificationReport {
        expected,
        found: solutions.len(),
        residuals,
        max_residual,
        min_distance,
        residual_tol,
        distance_tol: DISTANCE_TOL,
        pass: failures.is_empty(),
        failures,
    }
}
