//! Dense complex helpers built on nalgebra: rank decisions, orthonormal
//! bases, inverses and least squares.

use nalgebra::DVector;

use super::scalar::C;
use super::CMatrix;
use crate::error::{Error, Result};

/// Relative tolerance for rank decisions.
pub const RANK_TOL: f64 = 1e-8;

pub fn c(re: f64) -> C {
    C::new(re, 0.0)
}

pub fn singular_values(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 0 || m.ncols() == 0 {
        return Vec::new();
    }
    let mut s: Vec<f64> = m.singular_values().iter().copied().collect();
    s.sort_by(|a, b| b.total_cmp(a));
    s
}

/// Numerical rank with threshold `tol · σ_max`.
pub fn rank(m: &CMatrix, tol: f64) -> usize {
    let s = singular_values(m);
    match s.first() {
        Some(&top) if top > 0.0 => s.iter().filter(|&&x| x > tol * top).count(),
        _ => 0,
    }
}

/// Orthonormal basis whose first `j` columns span the first `j` columns of
/// `m`, for every `j`.
pub fn orthonormal_columns(m: &CMatrix) -> CMatrix {
    m.clone().qr().q()
}

pub fn hcat(a: &CMatrix, b: &CMatrix) -> CMatrix {
    let mut out = CMatrix::zeros(a.nrows(), a.ncols() + b.ncols());
    out.columns_mut(0, a.ncols()).copy_from(a);
    out.columns_mut(a.ncols(), b.ncols()).copy_from(b);
    out
}

/// `dim(span U ∩ span V)` for matrices of full column rank.
pub fn intersection_dim(u: &CMatrix, v: &CMatrix, tol: f64) -> usize {
    let joined = hcat(&orthonormal_columns(u), &orthonormal_columns(v));
    (u.ncols() + v.ncols()).saturating_sub(rank(&joined, tol))
}

/// Inverse of a square matrix, rejecting numerically singular input.
pub fn inverse(m: &CMatrix) -> Result<CMatrix> {
    let s = singular_values(m);
    let (top, bottom) = (s[0], *s.last().unwrap());
    if !(bottom > 1e-13 * top) {
        return Err(Error::Singular(format!("condition number {:.3e}", top / bottom)));
    }
    m.clone()
        .lu()
        .try_inverse()
        .ok_or_else(|| Error::Singular("LU inverse failed".into()))
}

/// Least-squares solution of `a x = b` for `a` of full column rank.
pub fn lstsq(a: &CMatrix, b: &DVector<C>) -> Result<DVector<C>> {
    let (rows, cols) = a.shape();
    if cols == 0 {
        return Ok(DVector::zeros(0));
    }
    if rows < cols {
        return Err(Error::Singular("underdetermined least squares".into()));
    }
    let qr = a.clone().qr();
    let r = qr.r();
    let scale = (0..cols).map(|i| r[(i, i)].norm()).fold(0.0, f64::max);
    if (0..cols).any(|i| !(r[(i, i)].norm() > 1e-14 * scale)) {
        return Err(Error::Singular("rank-deficient Jacobian".into()));
    }
    let top = qr.q().adjoint() * b;
    r.solve_upper_triangular(&top)
        .ok_or_else(|| Error::Singular("triangular solve failed".into()))
}

/// Unit vector spanning the numerical null space of `a` (assumed to have a
/// one-dimensional kernel), with the smallest and second smallest singular
/// values relative to the largest.
pub fn null_vector(a: &CMatrix) -> (DVector<C>, f64, f64) {
    let k = a.ncols();
    if a.nrows() == 0 {
        let mut v = DVector::zeros(k);
        v[0] = c(1.0);
        return (v, 0.0, if k > 1 { 0.0 } else { f64::INFINITY });
    }
    // pad to at least k rows so the right singular vectors form a full basis
    let padded = if a.nrows() < k {
        let mut p = CMatrix::zeros(k, k);
        p.rows_mut(0, a.nrows()).copy_from(a);
        p
    } else {
        a.clone()
    };
    let svd = padded.svd(false, true);
    let v_t = svd.v_t.unwrap();
    let s = &svd.singular_values;
    let mut order: Vec<usize> = (0..s.len()).collect();
    order.sort_by(|&i, &j| s[j].total_cmp(&s[i]));
    let top = s[order[0]].max(f64::MIN_POSITIVE);
    let last = order[k - 1];
    let second = if k > 1 { s[order[k - 2]] / top } else { f64::INFINITY };
    let v = v_t.row(last).adjoint().into_owned();
    (v, s[last] / top, second)
}
