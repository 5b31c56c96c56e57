//! Reverse column-reduced echelon form of `n × k` matrices.

use super::scalar::C;
use super::CMatrix;
use crate::combinatorics::Bracket;
use crate::error::{Error, Result};

/// Column-reduces `m` so that column `j` ends in a 1 at row `α_j`, with zeros
/// below it and in every other pivot row. Returns the reduced matrix and `α`.
pub fn echelonize(m: &CMatrix) -> Result<(CMatrix, Bracket)> {
    let (n, k) = m.shape();
    let scale = m.iter().map(|z| z.norm()).fold(0.0, f64::max);
    if !(scale > 0.0) || !scale.is_finite() {
        return Err(Error::Singular("zero or non-finite matrix".into()));
    }
    let tol = 1e-8 * scale;
    let mut a = m.clone();
    let mut pivot_of_col: Vec<Option<usize>> = vec![None; k];
    for row in (0..n).rev() {
        let best = (0..k)
            .filter(|&j| pivot_of_col[j].is_none())
            .max_by(|&i, &j| a[(row, i)].norm().total_cmp(&a[(row, j)].norm()));
        let Some(p) = best else { break };
        if a[(row, p)].norm() <= tol {
            continue;
        }
        pivot_of_col[p] = Some(row);
        let inv = C::new(1.0, 0.0) / a[(row, p)];
        let col = a.column(p) * inv;
        a.set_column(p, &col);
        a[(row, p)] = C::new(1.0, 0.0);
        for j in 0..k {
            if j != p {
                let f = a[(row, j)];
                if f != C::new(0.0, 0.0) {
                    let updated = a.column(j) - &col * f;
                    a.set_column(j, &updated);
                    a[(row, j)] = C::new(0.0, 0.0);
                }
            }
        }
    }
    if pivot_of_col.iter().any(Option::is_none) {
        return Err(Error::Singular("rank-deficient matrix in echelonize".into()));
    }
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&j| pivot_of_col[j].unwrap());
    let mut out = CMatrix::zeros(n, k);
    for (dst, &src) in order.iter().enumerate() {
        let pivot = pivot_of_col[src].unwrap();
        out.set_column(dst, &a.column(src));
        for i in pivot + 1..n {
            out[(i, dst)] = C::new(0.0, 0.0);
        }
    }
    let alpha = order.iter().map(|&j| pivot_of_col[j].unwrap() + 1).collect();
    Ok((out, Bracket::new(alpha, n)?))
}
