//! Moving a point from a child's coordinates to its parent's at `t = 1`.

use crate::error::{Error, Result};
use crate::linalg::{flag_chain, inverse, null_vector, orthonormal_columns, CMatrix, C};

use super::family::FamilyPattern;
use super::pattern::{Entry, StiefelPattern};

/// Relative tolerance for zero slots and uniqueness gaps.
pub const SLOT_TOL: f64 = 1e-8;

/// Values of the pattern's variables for the point spanned by `m`.
///
/// Each column of the pattern is the unique vector in the column span of
/// `m` that vanishes on the column's zero slots, scaled to 1 at its pivot.
pub fn fit_to_pattern(m: &CMatrix, p: &StiefelPattern) -> Result<Vec<C>> {
    let (n, k) = (p.n(), p.k());
    if m.shape() != (n, k) {
        return Err(Error::Transfer(format!("matrix is {:?}, pattern {n}x{k}", m.shape())));
    }
    let q = orthonormal_columns(m);
    let mut fitted = CMatrix::zeros(n, k);
    for j in 0..k {
        let zeros: Vec<usize> = (0..n).filter(|&i| p.get(i, j) == Entry::Zero).collect();
        let block = CMatrix::from_fn(zeros.len(), k, |a, b| q[(zeros[a], b)]);
        let (coef, smallest, second) = null_vector(&block);
        if !(smallest < SLOT_TOL) {
            return Err(Error::Transfer(format!(
                "column {j}: zero slots unattainable ({smallest:.2e})"
            )));
        }
        if !(second > SLOT_TOL) {
            return Err(Error::Transfer(format!("column {j}: ambiguous fit ({second:.2e})")));
        }
        let col = &q * coef;
        let pivot = col[p.pivots()[j] - 1];
        if !(pivot.norm() > SLOT_TOL) {
            return Err(Error::Transfer(format!("column {j}: vanishing pivot")));
        }
        fitted.set_column(j, &(col / pivot));
    }
    read_slots(&fitted, p)
}

/// Reads variable values off a matrix already in the pattern's shape up to
/// column scaling; checks that zero slots vanish.
pub fn read_slots(m: &CMatrix, p: &StiefelPattern) -> Result<Vec<C>> {
    let (n, k) = (p.n(), p.k());
    let mut cols = m.clone();
    for j in 0..k {
        let pivot = cols[(p.pivots()[j] - 1, j)];
        if !(pivot.norm() > 0.0) {
            return Err(Error::Transfer(format!("column {j}: vanishing pivot")));
        }
        let scaled = cols.column(j) / pivot;
        cols.set_column(j, &scaled);
        let scale = scaled.iter().map(|z| z.norm()).fold(1.0, f64::max);
        for i in 0..n {
            if p.get(i, j) == Entry::Zero && cols[(i, j)].norm() > SLOT_TOL * scale {
                return Err(Error::Transfer(format!(
                    "nonzero entry {:.2e} at zero slot ({}, {})",
                    cols[(i, j)].norm(),
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(p.slots().iter().map(|&(i, j)| cols[(i, j)]).collect())
}

/// Column-reduces `m` against the pattern's pivots: every zero slot lying
/// in another column's pivot row is cleared with that column, bottom row
/// first, then slots are read off.
pub fn reduce_to_pattern(m: &CMatrix, p: &StiefelPattern) -> Result<Vec<C>> {
    let (n, k) = (p.n(), p.k());
    let mut cols = m.clone();
    for j in 0..k {
        let pivot = cols[(p.pivots()[j] - 1, j)];
        if !(pivot.norm() > 0.0) {
            return Err(Error::Transfer(format!("column {j}: vanishing pivot")));
        }
        let scaled = cols.column(j) / pivot;
        cols.set_column(j, &scaled);
    }
    for i in (0..n).rev() {
        let Some(jp) = p.pivots().iter().position(|&row| row == i + 1) else {
            continue;
        };
        for j in 0..k {
            let f = cols[(i, j)];
            if j != jp && p.get(i, j) == Entry::Zero && f != C::new(0.0, 0.0) {
                let reduced = cols.column(j) - cols.column(jp) * f;
                cols.set_column(j, &reduced);
            }
        }
    }
    read_slots(&cols, p)
}

/// `M_s⁻¹ · M_{s+1}`: re-expresses coordinates in the later stage's basis
/// in the earlier stage's basis.
pub fn basis_change(n: usize, stage: usize) -> Result<CMatrix> {
    let chain = flag_chain(n);
    Ok(inverse(&chain.stage(stage))? * chain.stage(stage + 1))
}

/// Solves `M' ỹ = M · Y(y, 1)` and fits `ỹ` to the parent's pattern.
pub fn transfer_to_parent(
    values: &[C],
    family: &FamilyPattern,
    change: &CMatrix,
    parent: &StiefelPattern,
) -> Result<Vec<C>> {
    let tilde = change * family.substitute(values, C::new(1.0, 0.0));
    fit_to_pattern(&tilde, parent)
}

/// Closed-form relabeling across a move with no red checker in the
/// critical row `r`: `y'_r = −y_{r+1}`, `y'_{r+1} = y_r + y_{r+1}`, then
/// the result is reduced to the parent's echelon shape.
pub fn case_one_closed_form(values: &[C], child: &StiefelPattern, r: usize, parent: &StiefelPattern) -> Result<Vec<C>> {
    let mut m = child.substitute(values);
    for j in 0..m.ncols() {
        let (a, b) = (m[(r - 1, j)], m[(r, j)]);
        m[(r - 1, j)] = -b;
        m[(r, j)] = a + b;
    }
    reduce_to_pattern(&m, parent)
}
