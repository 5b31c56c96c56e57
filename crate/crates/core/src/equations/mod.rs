//! Efficient Schubert equations on parameterized matrices, and the
//! rank-of-augmented-matrix oracle used only for verification.
//!
//! A `k`-plane `H` lies in `X_α F` exactly when the Plücker coordinates of
//! `F⁻¹H` vanish at every bracket `β ≰ α`. By Cauchy-Binet these are the
//! rows `β` of the `k`-th exterior power of `F⁻¹` applied to the Plücker
//! vector of `H`, so one Plücker vector serves every condition.

use std::sync::Arc;

use nalgebra::DVector;

use crate::combinatorics::Bracket;
use crate::coords::FamilyPattern;
use crate::error::{Error, Result};
use crate::linalg::{
    exterior_rows, hcat, not_leq_set, orthonormal_columns, plucker_vector, singular_values, CMatrix, Dual, Flag,
    PluckerPlan, Scalar, C,
};

/// The Schubert variety `X_α F`.
#[derive(Clone, Debug)]
pub struct SchubertCondition {
    pub bracket: Bracket,
    pub flag: Flag,
}

impl SchubertCondition {
    pub fn new(bracket: Bracket, flag: Flag) -> Result<Self> {
        if flag.n() != bracket.n() {
            return Err(Error::InvalidProblem(format!(
                "flag of size {} for bracket {bracket}",
                flag.n()
            )));
        }
        Ok(Self { bracket, flag })
    }

    pub fn equation_count(&self) -> usize {
        not_leq_set(&self.bracket).len()
    }

    /// Coefficient rows `p_{β,·}(F⁻¹)` for `β ≰ α`, using a unitary basis
    /// of the flag so that `F⁻¹` is its adjoint and every row has unit norm.
    pub fn coefficients(&self) -> CMatrix {
        let rows = not_leq_set(&self.bracket);
        if rows.is_empty() {
            let plan = PluckerPlan::get(self.bracket.n(), self.bracket.k());
            return CMatrix::zeros(0, plan.len());
        }
        exterior_rows(&self.flag.orthonormal().adjoint(), &rows)
    }
}

/// Stacked efficient equations of several conditions composed with a
/// coordinate family and a left flag matrix: `H(y, t) = M · Y(y, t)`.
#[derive(Clone, Debug)]
pub struct ConditionSystem {
    n: usize,
    k: usize,
    coeffs: Arc<CMatrix>,
    block_sizes: Vec<usize>,
    family: FamilyPattern,
    m: CMatrix,
}

impl ConditionSystem {
    pub fn build(conditions: &[SchubertCondition], family: FamilyPattern, m: CMatrix) -> Result<Self> {
        let (coeffs, block_sizes) = stacked_coefficients(conditions, family.k(), family.n())?;
        Self::with_coefficients(Arc::new(coeffs), block_sizes, family, m)
    }

    /// Reuses coefficient rows shared by many edges of one game.
    pub fn with_coefficients(
        coeffs: Arc<CMatrix>,
        block_sizes: Vec<usize>,
        family: FamilyPattern,
        m: CMatrix,
    ) -> Result<Self> {
        let (n, k) = (family.n(), family.k());
        if m.shape() != (n, n) {
            return Err(Error::InvalidProblem(format!(
                "left flag is {:?}, expected {n}x{n}",
                m.shape()
            )));
        }
        if coeffs.ncols() != PluckerPlan::get(n, k).len() || block_sizes.iter().sum::<usize>() != coeffs.nrows() {
            return Err(Error::InvalidProblem("coefficient block shape mismatch".into()));
        }
        Ok(Self {
            n,
            k,
            coeffs,
            block_sizes,
            family,
            m,
        })
    }

    pub fn equation_count(&self) -> usize {
        self.coeffs.nrows()
    }

    pub fn variable_count(&self) -> usize {
        self.family.var_count()
    }

    pub fn block_sizes(&self) -> &[usize] {
        &self.block_sizes
    }

    pub fn family(&self) -> &FamilyPattern {
        &self.family
    }

    pub fn left_flag(&self) -> &CMatrix {
        &self.m
    }

    pub fn coefficients(&self) -> &CMatrix {
        &self.coeffs
    }

    /// The `n × k` matrix `M · Y(y, t)`.
    pub fn point(&self, y: &[C], t: C) -> CMatrix {
        &self.m * self.family.substitute(y, t)
    }

    pub fn evaluate(&self, y: &[C], t: C) -> DVector<C> {
        let p = DVector::from_vec(plucker_vector(&self.point(y, t)));
        &*self.coeffs * p
    }

    /// Residual, `∂/∂y` and `∂/∂t` by forward-mode propagation.
    pub fn evaluate_with_jacobian(&self, y: &[C], t: C) -> (DVector<C>, CMatrix, DVector<C>) {
        let (n, k) = (self.n, self.k);
        let d = y.len();
        let yd = self.family.substitute_dual(y, t);
        let mut h = vec![Dual::zero(); n * k];
        for i in 0..n {
            for l in 0..n {
                let mil = self.m[(i, l)];
                if mil == C::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..k {
                    h[i * k + j].add_scaled(mil, &yd[l * k + j]);
                }
            }
        }
        let p = PluckerPlan::get(n, k).evaluate(&h);
        let mut pv = DVector::zeros(p.len());
        let mut pg = CMatrix::zeros(p.len(), d + 1);
        for (g, x) in p.iter().enumerate() {
            pv[g] = x.v;
            for (v, dx) in x.g.iter().enumerate() {
                pg[(g, v)] = *dx;
            }
        }
        let value = &*self.coeffs * pv;
        let grad = &*self.coeffs * pg;
        let jy = grad.columns(0, d).into_owned();
        let jt = grad.column(d).into_owned();
        (value, jy, jt)
    }

    pub fn jacobian(&self, y: &[C], t: C) -> (CMatrix, DVector<C>) {
        let (_, jy, jt) = self.evaluate_with_jacobian(y, t);
        (jy, jt)
    }
}

/// Coefficient rows of several conditions on `Gr(k, n)`, stacked, with the
/// number of rows contributed by each.
pub fn stacked_coefficients(conditions: &[SchubertCondition], k: usize, n: usize) -> Result<(CMatrix, Vec<usize>)> {
    let plan = PluckerPlan::get(n, k);
    let blocks: Vec<CMatrix> = conditions
        .iter()
        .map(|c| {
            if c.bracket.k() != k || c.bracket.n() != n {
                return Err(Error::InvalidProblem(format!(
                    "condition {} outside Gr({k},{n})",
                    c.bracket
                )));
            }
            Ok(c.coefficients())
        })
        .collect::<Result<_>>()?;
    let total: usize = blocks.iter().map(|b| b.nrows()).sum();
    let mut coeffs = CMatrix::zeros(total, plan.len());
    let mut row = 0;
    for b in &blocks {
        coeffs.rows_mut(row, b.nrows()).copy_from(b);
        row += b.nrows();
    }
    Ok((coeffs, blocks.iter().map(|b| b.nrows()).collect()))
}

/// Indices `i` (0-based) whose rank condition `dim(H ∩ F_{α_i}) ≥ i` is not
/// implied by the others or by the ambient dimension.
pub fn meaningful_conditions(alpha: &Bracket) -> Vec<usize> {
    let (k, n) = (alpha.k(), alpha.n());
    let a = alpha.entries();
    (0..k)
        .filter(|&i| a[i] != n - k + i + 1 && (i + 1 == k || a[i] + 1 != a[i + 1]))
        .collect()
}

/// For each meaningful `i`, the `(k + α_i − i + 1)`-th singular value of
/// `[H | F_{α_i}]` with both blocks orthonormalized. All vanish exactly when
/// `H ∈ X_α F`.
pub fn minor_oracle_residual(h: &CMatrix, cond: &SchubertCondition) -> Vec<f64> {
    let k = h.ncols();
    let hq = orthonormal_columns(h);
    let fq = cond.flag.orthonormal();
    meaningful_conditions(&cond.bracket)
        .into_iter()
        .map(|i| {
            let a = cond.bracket.entries()[i];
            let joined = hcat(&hq, &fq.columns(0, a).into_owned());
            let s = singular_values(&joined);
            // 1-based index k + a − (i+1) + 1
            s.get(k + a - i - 1).copied().unwrap_or(0.0)
        })
        .collect()
}

/// Largest oracle residual over several conditions.
pub fn max_oracle_residual(h: &CMatrix, conditions: &[SchubertCondition]) -> f64 {
    conditions
        .iter()
        .flat_map(|c| minor_oracle_residual(h, c))
        .fold(0.0, f64::max)
}
