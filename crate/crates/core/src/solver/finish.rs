//! Parameter homotopy from the solver's own flags to the user's flags,
//! in an affine chart `H = Q [I; Z]` of the Grassmannian.

use nalgebra::DVector;

use crate::combinatorics::Bracket;
use crate::error::Result;
use crate::linalg::{
    exterior_rows, exterior_rows_generic, hcat, inverse, not_leq_set, orthonormal_columns, CMatrix, Dual, PluckerPlan,
    Scalar, C,
};
use crate::tracker::Homotopy;

/// One condition whose flag moves as `G(τ) = (1 − τ)·γ·start + τ·target`.
#[derive(Clone, Debug)]
struct MovingCondition {
    rows: Vec<Bracket>,
    start: CMatrix,
    target: CMatrix,
}

#[derive(Clone, Debug)]
pub struct FlagHomotopy {
    n: usize,
    k: usize,
    chart: CMatrix,
    gamma: C,
    conditions: Vec<MovingCondition>,
    equations: usize,
}

impl FlagHomotopy {
    /// `starts` and `targets` are flag bases, one per condition; both are
    /// orthonormalized, which leaves their flags unchanged.
    pub fn new(brackets: &[Bracket], starts: &[CMatrix], targets: &[CMatrix], chart: CMatrix, gamma: C) -> Self {
        let (k, n) = (brackets[0].k(), brackets[0].n());
        let conditions: Vec<MovingCondition> = brackets
            .iter()
            .zip(starts.iter().zip(targets))
            .map(|(b, (s, t))| MovingCondition {
                rows: not_leq_set(b),
                start: orthonormal_columns(s),
                target: orthonormal_columns(t),
            })
            .collect();
        let equations = conditions.iter().map(|c| c.rows.len()).sum();
        Self {
            n,
            k,
            chart,
            gamma,
            conditions,
            equations,
        }
    }

    /// The same homotopy in a chart centered at the plane `h`: `Z = 0` at `h`.
    pub fn recentered(&self, h: &CMatrix) -> Self {
        let n = self.n;
        let chart = hcat(&orthonormal_columns(h), &CMatrix::identity(n, n)).qr().q();
        Self { chart, ..self.clone() }
    }

    fn flag_at(&self, c: &MovingCondition, tau: C) -> CMatrix {
        &c.start * ((C::new(1.0, 0.0) - tau) * self.gamma) + &c.target * tau
    }

    /// `Z` with `Q^H H = [T; B]` and `Z = B T⁻¹`.
    pub fn to_chart(&self, h: &CMatrix) -> Result<Vec<C>> {
        let (n, k) = (self.n, self.k);
        let local = self.chart.adjoint() * h;
        let top = inverse(&local.rows(0, k).into_owned())?;
        let z = local.rows(k, n - k) * top;
        Ok((0..n - k)
            .flat_map(|i| (0..k).map(move |j| (i, j)))
            .map(|(i, j)| z[(i, j)])
            .collect())
    }

    /// `Q [I; Z]`.
    pub fn from_chart(&self, z: &[C]) -> CMatrix {
        let (n, k) = (self.n, self.k);
        let mut local = CMatrix::zeros(n, k);
        for j in 0..k {
            local[(j, j)] = C::new(1.0, 0.0);
        }
        for i in 0..n - k {
            for j in 0..k {
                local[(k + i, j)] = z[i * k + j];
            }
        }
        &self.chart * local
    }

    fn plucker_dual(&self, z: &[C]) -> Vec<Dual> {
        let (n, k) = (self.n, self.k);
        let d = z.len();
        let mut h = Vec::with_capacity(n * k);
        for a in 0..n {
            for b in 0..k {
                let mut g = vec![C::new(0.0, 0.0); d];
                let mut v = self.chart[(a, b)];
                for l in 0..n - k {
                    let q = self.chart[(a, k + l)];
                    v += q * z[l * k + b];
                    g[l * k + b] = q;
                }
                h.push(Dual::new(v, g));
            }
        }
        PluckerPlan::get(n, k).evaluate(&h)
    }
}

fn nan_vector(len: usize) -> DVector<C> {
    DVector::from_element(len, C::new(f64::NAN, f64::NAN))
}

impl Homotopy for FlagHomotopy {
    fn equation_count(&self) -> usize {
        self.equations
    }

    fn variable_count(&self) -> usize {
        self.k * (self.n - self.k)
    }

    fn evaluate(&self, z: &[C], tau: C) -> DVector<C> {
        let p = DVector::from_vec(crate::linalg::plucker_vector(&self.from_chart(z)));
        let mut out = Vec::with_capacity(self.equations);
        for c in &self.conditions {
            let Ok(inv) = inverse(&self.flag_at(c, tau)) else {
                return nan_vector(self.equations);
            };
            out.extend((exterior_rows(&inv, &c.rows) * &p).iter().copied());
        }
        DVector::from_vec(out)
    }

    fn evaluate_with_jacobian(&self, z: &[C], tau: C) -> (DVector<C>, CMatrix, DVector<C>) {
        let d = z.len();
        let p = self.plucker_dual(z);
        let pv = DVector::from_iterator(p.len(), p.iter().map(|x| x.v));
        let pg = CMatrix::from_fn(p.len(), d, |g, v| p[g].d(v));
        let mut value = DVector::zeros(self.equations);
        let mut jz = CMatrix::zeros(self.equations, d);
        let mut jt = DVector::zeros(self.equations);
        let mut row = 0;
        for c in &self.conditions {
            let g = self.flag_at(c, tau);
            let Ok(inv) = inverse(&g) else {
                return (
                    nan_vector(self.equations),
                    CMatrix::zeros(self.equations, d),
                    nan_vector(self.equations),
                );
            };
            let dg = &c.target - &c.start * self.gamma;
            let dinv = -(&inv * dg * &inv);
            let n = self.n;
            let entries: Vec<Dual> = (0..n * n)
                .map(|idx| Dual::new(inv[(idx / n, idx % n)], vec![dinv[(idx / n, idx % n)]]))
                .collect();
            let rows = exterior_rows_generic(&entries, n, &c.rows);
            let coef = CMatrix::from_fn(rows.len(), p.len(), |r, g| rows[r][g].value());
            let dcoef = CMatrix::from_fn(rows.len(), p.len(), |r, g| rows[r][g].d(0));
            let len = rows.len();
            value.rows_mut(row, len).copy_from(&(&coef * &pv));
            jz.rows_mut(row, len).copy_from(&(&coef * &pg));
            jt.rows_mut(row, len).copy_from(&(&dcoef * &pv));
            row += len;
        }
        (value, jz, jt)
    }
}
