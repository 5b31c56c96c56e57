//! Forward-mode dual numbers over complex doubles.

use std::ops::{Add, Div, Mul, Neg, Sub};

use super::scalar::{Scalar, C};

/// A value with its gradient. An empty gradient stands for zero, so
/// constants cost nothing.
#[derive(Clone, Debug, PartialEq)]
pub struct Dual {
    pub v: C,
    pub g: Vec<C>,
}

impl Dual {
    pub fn new(v: C, g: Vec<C>) -> Self {
        Self { v, g }
    }

    /// The `idx`-th of `len` independent variables, at value `v`.
    pub fn variable(v: C, idx: usize, len: usize) -> Self {
        let mut g = vec![C::new(0.0, 0.0); len];
        g[idx] = C::new(1.0, 0.0);
        Self { v, g }
    }

    /// Gradient entry `i`, treating missing entries as zero.
    pub fn d(&self, i: usize) -> C {
        self.g.get(i).copied().unwrap_or_default()
    }

    fn axpy(dst: &mut Vec<C>, a: C, x: &[C]) {
        if x.is_empty() || a == C::new(0.0, 0.0) {
            return;
        }
        if dst.len() < x.len() {
            dst.resize(x.len(), C::new(0.0, 0.0));
        }
        for (d, xi) in dst.iter_mut().zip(x) {
            *d += a * xi;
        }
    }
}

impl Scalar for Dual {
    fn constant(c: C) -> Self {
        Self { v: c, g: Vec::new() }
    }

    fn value(&self) -> C {
        self.v
    }

    fn scale(&self, c: C) -> Self {
        Self {
            v: self.v * c,
            g: self.g.iter().map(|x| x * c).collect(),
        }
    }

    fn add_prod(&mut self, a: &Self, b: &Self) {
        self.v += a.v * b.v;
        Self::axpy(&mut self.g, a.v, &b.g);
        Self::axpy(&mut self.g, b.v, &a.g);
    }

    fn sub_prod(&mut self, a: &Self, b: &Self) {
        self.v -= a.v * b.v;
        Self::axpy(&mut self.g, -a.v, &b.g);
        Self::axpy(&mut self.g, -b.v, &a.g);
    }

    fn add_scaled(&mut self, c: C, a: &Self) {
        self.v += c * a.v;
        Self::axpy(&mut self.g, c, &a.g);
    }
}

impl Add for Dual {
    type Output = Dual;
    fn add(mut self, rhs: Dual) -> Dual {
        self.add_scaled(C::new(1.0, 0.0), &rhs);
        self
    }
}

impl Sub for Dual {
    type Output = Dual;
    fn sub(mut self, rhs: Dual) -> Dual {
        self.add_scaled(C::new(-1.0, 0.0), &rhs);
        self
    }
}

impl Mul for Dual {
    type Output = Dual;
    fn mul(self, rhs: Dual) -> Dual {
        let mut out = Dual::zero();
        out.add_prod(&self, &rhs);
        out
    }
}

impl Neg for Dual {
    type Output = Dual;
    fn neg(self) -> Dual {
        self.scale(C::new(-1.0, 0.0))
    }
}

impl Div for Dual {
    type Output = Dual;
    fn div(self, rhs: Dual) -> Dual {
        let inv = C::new(1.0, 0.0) / rhs.v;
        let v = self.v * inv;
        // (a/b)' = (a' − v·b') / b
        let mut g: Vec<C> = self.g.iter().map(|x| x * inv).collect();
        Dual::axpy(&mut g, -v * inv, &rhs.g);
        Dual { v, g }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::scalar::det;

    #[test]
    fn product_and_quotient_rules() {
        let x = Dual::variable(C::new(2.0, 1.0), 0, 2);
        let y = Dual::variable(C::new(-1.0, 0.5), 1, 2);
        let p = x.clone() * y.clone();
        assert_eq!(p.v, x.v * y.v);
        assert_eq!(p.g, vec![y.v, x.v]);
        let q = x.clone() / y.clone();
        assert!((q.d(0) - C::new(1.0, 0.0) / y.v).norm() < 1e-14);
        assert!((q.d(1) + x.v / (y.v * y.v)).norm() < 1e-14);
        let c = Dual::constant(C::new(3.0, 0.0));
        assert_eq!((c.clone() + x.clone()).g, x.g);
        assert_eq!((c - x.clone()).g, vec![C::new(-1.0, 0.0), C::new(0.0, 0.0)]);
    }

    #[test]
    fn determinant_derivative_is_cofactor() {
        // d det / d a_00 = a_11 for a 2x2 matrix
        let a = [C::new(1.0, 2.0), C::new(0.5, 0.0), C::new(-1.0, 0.3), C::new(2.0, -1.0)];
        let m = vec![
            Dual::variable(a[0], 0, 1),
            Dual::constant(a[1]),
            Dual::constant(a[2]),
            Dual::constant(a[3]),
        ];
        let d = det(m, 2);
        assert!((d.v - (a[0] * a[3] - a[1] * a[2])).norm() < 1e-14);
        assert!((d.d(0) - a[3]).norm() < 1e-14);
    }
}
