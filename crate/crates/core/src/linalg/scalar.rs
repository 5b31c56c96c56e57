//! Scalars for code that runs both on plain complex numbers and on
//! forward-mode dual numbers.

use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;

pub type C = Complex64;

/// Ring operations needed by determinants and the Plücker recursion.
pub trait Scalar:
    Clone
    + Send
    + Sync
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Div<Output = Self>
{
    fn constant(c: C) -> Self;
    fn value(&self) -> C;
    fn scale(&self, c: C) -> Self;
    /// `self += a * b`.
    fn add_prod(&mut self, a: &Self, b: &Self);
    /// `self -= a * b`.
    fn sub_prod(&mut self, a: &Self, b: &Self);
    /// `self += c * a`.
    fn add_scaled(&mut self, c: C, a: &Self);

    fn zero() -> Self {
        Self::constant(C::new(0.0, 0.0))
    }
}

impl Scalar for C {
    fn constant(c: C) -> Self {
        c
    }

    fn value(&self) -> C {
        *self
    }

    fn scale(&self, c: C) -> Self {
        self * c
    }

    fn add_prod(&mut self, a: &Self, b: &Self) {
        *self += a * b;
    }

    fn sub_prod(&mut self, a: &Self, b: &Self) {
        *self -= a * b;
    }

    fn add_scaled(&mut self, c: C, a: &Self) {
        *self += c * a;
    }
}

/// Determinant of a square matrix given row-major, by LU with partial
/// pivoting on the values.
pub fn det<T: Scalar>(mut a: Vec<T>, n: usize) -> T {
    let mut d = T::constant(C::new(1.0, 0.0));
    for col in 0..n {
        let pivot = (col..n)
            .max_by(|&i, &j| a[i * n + col].value().norm().total_cmp(&a[j * n + col].value().norm()))
            .unwrap();
        if a[pivot * n + col].value().norm() == 0.0 {
            return T::zero();
        }
        if pivot != col {
            for j in 0..n {
                a.swap(pivot * n + j, col * n + j);
            }
            d = -d;
        }
        let p = a[col * n + col].clone();
        d = d * p.clone();
        for i in col + 1..n {
            let f = a[i * n + col].clone() / p.clone();
            for j in col + 1..n {
                let v = a[i * n + j].clone() - f.clone() * a[col * n + j].clone();
                a[i * n + j] = v;
            }
        }
    }
    d
}
