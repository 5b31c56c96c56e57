//! Flags, the moving flags of the checkerboard game, and random matrices.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use nalgebra::DMatrix;
use rand::Rng;
use rand_distr::StandardNormal;

use super::dense::{orthonormal_columns, singular_values};
use super::scalar::C;
use super::CMatrix;
use crate::combinatorics::Schedule;
use crate::error::{Error, Result};

/// Condition number above which a flag basis is rejected.
pub const MAX_FLAG_CONDITION: f64 = 1e12;

/// A complete flag, stored by an invertible basis whose first `i` columns
/// span the `i`-dimensional subspace.
#[derive(Clone, Debug, PartialEq)]
pub struct Flag {
    basis: CMatrix,
}

impl Flag {
    pub fn new(basis: CMatrix) -> Result<Self> {
        let (n, m) = basis.shape();
        if n != m || n == 0 {
            return Err(Error::Singular(format!("flag basis is {n}x{m}")));
        }
        if basis.iter().any(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::Singular("non-finite flag entry".into()));
        }
        let s = singular_values(&basis);
        let cond = s[0] / s[n - 1];
        if !(cond < MAX_FLAG_CONDITION) {
            return Err(Error::Singular(format!("flag condition number {cond:.3e}")));
        }
        Ok(Self { basis })
    }

    pub fn n(&self) -> usize {
        self.basis.nrows()
    }

    pub fn basis(&self) -> &CMatrix {
        &self.basis
    }

    /// Unitary basis of the same flag.
    pub fn orthonormal(&self) -> CMatrix {
        orthonormal_columns(&self.basis)
    }

    /// Basis of the `i`-dimensional subspace.
    pub fn subspace(&self, i: usize) -> CMatrix {
        self.basis.columns(0, i).into_owned()
    }
}

/// Moving flags for every stage of the bubble sort.
///
/// At the final stage `M` is the identity. Going backwards through a move
/// with critical row `r`, `m'_r = m_r − m_{r+1}` and `m'_{r+1} = m_r`.
#[derive(Clone, Debug)]
pub struct FlagChain {
    pub n: usize,
    /// `stages[s]` is the flag matrix at stage `s`.
    pub stages: Vec<DMatrix<f64>>,
}

impl FlagChain {
    fn build(n: usize) -> Self {
        let schedule = Schedule::get(n);
        let mut stages = vec![DMatrix::<f64>::identity(n, n); schedule.stages()];
        for s in (0..schedule.moves.len()).rev() {
            let r = schedule.moves[s].row - 1;
            let later = stages[s + 1].clone();
            let mut earlier = later.clone();
            let mr = later.column(r).into_owned();
            let mr1 = later.column(r + 1).into_owned();
            earlier.set_column(r, &(&mr - &mr1));
            earlier.set_column(r + 1, &mr);
            stages[s] = earlier;
        }
        Self { n, stages }
    }

    pub fn get(n: usize) -> Arc<FlagChain> {
        static CACHE: OnceLock<Mutex<HashMap<usize, Arc<FlagChain>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        cache
            .lock()
            .unwrap()
            .entry(n)
            .or_insert_with(|| Arc::new(FlagChain::build(n)))
            .clone()
    }

    pub fn root(&self) -> &DMatrix<f64> {
        &self.stages[0]
    }

    pub fn stage(&self, s: usize) -> CMatrix {
        to_complex(&self.stages[s])
    }

    /// Family `M'(t)` of move `s` (from stage `s` to `s+1`): column `r` is
    /// `m_r − t·m_{r+1}` and column `r+1` is `m_r`, where `m` is the basis
    /// of stage `s+1`. As a flag it tends to stage `s+1` as `t → 0` and it
    /// equals stage `s` at `t = 1`.
    pub fn family(&self, s: usize, t: C) -> CMatrix {
        let r = Schedule::get(self.n).moves[s].row - 1;
        let later = self.stage(s + 1);
        let mut m = later.clone();
        let col = later.column(r) - later.column(r + 1) * t;
        m.set_column(r, &col);
        m.set_column(r + 1, &later.column(r));
        m
    }
}

pub fn flag_chain(n: usize) -> Arc<FlagChain> {
    FlagChain::get(n)
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(|x| C::new(x, 0.0))
}

/// Standard complex Gaussian sample.
pub fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> C {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

pub fn random_matrix<R: Rng + ?Sized>(rows: usize, cols: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::zeros(rows, cols);
    for i in 0..rows {
        for j in 0..cols {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Unit upper-triangular matrix with complex Gaussian entries above the
/// diagonal.
pub fn random_unitriangular<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let mut m = CMatrix::identity(n, n);
    for i in 0..n {
        for j in i + 1..n {
            m[(i, j)] = complex_gaussian(rng);
        }
    }
    m
}

/// Matrix with ones on the anti-diagonal.
pub fn antidiag(n: usize) -> CMatrix {
    CMatrix::from_fn(n, n, |i, j| C::new(if i + j + 1 == n { 1.0 } else { 0.0 }, 0.0))
}

/// Random invertible matrix whose flag is in general position.
pub fn random_flag<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Flag {
    loop {
        if let Ok(f) = Flag::new(random_matrix(n, n, rng)) {
            return f;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::dense::{intersection_dim, RANK_TOL};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn real(rows: &[[f64; 4]]) -> DMatrix<f64> {
        DMatrix::from_fn(4, 4, |i, j| rows[i][j])
    }

    #[test]
    fn seven_matrices_for_n4() {
        let chain = flag_chain(4);
        let expected = [
            real(&[
                [1., 1., 1., 1.],
                [-1., -1., -1., 0.],
                [1., 1., 0., 0.],
                [-1., 0., 0., 0.],
            ]),
            real(&[
                [1., 1., 1., 0.],
                [-1., -1., 0., 1.],
                [1., 1., 0., 0.],
                [-1., 0., 0., 0.],
            ]),
            real(&[
                [1., 1., 0., 0.],
                [-1., 0., 1., 1.],
                [1., 0., -1., 0.],
                [-1., 0., 0., 0.],
            ]),
            real(&[[1., 1., 0., 0.], [-1., 0., 1., 0.], [1., 0., 0., 1.], [-1., 0., 0., 0.]]),
            real(&[[1., 0., 0., 0.], [0., 1., 1., 0.], [0., -1., 0., 1.], [0., 1., 0., 0.]]),
            real(&[[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 1.], [0., 0., -1., 0.]]),
            DMatrix::identity(4, 4),
        ];
        for (s, want) in expected.iter().enumerate() {
            assert_eq!(&chain.stages[s], want, "stage {s}");
        }
    }

    #[test]
    fn six_families_for_n4() {
        let t = 0.37;
        let fam = |rows: [[f64; 4]; 4]| to_complex(&real(&rows));
        // row 3 of the fourth family carries −t so that it ends at the next stage
        let expected = [
            fam([
                [1., 1., 1., 1.],
                [-1., -1., -t, 0.],
                [1., 1., 0., 0.],
                [-1., 0., 0., 0.],
            ]),
            fam([[1., 1., 1., 0.], [-1., -t, 0., 1.], [1., t, 0., 0.], [-1., 0., 0., 0.]]),
            fam([[1., 1., 0., 0.], [-1., 0., 1., 1.], [1., 0., -t, 0.], [-1., 0., 0., 0.]]),
            fam([[1., 1., 0., 0.], [-t, 0., 1., 0.], [t, 0., 0., 1.], [-t, 0., 0., 0.]]),
            fam([[1., 0., 0., 0.], [0., 1., 1., 0.], [0., -t, 0., 1.], [0., t, 0., 0.]]),
            fam([[1., 0., 0., 0.], [0., 1., 0., 0.], [0., 0., 1., 1.], [0., 0., -t, 0.]]),
        ];
        let chain = flag_chain(4);
        for (s, want) in expected.iter().enumerate() {
            assert_eq!(&chain.family(s, C::new(t, 0.0)), want, "move {s}");
        }
    }

    #[test]
    fn root_sign_pattern() {
        for n in 2..=8 {
            let root = flag_chain(n).root().clone();
            for i in 0..n {
                for j in 0..n {
                    let want = if i + j + 2 > n + 1 {
                        0.0
                    } else if i % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    };
                    assert_eq!(root[(i, j)], want);
                }
            }
        }
    }

    #[test]
    fn families_interpolate_stages() {
        let chain = flag_chain(5);
        for s in 0..chain.stages.len() - 1 {
            assert_eq!(chain.family(s, C::new(1.0, 0.0)), chain.stage(s));
        }
    }

    #[test]
    fn relative_positions_along_families() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for n in 2..=6 {
            let chain = flag_chain(n);
            let sched = Schedule::get(n);
            let id = CMatrix::identity(n, n);
            for s in 0..sched.moves.len() {
                let t = rng.random_range(0.05..1.0);
                let fam = chain.family(s, C::new(t, 0.0));
                let at_zero = chain.stage(s + 1);
                for i in 1..=n {
                    for j in 1..=n {
                        let fj = id.columns(0, j).into_owned();
                        let got = intersection_dim(&fam.columns(0, i).into_owned(), &fj, RANK_TOL);
                        assert_eq!(got, sched.arrays[s].intersection_dim(i, j));
                        let got0 = intersection_dim(&at_zero.columns(0, i).into_owned(), &fj, RANK_TOL);
                        assert_eq!(got0, sched.arrays[s + 1].intersection_dim(i, j));
                    }
                }
            }
        }
    }

    #[test]
    fn random_matrices() {
        let mut a = ChaCha8Rng::seed_from_u64(5);
        let mut b = ChaCha8Rng::seed_from_u64(5);
        let u = random_unitriangular(5, &mut a);
        assert_eq!(u, random_unitriangular(5, &mut b));
        for i in 0..5 {
            assert_eq!(u[(i, i)], C::new(1.0, 0.0));
            for j in 0..i {
                assert_eq!(u[(i, j)], C::new(0.0, 0.0));
            }
        }
        let j = antidiag(3);
        assert_eq!(j[(0, 2)], C::new(1.0, 0.0));
        assert_eq!(j[(1, 1)], C::new(1.0, 0.0));
        assert_eq!(j[(2, 0)], C::new(1.0, 0.0));
        assert_eq!(j[(0, 0)], C::new(0.0, 0.0));
    }
}
