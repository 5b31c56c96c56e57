//! Coordinate families `Y(t)` attached to the edges of a checkerboard game.

use crate::combinatorics::{Checkerboard, HomotopyCase};
use crate::error::{Error, Result};
use crate::linalg::{CMatrix, Dual, Scalar, C};

use super::pattern::{pattern_from_board, Entry, StiefelPattern};

/// `coeff · t^[t] · Π vars`, with at most two variables.
#[derive(Clone, Debug, PartialEq)]
pub struct Term {
    pub coeff: f64,
    pub t: bool,
    pub vars: Vec<usize>,
}

/// Sum of terms; the empty sum is zero.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Expr(pub Vec<Term>);

impl Expr {
    pub fn zero() -> Self {
        Expr(Vec::new())
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn from_entry(e: Entry) -> Self {
        match e {
            Entry::Zero => Expr::zero(),
            Entry::One => Expr(vec![Term {
                coeff: 1.0,
                t: false,
                vars: vec![],
            }]),
            Entry::Var(v) => Expr(vec![Term {
                coeff: 1.0,
                t: false,
                vars: vec![v],
            }]),
        }
    }

    pub fn depends_on_t(&self) -> bool {
        self.0.iter().any(|term| term.t)
    }

    /// `self − t·other` for a `t`-free `other`.
    fn minus_t(mut self, other: &Expr) -> Self {
        for term in &other.0 {
            debug_assert!(!term.t);
            self.0.push(Term {
                coeff: -term.coeff,
                t: true,
                vars: term.vars.clone(),
            });
        }
        self
    }

    /// Product of two `t`-free expressions.
    fn times(&self, other: &Expr) -> Self {
        let mut out = Vec::new();
        for a in &self.0 {
            for b in &other.0 {
                debug_assert!(!a.t && !b.t);
                let mut vars = a.vars.clone();
                vars.extend(&b.vars);
                out.push(Term {
                    coeff: a.coeff * b.coeff,
                    t: false,
                    vars,
                });
            }
        }
        Expr(out)
    }

    pub fn eval(&self, y: &[C], t: C) -> C {
        self.0
            .iter()
            .map(|term| {
                let mut v = C::new(term.coeff, 0.0);
                if term.t {
                    v *= t;
                }
                for &x in &term.vars {
                    v *= y[x];
                }
                v
            })
            .sum()
    }

    /// Value with gradient over the variables followed by `t` (so the
    /// gradient has length `y.len() + 1`).
    pub fn eval_dual(&self, y: &[C], t: C) -> Dual {
        let d = y.len();
        let mut out = Dual::constant(self.eval(y, t));
        if self.is_zero() || self.0.iter().all(|term| !term.t && term.vars.is_empty()) {
            return out;
        }
        out.g = vec![C::new(0.0, 0.0); d + 1];
        for term in &self.0 {
            let scale = C::new(term.coeff, 0.0) * if term.t { t } else { C::new(1.0, 0.0) };
            for (pos, &x) in term.vars.iter().enumerate() {
                let others: C = term
                    .vars
                    .iter()
                    .enumerate()
                    .filter(|&(p, _)| p != pos)
                    .map(|(_, &o)| y[o])
                    .product();
                out.g[x] += scale * others;
            }
            if term.t {
                let prod: C = term.vars.iter().map(|&o| y[o]).product();
                out.g[d] += C::new(term.coeff, 0.0) * prod;
            }
        }
        out
    }
}

/// Parameters of a swap family: the child's red checkers `s` (critical row)
/// and `s+1` (row `big_r`), 0-based indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SwapData {
    pub s: usize,
    pub big_r: usize,
}

/// Family of matrices over the child's variables whose columns span, for
/// `t ≠ 0`, points of the parent's checkerboard variety for the moving
/// flag, and specialize at `t = 0` to the child's pattern.
#[derive(Clone, Debug)]
pub struct FamilyPattern {
    n: usize,
    k: usize,
    var_count: usize,
    entries: Vec<Expr>,
    pub case: HomotopyCase,
    /// 1-based critical row of the move.
    pub critical_row: usize,
    pub swap: Option<SwapData>,
}

impl FamilyPattern {
    /// The `t`-independent family equal to a pattern.
    pub fn constant(p: &StiefelPattern, critical_row: usize) -> Self {
        let (n, k) = (p.n(), p.k());
        let entries = (0..n * k)
            .map(|idx| Expr::from_entry(p.get(idx / k, idx % k)))
            .collect();
        Self {
            n,
            k,
            var_count: p.var_count(),
            entries,
            case: HomotopyCase::I,
            critical_row,
            swap: None,
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    /// Expression at 0-based `(row, col)`.
    pub fn entry(&self, i: usize, j: usize) -> &Expr {
        &self.entries[i * self.k + j]
    }

    fn entry_mut(&mut self, i: usize, j: usize) -> &mut Expr {
        &mut self.entries[i * self.k + j]
    }

    pub fn depends_on_t(&self) -> bool {
        self.entries.iter().any(Expr::depends_on_t)
    }

    pub fn substitute(&self, values: &[C], t: C) -> CMatrix {
        assert_eq!(values.len(), self.var_count, "variable count mismatch");
        CMatrix::from_fn(self.n, self.k, |i, j| self.entry(i, j).eval(values, t))
    }

    /// Row-major entries with gradients over the variables and `t`.
    pub fn substitute_dual(&self, values: &[C], t: C) -> Vec<Dual> {
        assert_eq!(values.len(), self.var_count, "variable count mismatch");
        self.entries.iter().map(|e| e.eval_dual(values, t)).collect()
    }
}

/// Coordinate family for the edge from `parent` to one of its children.
pub fn family_pattern(parent: &Checkerboard, child: &Checkerboard) -> Result<FamilyPattern> {
    let m = parent
        .next_move()
        .ok_or_else(|| Error::IllegalBoard("final board has no children".into()))?;
    let found = parent
        .children()?
        .into_iter()
        .find(|c| &c.board == child)
        .ok_or_else(|| Error::IllegalBoard(format!("{child:?} is not a child of {parent:?}")))?;
    let case = found.homotopy_case();
    let p = pattern_from_board(child);
    let mut fam = FamilyPattern::constant(&p, m.row);
    fam.case = case;
    let (r, c, n) = (m.row, m.column, p.n());
    let reds = child.reds();
    // 0-based row helpers: row `i` (1-based) is index `i − 1`
    let at = |i: usize, j: usize| Expr::from_entry(p.get(i - 1, j));
    match case {
        HomotopyCase::I => {}
        HomotopyCase::II => {
            for (j, &(rho, kappa)) in reds.iter().enumerate() {
                let in_e = rho > r && kappa < c;
                if !in_e {
                    *fam.entry_mut(r, j) = at(r + 1, j).minus_t(&at(r, j));
                }
            }
        }
        HomotopyCase::III => {
            let s = reds
                .iter()
                .position(|&(rho, _)| rho == r)
                .ok_or_else(|| Error::IllegalBoard("swap child has no red in the critical row".into()))?;
            if s + 1 >= reds.len() || reds[s + 1].0 <= r {
                return Err(Error::IllegalBoard("swap child lacks the lower moving red".into()));
            }
            let big_r = reds[s + 1].0;
            let pivot = at(r + 1, s + 1);
            for i in 1..=n {
                let e = if i == r {
                    pivot.clone()
                } else if i == r + 1 {
                    Expr::zero().minus_t(&pivot)
                } else if i <= n - c {
                    Expr::zero().minus_t(&at(i, s + 1))
                } else if i < r {
                    pivot.times(&at(i, s))
                } else {
                    Expr::zero()
                };
                *fam.entry_mut(i - 1, s) = e;
            }
            fam.swap = Some(SwapData { s, big_r });
        }
    }
    Ok(fam)
}
