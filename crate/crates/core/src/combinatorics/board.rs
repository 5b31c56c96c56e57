//! Checkerboards and the moves of the checkerboard game.

use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

use super::bracket::Bracket;
use super::schedule::{Move, PermutationArray, Schedule};
use crate::error::{Error, Result};

/// A permutation array from the bubble-sort schedule together with `k` red
/// checkers, stored as `(row, column)` pairs sorted top to bottom.
#[derive(Clone)]
pub struct Checkerboard {
    schedule: Arc<Schedule>,
    stage: usize,
    red: Vec<(usize, usize)>,
}

impl PartialEq for Checkerboard {
    fn eq(&self, other: &Self) -> bool {
        self.schedule.n == other.schedule.n && self.stage == other.stage && self.red == other.red
    }
}

impl Eq for Checkerboard {}

impl Hash for Checkerboard {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.schedule.n.hash(state);
        self.stage.hash(state);
        self.red.hash(state);
    }
}

impl fmt::Debug for Checkerboard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Checkerboard")
            .field("perm", &self.black().one_line())
            .field("stage", &self.stage)
            .field("red", &self.red)
            .finish()
    }
}

/// Answers to the two questions of a move plus the blocker test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct MoveCase {
    /// Top red checker of the critical diagonal: 0 on the ascending checker,
    /// 1 elsewhere, 2 absent.
    pub diag_answer: u8,
    /// Red checker of the critical row: 0 on the descending checker, 1
    /// elsewhere, 2 absent.
    pub row_answer: u8,
    /// Case (1,1) without blockers.
    pub swap_allowed: bool,
}

impl MoveCase {
    pub fn label(&self) -> String {
        format!("{}{}", self.diag_answer, self.row_answer)
    }
}

/// Which child of a move a board is.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Branch {
    Only,
    Stay,
    Swap,
}

/// Geometric type of a move, which fixes the shape of its coordinate family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum HomotopyCase {
    /// No red checker in the critical row: the geometry does not change.
    I,
    /// Red checker in the critical row, no columns exchanged.
    II,
    /// Two red checkers exchange columns.
    III,
}

impl HomotopyCase {
    pub fn of(case: MoveCase, branch: Branch) -> Self {
        match (case.diag_answer, case.row_answer, branch) {
            (_, 2, _) => HomotopyCase::I,
            (1, 1, Branch::Swap) => HomotopyCase::III,
            (2, _, _) | (1, 1, _) => HomotopyCase::II,
            _ => HomotopyCase::III,
        }
    }
}

/// A child produced by a move.
#[derive(Clone, Debug)]
pub struct Child {
    pub board: Checkerboard,
    pub case: MoveCase,
    pub branch: Branch,
}

impl Child {
    pub fn homotopy_case(&self) -> HomotopyCase {
        HomotopyCase::of(self.case, self.branch)
    }
}

impl Checkerboard {
    /// Board with given reds at a schedule stage; reds are sorted and the
    /// board invariants checked.
    pub fn new(n: usize, stage: usize, mut red: Vec<(usize, usize)>) -> Result<Self> {
        let schedule = Schedule::get(n);
        if stage >= schedule.stages() {
            return Err(Error::IllegalBoard(format!("stage {stage} out of range")));
        }
        red.sort();
        let board = Self { schedule, stage, red };
        board.check()?;
        Ok(board)
    }

    pub fn n(&self) -> usize {
        self.schedule.n
    }

    pub fn k(&self) -> usize {
        self.red.len()
    }

    pub fn stage(&self) -> usize {
        self.stage
    }

    pub fn reds(&self) -> &[(usize, usize)] {
        &self.red
    }

    pub fn schedule(&self) -> &Arc<Schedule> {
        &self.schedule
    }

    pub fn black(&self) -> &PermutationArray {
        &self.schedule.arrays[self.stage]
    }

    pub fn is_final(&self) -> bool {
        self.stage == self.schedule.last_stage()
    }

    /// The move leaving this board, if any.
    pub fn next_move(&self) -> Option<Move> {
        self.schedule.moves.get(self.stage).copied()
    }

    pub fn has_black(&self, row: usize, col: usize) -> bool {
        self.black().row_of_column(col) == row
    }

    pub fn has_red(&self, row: usize, col: usize) -> bool {
        self.red.contains(&(row, col))
    }

    fn blacks_northwest(&self, row: usize, col: usize) -> usize {
        self.black().perm[..col].iter().filter(|&&p| p <= row).count()
    }

    /// Checks distinct rows and columns, northwest dominance, and that every
    /// red checker left of the descending column sits on a black checker.
    pub fn check(&self) -> Result<()> {
        let n = self.n();
        let bad = |msg: String| Err(Error::IllegalBoard(format!("{self:?}: {msg}")));
        for (i, &(r, c)) in self.red.iter().enumerate() {
            if r == 0 || c == 0 || r > n || c > n {
                return bad("red checker off the board".into());
            }
            if self.red[..i].iter().any(|&(r2, c2)| r2 == r || c2 == c) {
                return bad("red checkers share a row or column".into());
            }
        }
        // A subset of reds has ≥ |S| blacks northwest iff this holds for the
        // largest subset inside each rectangle spanned by red rows and columns.
        for &(rr, _) in &self.red {
            for &(_, cc) in &self.red {
                let reds = self.red.iter().filter(|&&(r, c)| r <= rr && c <= cc).count();
                if reds > self.blacks_northwest(rr, cc) {
                    return bad(format!("northwest dominance fails at ({rr},{cc})"));
                }
            }
        }
        if let Some(m) = self.next_move() {
            for &(r, c) in &self.red {
                if c < m.column && !self.has_black(r, c) {
                    return bad(format!(
                        "red ({r},{c}) left of the descending checker is off a black square"
                    ));
                }
            }
        }
        Ok(())
    }

    /// Answers the two questions and the blocker test for the next move.
    pub fn classify(&self) -> Result<MoveCase> {
        let m = self
            .next_move()
            .ok_or_else(|| Error::IllegalBoard("final board has no move".into()))?;
        let (q1, e_top) = self.diag_question(&m);
        let (q2, crit) = self.row_question(&m)?;
        let swap_allowed = match (q1, q2, e_top, crit) {
            (1, 1, Some((rr, e)), Some((r, cc))) => !self
                .red
                .iter()
                .any(|&p| p != (rr, e) && p != (r, cc) && p.0 >= r && p.0 <= rr && p.1 >= e && p.1 <= cc),
            _ => false,
        };
        // Cases (1,2) and (2,2) move nothing; the game pictures label both
        // `22`, so the first answer distinguishes E only when a red checker
        // sits in the critical row.
        let diag_answer = if q1 == 1 && q2 == 2 { 2 } else { q1 };
        Ok(MoveCase {
            diag_answer,
            row_answer: q2,
            swap_allowed,
        })
    }

    /// Top red checker of the critical diagonal.
    fn diag_question(&self, m: &Move) -> (u8, Option<(usize, usize)>) {
        let top = self
            .red
            .iter()
            .copied()
            .filter(|&(r, c)| r > m.row && c >= m.asc_column && c < m.column)
            .min();
        match top {
            Some(p) if p == (m.row + 1, m.asc_column) => (0, top),
            Some(_) => (1, top),
            None => (2, None),
        }
    }

    fn row_question(&self, m: &Move) -> Result<(u8, Option<(usize, usize)>)> {
        match self.red.iter().copied().find(|&(r, _)| r == m.row) {
            Some(p) if p.1 == m.column => Ok((0, Some(p))),
            Some(p) if p.1 > m.column => Ok((1, Some(p))),
            Some(p) => Err(Error::IllegalBoard(format!(
                "red {p:?} in the critical row left of the descending checker"
            ))),
            None => Ok((2, None)),
        }
    }

    fn with_reds(&self, red: Vec<(usize, usize)>) -> Result<Checkerboard> {
        let mut red = red;
        red.sort();
        let child = Checkerboard {
            schedule: self.schedule.clone(),
            stage: self.stage + 1,
            red,
        };
        child.check()?;
        Ok(child)
    }

    /// The one or two boards produced by the next move.
    pub fn children(&self) -> Result<Vec<Child>> {
        let m = self
            .next_move()
            .ok_or_else(|| Error::IllegalBoard("final board has no children".into()))?;
        let case = self.classify()?;
        let (q1, e_top) = self.diag_question(&m);
        let (q2, crit) = self.row_question(&m)?;
        let replace = |from: (usize, usize), to: (usize, usize), red: &mut Vec<(usize, usize)>| {
            let i = red.iter().position(|&p| p == from).unwrap();
            red[i] = to;
        };
        // Both checkers move: the critical-row red goes left onto the ascending
        // checker's new square, the diagonal red goes right into the column
        // vacated by the critical-row red.
        let swapped = || -> Result<Checkerboard> {
            let (r, cc) = crit.unwrap();
            let (rr, e) = e_top.unwrap();
            let mut red = self.red.clone();
            replace((r, cc), (r, m.asc_column), &mut red);
            replace((rr, e), (rr, cc), &mut red);
            self.with_reds(red)
        };
        let only = |board| Child {
            board,
            case,
            branch: Branch::Only,
        };
        let children = match (q1, q2) {
            (0, 2) => {
                let mut red = self.red.clone();
                replace((m.row + 1, m.asc_column), (m.row, m.asc_column), &mut red);
                vec![only(self.with_reds(red)?)]
            }
            (1, 2) | (2, 2) | (2, 1) => vec![only(self.with_reds(self.red.clone())?)],
            (2, 0) => {
                let mut red = self.red.clone();
                replace((m.row, m.column), (m.row, m.asc_column), &mut red);
                vec![only(self.with_reds(red)?)]
            }
            (1, 1) => {
                let stay = Child {
                    board: self.with_reds(self.red.clone())?,
                    case,
                    branch: Branch::Stay,
                };
                if case.swap_allowed {
                    let swap = Child {
                        board: swapped()?,
                        case,
                        branch: Branch::Swap,
                    };
                    vec![swap, stay]
                } else {
                    vec![stay]
                }
            }
            _ => vec![only(swapped()?)],
        };
        Ok(children)
    }

    /// Bracket γ of a final board, whose reds lie at `(γ_i, γ_i)`.
    pub fn leaf_bracket(&self) -> Result<Bracket> {
        if !self.is_final() {
            return Err(Error::IllegalBoard("not a final board".into()));
        }
        if let Some(p) = self.red.iter().find(|p| p.0 != p.1) {
            return Err(Error::IllegalBoard(format!("red {p:?} off the diagonal")));
        }
        Bracket::new(self.red.iter().map(|p| p.0).collect(), self.n())
    }

    /// ASCII picture: `*` black, `o` red, `@` both, `.` empty.
    pub fn render(&self) -> String {
        let n = self.n();
        let mut out = String::with_capacity(n * (n + 1));
        for r in 1..=n {
            for c in 1..=n {
                out.push(match (self.has_black(r, c), self.has_red(r, c)) {
                    (true, true) => '@',
                    (true, false) => '*',
                    (false, true) => 'o',
                    (false, false) => '.',
                });
            }
            out.push('\n');
        }
        out
    }
}

/// Root board of the game for `X_α F ∩ X_β M`, with reds at
/// `(β_{k+1−i}, α_i)`, or `None` when the intersection is empty.
pub fn initial_checkerboard(alpha: &Bracket, beta: &Bracket) -> Option<Checkerboard> {
    let (k, n) = (alpha.k(), alpha.n());
    assert_eq!((k, n), (beta.k(), beta.n()), "brackets from different Grassmannians");
    let a = alpha.entries();
    let b = beta.entries();
    if (0..k).any(|i| b[k - 1 - i] + a[i] < n) {
        return None;
    }
    let red = (0..k).map(|i| (b[k - 1 - i], a[i])).collect();
    Checkerboard::new(n, 0, red).ok()
}

pub fn classify_move(b: &Checkerboard) -> Result<MoveCase> {
    b.classify()
}

pub fn children(b: &Checkerboard) -> Result<Vec<Child>> {
    b.children()
}

pub fn leaf_bracket(b: &Checkerboard) -> Result<Bracket> {
    b.leaf_bracket()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn br(e: &[usize], n: usize) -> Bracket {
        Bracket::new(e.to_vec(), n).unwrap()
    }

    #[test]
    fn initial_positions() {
        let b = initial_checkerboard(&br(&[2, 4], 4), &br(&[2, 4], 4)).unwrap();
        assert_eq!(b.reds(), &[(2, 4), (4, 2)]);
        let b = initial_checkerboard(&br(&[2, 4, 6], 6), &br(&[3, 4, 6], 6)).unwrap();
        assert_eq!(b.reds(), &[(3, 6), (4, 4), (6, 2)]);
        assert!(initial_checkerboard(&br(&[1, 2], 4), &br(&[1, 2], 4)).is_none());
    }

    #[test]
    fn first_moves_of_four_lines() {
        let root = initial_checkerboard(&br(&[2, 4], 4), &br(&[2, 4], 4)).unwrap();
        assert_eq!(root.classify().unwrap().label(), "22");
        let kids = root.children().unwrap();
        assert_eq!(kids.len(), 1);
        assert_eq!(kids[0].board.reds(), root.reds());
        let mid = &kids[0].board;
        let case = mid.classify().unwrap();
        assert_eq!(case.label(), "11");
        assert!(case.swap_allowed);
        let kids = mid.children().unwrap();
        assert_eq!(kids.len(), 2);
        assert_eq!(kids[0].branch, Branch::Swap);
        assert_eq!(kids[0].board.reds(), &[(2, 1), (4, 4)]);
        assert_eq!(kids[1].board.reds(), &[(2, 4), (4, 2)]);
    }

    #[test]
    fn render_uses_three_glyphs() {
        let root = initial_checkerboard(&br(&[2, 4], 4), &br(&[2, 4], 4)).unwrap();
        assert_eq!(root.render(), "...*\n..*o\n.*..\n*o..\n");
        let b = Checkerboard::new(4, 6, vec![(1, 1), (4, 4)]).unwrap();
        assert_eq!(b.render(), "@...\n.*..\n..*.\n...@\n");
        assert_eq!(b.leaf_bracket().unwrap(), br(&[1, 4], 4));
    }

    #[test]
    fn rejects_crowded_corner() {
        // the red at (1,3) has no black checker to its northwest
        assert!(Checkerboard::new(4, 0, vec![(1, 3), (2, 4)]).is_err());
    }
}
