//! JSON problem and solution files.

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::Bracket;
use crate::error::{Error, Result};
use crate::linalg::{random_flag, CMatrix, Flag, C};
use crate::solver::{verify, Accounting, Instance, SolveOutcome, VerificationReport};
use crate::tracker::TrackerSettings;

/// Seed used when neither the file, the environment nor the command line
/// provides one.
pub const DEFAULT_SEED: u64 = 0;

/// A complex matrix as rows of `[re, im]` pairs.
pub type MatrixRows = Vec<Vec<[f64; 2]>>;

pub fn matrix_to_rows(m: &CMatrix) -> MatrixRows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

/// Reads a `rows × cols` matrix, rejecting ragged or mis-sized input.
pub fn rows_to_matrix(rows: &MatrixRows, shape: (usize, usize)) -> Result<CMatrix> {
    let (r, c) = shape;
    if rows.len() != r || rows.iter().any(|row| row.len() != c) {
        return Err(Error::InvalidProblem(format!("expected a {r}x{c} matrix")));
    }
    Ok(CMatrix::from_fn(r, c, |i, j| C::new(rows[i][j][0], rows[i][j][1])))
}

fn one() -> usize {
    1
}

fn is_one(m: &usize) -> bool {
    *m == 1
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConditionEntry {
    pub bracket: Vec<usize>,
    #[serde(default = "one", skip_serializing_if = "is_one")]
    pub multiplicity: usize,
    /// Flag basis, `n × n`; drawn at random when absent. Only allowed with
    /// multiplicity one, since repeated flags are never generic.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub flag: Option<MatrixRows>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProblemFile {
    pub k: usize,
    pub n: usize,
    pub conditions: Vec<ConditionEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tracker: Option<TrackerSettings>,
}

impl ProblemFile {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// Parses `Gr(k,n) [a,b,..]^m [c,d,..] ...`.
    pub fn parse_shorthand(text: &str) -> Result<Self> {
        let bad = || Error::InvalidProblem(format!("cannot parse problem {text:?}"));
        let rest = text.trim().strip_prefix("Gr(").ok_or_else(bad)?;
        let (dims, rest) = rest.split_once(')').ok_or_else(bad)?;
        let (k, n) = dims.split_once(',').ok_or_else(bad)?;
        let k: usize = k.trim().parse().map_err(|_| bad())?;
        let n: usize = n.trim().parse().map_err(|_| bad())?;
        let mut conditions = Vec::new();
        for token in rest.split_whitespace() {
            let (body, power) = match token.split_once('^') {
                Some((b, p)) => (b, p.parse::<usize>().map_err(|_| bad())?),
                None => (token, 1),
            };
            let inner = body
                .strip_prefix('[')
                .and_then(|b| b.strip_suffix(']'))
                .ok_or_else(bad)?;
            let bracket = inner
                .split(',')
                .map(|e| e.trim().parse::<usize>().map_err(|_| bad()))
                .collect::<Result<Vec<_>>>()?;
            conditions.push(ConditionEntry {
                bracket,
                multiplicity: power,
                flag: None,
            });
        }
        Ok(Self {
            k,
            n,
            conditions,
            seed: None,
            tracker: None,
        })
    }

    /// The conditions with multiplicities expanded.
    pub fn brackets(&self) -> Result<Vec<Bracket>> {
        let mut out = Vec::new();
        for c in &self.conditions {
            if c.bracket.len() != self.k {
                return Err(Error::InvalidProblem(format!(
                    "bracket {:?} does not have k = {} entries",
                    c.bracket, self.k
                )));
            }
            if c.flag.is_some() && c.multiplicity != 1 {
                return Err(Error::InvalidProblem("a given flag needs multiplicity 1".into()));
            }
            let b = Bracket::new(c.bracket.clone(), self.n)?;
            out.extend(std::iter::repeat_n(b, c.multiplicity));
        }
        Ok(out)
    }

    /// Expands into an instance. Every condition consumes one random flag
    /// from the seeded generator, so supplying one flag leaves the others
    /// unchanged.
    pub fn instance(&self, seed: u64) -> Result<Instance> {
        let brackets = self.brackets()?;
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let mut flags = Vec::with_capacity(brackets.len());
        for c in &self.conditions {
            for _ in 0..c.multiplicity {
                let drawn = random_flag(self.n, &mut rng);
                flags.push(match &c.flag {
                    Some(rows) => Flag::new(rows_to_matrix(rows, (self.n, self.n))?)
                        .map_err(|e| Error::InvalidProblem(format!("flag for {:?}: {e}", c.bracket)))?,
                    None => drawn,
                });
            }
        }
        Instance::new(brackets, flags, seed)
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolutionFile {
    pub version: String,
    pub seed: u64,
    pub problem: ProblemFile,
    /// The flag bases actually used, one per expanded condition.
    pub flags: Vec<MatrixRows>,
    pub settings: TrackerSettings,
    pub residual_tol: f64,
    /// Orthonormal `n × k` bases of the solution planes.
    pub solutions: Vec<MatrixRows>,
    pub report: VerificationReport,
    pub accounting: Accounting,
}

impl SolutionFile {
    pub fn new(
        problem: &ProblemFile,
        instance: &Instance,
        outcome: &SolveOutcome,
        settings: &TrackerSettings,
        residual_tol: f64,
    ) -> Self {
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            seed: instance.seed,
            problem: problem.clone(),
            flags: instance.flags.iter().map(|f| matrix_to_rows(f.basis())).collect(),
            settings: settings.clone(),
            residual_tol,
            solutions: outcome.solutions.iter().map(matrix_to_rows).collect(),
            report: outcome.report.clone(),
            accounting: outcome.accounting.clone(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)? + "\n")
    }

    /// The instance recorded in the file, with its stored flags.
    pub fn instance(&self) -> Result<Instance> {
        let brackets = self.problem.brackets()?;
        let n = self.problem.n;
        let flags = self
            .flags
            .iter()
            .map(|rows| Flag::new(rows_to_matrix(rows, (n, n))?))
            .collect::<Result<Vec<_>>>()
            .map_err(|e| Error::InvalidProblem(format!("stored flag: {e}")))?;
        Instance::new(brackets, flags, self.seed)
    }

    pub fn solution_matrices(&self) -> Result<Vec<CMatrix>> {
        let shape = (self.problem.n, self.problem.k);
        self.solutions.iter().map(|rows| rows_to_matrix(rows, shape)).collect()
    }

    /// Recomputes the verification report from the stored data.
    pub fn reverify(&self, residual_tol: f64) -> Result<VerificationReport> {
        Ok(verify(&self.solution_matrices()?, &self.instance()?, residual_tol))
    }
}
