//! End-to-end solving: resolve the tournament with random unitriangular
//! flags, move the root solutions to the user's flags, refine and verify.

mod finish;
mod game;
mod verify;

use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use serde::{Deserialize, Serialize};

use crate::combinatorics::{build_tournament, is_schubert_problem, Bracket, Tournament};
use crate::equations::SchubertCondition;
use crate::error::{Error, Result};
use crate::linalg::{complex_gaussian, null_vector, orthonormal_columns, random_flag, random_matrix, CMatrix, Flag, C};
use crate::tracker::{refine, track_bounded, PathStatus, Segment, TrackerSettings};

pub use finish::FlagHomotopy;
pub use game::{
    checkerboard_homotopy, count_duplicates, random_a, resolve_tournament, root_points, seed_leaf, splice, GameFlags,
    LevelConditions, NodeDeficit, PathStats, Resolution, A_SCALE, DUPLICATE_TOL, MAX_SOLUTIONS, SWAP_PIVOT_TOL,
};
pub use verify::{normalized_plucker, projective_distance, verify, VerificationReport, DISTANCE_TOL, RESIDUAL_TOL};

/// A Schubert problem with its flags.
#[derive(Clone, Debug)]
pub struct Instance {
    pub k: usize,
    pub n: usize,
    pub brackets: Vec<Bracket>,
    pub flags: Vec<Flag>,
    pub seed: u64,
}

impl Instance {
    pub fn new(brackets: Vec<Bracket>, flags: Vec<Flag>, seed: u64) -> Result<Self> {
        let first = brackets
            .first()
            .ok_or_else(|| Error::InvalidProblem("no conditions".into()))?;
        let (k, n) = (first.k(), first.n());
        if k == 0 || k >= n {
            return Err(Error::InvalidProblem(format!("Gr({k},{n}) is a point")));
        }
        if !is_schubert_problem(&brackets, k, n)? {
            return Err(Error::InvalidProblem("codimensions do not sum to k(n-k)".into()));
        }
        if flags.len() != brackets.len() {
            return Err(Error::InvalidProblem(format!(
                "{} flags for {} conditions",
                flags.len(),
                brackets.len()
            )));
        }
        if let Some(f) = flags.iter().find(|f| f.n() != n) {
            return Err(Error::InvalidProblem(format!(
                "flag of size {} in dimension {n}",
                f.n()
            )));
        }
        Ok(Self {
            k,
            n,
            brackets,
            flags,
            seed,
        })
    }

    /// Flags drawn from a generator seeded with `seed`.
    pub fn with_random_flags(brackets: Vec<Bracket>, seed: u64) -> Result<Self> {
        let n = brackets
            .first()
            .ok_or_else(|| Error::InvalidProblem("no conditions".into()))?
            .n();
        let mut rng = ChaCha20Rng::seed_from_u64(seed);
        let flags = brackets.iter().map(|_| random_flag(n, &mut rng)).collect();
        Self::new(brackets, flags, seed)
    }

    pub fn conditions(&self) -> Vec<SchubertCondition> {
        self.brackets
            .iter()
            .zip(&self.flags)
            .map(|(b, f)| SchubertCondition {
                bracket: b.clone(),
                flag: f.clone(),
            })
            .collect()
    }
}

#[derive(Clone, Debug)]
pub struct SolveOptions {
    pub settings: TrackerSettings,
    pub residual_tol: f64,
    pub max_attempts: usize,
    /// Worker threads; `None` uses the global pool.
    pub threads: Option<usize>,
}

impl Default for SolveOptions {
    fn default() -> Self {
        Self {
            settings: TrackerSettings::default(),
            residual_tol: RESIDUAL_TOL,
            max_attempts: 3,
            threads: None,
        }
    }
}

/// What happened in one attempt.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct AttemptLog {
    pub attempt: usize,
    pub paths_tracked: usize,
    pub path_failures: usize,
    pub final_paths: usize,
    pub final_failures: usize,
    pub deficit: Option<NodeDeficit>,
    pub error: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Accounting {
    pub expected: String,
    pub attempts: Vec<AttemptLog>,
}

impl Accounting {
    pub fn total_failures(&self) -> usize {
        self.attempts.iter().map(|a| a.path_failures + a.final_failures).sum()
    }

    pub fn summary(&self) -> String {
        let mut out = format!("expected {} solutions", self.expected);
        for a in &self.attempts {
            out.push_str(&format!(
                "\n  attempt {}: {} paths, {} failures; final {} paths, {} failures",
                a.attempt, a.paths_tracked, a.path_failures, a.final_paths, a.final_failures
            ));
            if let Some(e) = &a.error {
                out.push_str(&format!("; {e}"));
            }
        }
        out
    }
}

#[derive(Clone, Debug)]
pub struct SolveOutcome {
    /// Orthonormal `n × k` bases of the solution planes.
    pub solutions: Vec<CMatrix>,
    pub report: VerificationReport,
    pub accounting: Accounting,
}

/// Solves `instance`, retrying with fresh random choices on any deficit.
/// Errors only when every attempt fails to produce the expected number of
/// solutions; a returned outcome may still carry a failing report.
pub fn solve(instance: &Instance, options: &SolveOptions) -> Result<SolveOutcome> {
    match options.threads {
        Some(t) => rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build()
            .map_err(|e| Error::InvalidProblem(format!("thread pool: {e}")))?
            .install(|| solve_in_pool(instance, options)),
        None => solve_in_pool(instance, options),
    }
}

fn solve_in_pool(instance: &Instance, options: &SolveOptions) -> Result<SolveOutcome> {
    let kept: Vec<usize> = (0..instance.brackets.len())
        .filter(|&i| instance.brackets[i].codim() > 0)
        .collect();
    let brackets: Vec<Bracket> = kept.iter().map(|&i| instance.brackets[i].clone()).collect();
    let flags: Vec<CMatrix> = kept.iter().map(|&i| instance.flags[i].basis().clone()).collect();
    let tournament = build_tournament(&instance.brackets)?;
    let mut accounting = Accounting {
        expected: tournament.count().to_string(),
        attempts: Vec::new(),
    };
    let mut last: Option<SolveOutcome> = None;
    let mut last_error = None;
    for attempt in 0..options.max_attempts.max(1) {
        let mut rng = ChaCha20Rng::seed_from_u64(instance.seed);
        rng.set_stream(attempt as u64 + 1);
        let mut log = AttemptLog {
            attempt,
            ..Default::default()
        };
        let result = match brackets.len() {
            1 | 2 => base_case(&brackets, &flags),
            _ => attempt_tournament(&tournament, &brackets, &flags, options, &mut rng, &mut log),
        };
        match result {
            Ok(solutions) => {
                let report = verify(&solutions, instance, options.residual_tol);
                let pass = report.pass;
                if !pass {
                    log.error = Some(format!("verification: {}", report.failures.join("; ")));
                }
                accounting.attempts.push(log);
                last = Some(SolveOutcome {
                    solutions,
                    report,
                    accounting: accounting.clone(),
                });
                if pass {
                    break;
                }
            }
            Err(e) => {
                log.error = Some(e.to_string());
                accounting.attempts.push(log);
                last_error = Some(e);
            }
        }
    }
    match last {
        Some(mut outcome) => {
            outcome.accounting = accounting;
            Ok(outcome)
        }
        None => Err(match last_error {
            Some(Error::InvalidProblem(m)) => Error::InvalidProblem(m),
            _ => Error::Deficit(accounting.summary()),
        }),
    }
}

fn attempt_tournament(
    t: &Tournament,
    brackets: &[Bracket],
    user_flags: &[CMatrix],
    options: &SolveOptions,
    rng: &mut ChaCha20Rng,
    log: &mut AttemptLog,
) -> Result<Vec<CMatrix>> {
    if t.root.is_none() {
        return Ok(Vec::new());
    }
    let n = t.n;
    let flags = GameFlags::random(brackets, rng)?;
    let resolution = match resolve_tournament(t, &flags, &options.settings) {
        Ok(r) => r,
        Err((e, stats, deficit)) => {
            log.paths_tracked = stats.tracked;
            log.path_failures = stats.failures;
            log.deficit = deficit;
            return Err(e);
        }
    };
    log.paths_tracked = resolution.stats.tracked;
    log.path_failures = resolution.stats.failures;

    // Solver frame to the first user flag: the standard flag becomes E¹.
    let e1 = orthonormal_columns(&user_flags[0]);
    let root = crate::linalg::flag_chain(n).stage(0);
    let mut starts = vec![e1.clone(), &e1 * &root];
    let mut prod = CMatrix::identity(n, n);
    for j in 3..=brackets.len() {
        prod = &prod * &flags.a[j];
        starts.push(&e1 * &prod * &root);
    }
    let chart = orthonormal_columns(&random_matrix(n, n, rng));
    let g = complex_gaussian(rng);
    let gamma = g / g.norm();
    let hom = FlagHomotopy::new(brackets, &starts, user_flags, chart, gamma);
    let points = root_points(t, &resolution.root_solutions);
    let starts_z: Vec<Vec<C>> = points.iter().map(|h| hom.to_chart(&(&e1 * h))).collect::<Result<_>>()?;
    use rayon::prelude::*;
    let ends: Vec<Option<CMatrix>> = starts_z
        .par_iter()
        .map(|z| track_to_user_flags(&hom, z, &options.settings))
        .collect();
    log.final_paths = ends.len();
    log.final_failures = ends.iter().filter(|e| e.is_none()).count();
    if log.final_failures > 0 {
        return Err(Error::Deficit(format!(
            "{} of {} paths to the user flags failed",
            log.final_failures,
            ends.len()
        )));
    }
    Ok(ends.into_iter().flatten().collect())
}

/// Coordinates larger than this trigger a change of chart.
pub const CHART_BOUND: f64 = 4.0;
/// Most chart changes along one path.
pub const MAX_RECHARTS: usize = 100;

/// Tracks one root solution to the user's flags, re-centering the chart
/// whenever the point drifts toward its boundary, then refines it.
fn track_to_user_flags(hom: &FlagHomotopy, z0: &[C], settings: &TrackerSettings) -> Option<CMatrix> {
    let mut local = hom.clone();
    let mut z = z0.to_vec();
    let mut t = 0.0;
    for _ in 0..=MAX_RECHARTS {
        match track_bounded(&local, &z, t, 1.0, settings, CHART_BOUND) {
            Segment::Finished(r) => {
                if r.status != PathStatus::Success {
                    return None;
                }
                let (z, _) = refine(&local, &r.endpoint, 1.0, settings);
                return Some(orthonormal_columns(&local.from_chart(&z)));
            }
            Segment::Escaped { y, t: reached, .. } => {
                let h = local.from_chart(&y);
                local = local.recentered(&h);
                z = local.to_chart(&h).ok()?;
                t = reached;
            }
        }
    }
    None
}

/// One condition of full codimension, or two dual conditions:
/// the singleton `⊕ᵢ (E¹_{α_i} ∩ E²_{β_{k+1−i}})`; otherwise no solutions.
fn base_case(brackets: &[Bracket], flags: &[CMatrix]) -> Result<Vec<CMatrix>> {
    let b = &brackets[0];
    let k = b.k();
    if brackets.len() == 1 {
        return Ok(vec![orthonormal_columns(&flags[0].columns(0, k).into_owned())]);
    }
    let other = &brackets[1];
    if *other != b.dual() {
        return Ok(Vec::new());
    }
    let mut cols = Vec::with_capacity(k);
    for i in 0..k {
        let a = b.entries()[i];
        let c = other.entries()[k - 1 - i];
        let u = flags[0].columns(0, a).into_owned();
        let v = flags[1].columns(0, c).into_owned();
        let joined = crate::linalg::hcat(&u, &(-v));
        let (x, smallest, second) = null_vector(&joined);
        if !(smallest < 1e-10) || !(second > 1e-10) {
            return Err(Error::NonGeneric("flags are not in general position".into()));
        }
        cols.push(u * x.rows(0, a));
    }
    Ok(vec![orthonormal_columns(&CMatrix::from_columns(&cols))])
}

#[cfg(test)]
mod tests;
