//! Predictor-corrector path tracking for square or overdetermined
//! homotopies `H(y, t) = 0` along a real parameter segment.
//!
//! The predictor is classical Runge-Kutta on the Davidenko equation
//! `J_y ẏ = −J_t`, solved in the least-squares sense; the corrector is
//! Gauss-Newton at fixed `t`.

use nalgebra::DVector;

use crate::equations::ConditionSystem;
use crate::linalg::{lstsq, CMatrix, C};

/// A polynomial homotopy with Jacobians.
pub trait Homotopy: Sync {
    fn equation_count(&self) -> usize;
    fn variable_count(&self) -> usize;
    fn evaluate(&self, y: &[C], t: C) -> DVector<C>;
    /// Value, `∂H/∂y` and `∂H/∂t`.
    fn evaluate_with_jacobian(&self, y: &[C], t: C) -> (DVector<C>, CMatrix, DVector<C>);
}

impl Homotopy for ConditionSystem {
    fn equation_count(&self) -> usize {
        ConditionSystem::equation_count(self)
    }

    fn variable_count(&self) -> usize {
        ConditionSystem::variable_count(self)
    }

    fn evaluate(&self, y: &[C], t: C) -> DVector<C> {
        ConditionSystem::evaluate(self, y, t)
    }

    fn evaluate_with_jacobian(&self, y: &[C], t: C) -> (DVector<C>, CMatrix, DVector<C>) {
        ConditionSystem::evaluate_with_jacobian(self, y, t)
    }
}

#[derive(Clone, Debug, PartialEq, serde::Serialize, serde::Deserialize)]
#[serde(default)]
pub struct TrackerSettings {
    pub initial_step: f64,
    pub min_step: f64,
    pub max_step: f64,
    /// Newton updates below this, relative to `y` componentwise with floor 1,
    /// count as converged.
    pub corrector_tol: f64,
    pub max_corrector_iters: usize,
    /// Updates that stop shrinking below this (relative) are taken as the
    /// roundoff floor and accepted.
    pub stagnation_tol: f64,
    pub step_increase: f64,
    /// Consecutive accepted steps before the step grows.
    pub increase_after: usize,
    pub step_decrease: f64,
    pub refine_tol: f64,
    pub max_refine_iters: usize,
    pub max_steps: usize,
}

impl Default for TrackerSettings {
    fn default() -> Self {
        Self {
            initial_step: 0.05,
            min_step: 1e-8,
            max_step: 0.1,
            corrector_tol: 1e-10,
            max_corrector_iters: 4,
            stagnation_tol: 1e-6,
            step_increase: 1.5,
            increase_after: 3,
            step_decrease: 0.5,
            refine_tol: 1e-13,
            max_refine_iters: 10,
            max_steps: 100_000,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum PathStatus {
    Success,
    /// The step fell below the minimum, or the step budget ran out.
    MinStepReached,
    /// The corrector grew its updates at the minimum step.
    CorrectorDiverged,
    NonFiniteValue,
}

#[derive(Clone, Debug)]
pub struct PathResult {
    pub status: PathStatus,
    pub endpoint: Vec<C>,
    pub steps_taken: usize,
    pub final_residual: f64,
    /// Last accepted parameter value.
    pub t_reached: f64,
    /// Step size at the end of tracking.
    pub last_step: f64,
}

impl PathResult {
    pub fn is_success(&self) -> bool {
        self.status == PathStatus::Success
    }
}

fn norm(v: &[C]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

fn finite(v: &[C]) -> bool {
    v.iter().all(|z| z.re.is_finite() && z.im.is_finite())
}

fn axpy(y: &[C], h: f64, d: &DVector<C>) -> Vec<C> {
    y.iter().zip(d.iter()).map(|(a, b)| a + b * h).collect()
}

/// Least-squares solve of `J x = b` after scaling column `i` by
/// `max(1, |y_i|)`. Returns `x` and its size relative to
/// `y`, componentwise with floor 1.
fn scaled_solve(j: &CMatrix, b: &DVector<C>, y: &[C]) -> Option<(DVector<C>, f64)> {
    let scales: Vec<f64> = y.iter().map(|z| z.norm().max(1.0)).collect();
    let mut a = j.clone();
    let rhs = b;
    for (mut col, s) in a.column_iter_mut().zip(&scales) {
        col.scale_mut(*s);
    }
    let u = lstsq(&a, rhs).ok().filter(|u| finite(u.as_slice()))?;
    let size = norm(u.as_slice());
    let x = DVector::from_iterator(u.len(), u.iter().zip(&scales).map(|(v, s)| v * *s));
    Some((x, size))
}

/// Tangent `ẏ` at `(y, t)`.
fn tangent<H: Homotopy + ?Sized>(hom: &H, y: &[C], t: f64) -> Option<DVector<C>> {
    let (_, jy, jt) = hom.evaluate_with_jacobian(y, C::new(t, 0.0));
    scaled_solve(&jy, &(-jt), y).map(|(d, _)| d)
}

fn rk4<H: Homotopy + ?Sized>(hom: &H, y: &[C], t: f64, h: f64) -> Option<Vec<C>> {
    let k1 = tangent(hom, y, t)?;
    let k2 = tangent(hom, &axpy(y, h / 2.0, &k1), t + h / 2.0)?;
    let k3 = tangent(hom, &axpy(y, h / 2.0, &k2), t + h / 2.0)?;
    let k4 = tangent(hom, &axpy(y, h, &k3), t + h)?;
    let sum = (k1 + k2 * C::new(2.0, 0.0) + k3 * C::new(2.0, 0.0) + k4) / C::new(6.0, 0.0);
    Some(axpy(y, h, &sum))
}

enum Correction {
    Converged(Vec<C>),
    Slow,
    Diverged,
    NonFinite,
}

fn correct<H: Homotopy + ?Sized>(hom: &H, mut y: Vec<C>, t: f64, s: &TrackerSettings) -> Correction {
    let mut last = f64::INFINITY;
    let mut prev = y.clone();
    for _ in 0..s.max_corrector_iters {
        let (f, jy, _) = hom.evaluate_with_jacobian(&y, C::new(t, 0.0));
        if !finite(f.as_slice()) {
            return Correction::NonFinite;
        }
        let Some((delta, size)) = scaled_solve(&jy, &(-f), &y) else {
            return Correction::Diverged;
        };
        if size > last {
            return if last <= s.stagnation_tol {
                Correction::Converged(prev)
            } else {
                Correction::Diverged
            };
        }
        prev = y.clone();
        y = axpy(&y, 1.0, &delta);
        if size <= s.corrector_tol {
            return Correction::Converged(y);
        }
        last = size;
    }
    Correction::Slow
}

fn residual<H: Homotopy + ?Sized>(hom: &H, y: &[C], t: f64) -> f64 {
    hom.evaluate(y, C::new(t, 0.0))
        .iter()
        .map(|z| z.norm())
        .fold(0.0, f64::max)
}

/// Newton at fixed `t` until updates drop below the refinement tolerance
/// or the iteration budget is spent. Returns the point and its residual.
pub fn refine<H: Homotopy + ?Sized>(hom: &H, y: &[C], t: f64, s: &TrackerSettings) -> (Vec<C>, f64) {
    let mut best = (y.to_vec(), residual(hom, y, t));
    let mut cur = y.to_vec();
    for _ in 0..s.max_refine_iters {
        let (f, jy, _) = hom.evaluate_with_jacobian(&cur, C::new(t, 0.0));
        let Some((delta, size)) = scaled_solve(&jy, &(-f), &cur) else {
            break;
        };
        cur = axpy(&cur, 1.0, &delta);
        if !finite(&cur) {
            break;
        }
        let r = residual(hom, &cur, t);
        if r <= best.1 {
            best = (cur.clone(), r);
        }
        if size <= s.refine_tol {
            break;
        }
    }
    best
}

/// Tracks the solution starting at `y0` for `t = t0` to `t = t1`, then
/// refines the endpoint.
pub fn track<H: Homotopy + ?Sized>(hom: &H, y0: &[C], t0: f64, t1: f64, s: &TrackerSettings) -> PathResult {
    match track_bounded(hom, y0, t0, t1, s, f64::INFINITY) {
        Segment::Finished(r) => r,
        Segment::Escaped { .. } => unreachable!("unbounded tracking cannot escape"),
    }
}

/// Result of [`track_bounded`].
#[derive(Clone, Debug)]
pub enum Segment {
    Finished(PathResult),
    /// An accepted point left the box `|y_i| ≤ bound` before `t1`.
    Escaped {
        y: Vec<C>,
        t: f64,
        steps: usize,
    },
}

/// Like [`track`], but stops at the first accepted point with a
/// coordinate larger than `bound`, so the caller can change coordinates.
pub fn track_bounded<H: Homotopy + ?Sized>(
    hom: &H,
    y0: &[C],
    t0: f64,
    t1: f64,
    s: &TrackerSettings,
    bound: f64,
) -> Segment {
    let dir = (t1 - t0).signum();
    let span = (t1 - t0).abs();
    let mut y = y0.to_vec();
    let mut done = 0.0;
    let mut step = s.initial_step.min(s.max_step);
    let mut streak = 0;
    let mut steps = 0;
    let fail = |status, y: Vec<C>, steps, t: f64, step: f64| PathResult {
        final_residual: if finite(&y) {
            residual(hom, &y, t)
        } else {
            f64::INFINITY
        },
        status,
        endpoint: y,
        steps_taken: steps,
        t_reached: t,
        last_step: step,
    };
    if !finite(&y) {
        return Segment::Finished(fail(PathStatus::NonFiniteValue, y, 0, t0, step));
    }
    while done < span {
        if steps >= s.max_steps {
            return Segment::Finished(fail(PathStatus::MinStepReached, y, steps, t0 + dir * done, step));
        }
        steps += 1;
        let h = step.min(span - done);
        let t = t0 + dir * done;
        let t_next = if h == span - done { t1 } else { t + dir * h };
        let outcome = match rk4(hom, &y, t, t_next - t) {
            Some(pred) => correct(hom, pred, t_next, s),
            None => Correction::Diverged,
        };
        match outcome {
            Correction::Converged(next) => {
                y = next;
                done = if t_next == t1 { span } else { done + h };
                if done < span && y.iter().any(|z| z.norm() > bound) {
                    return Segment::Escaped { y, t: t_next, steps };
                }
                streak += 1;
                if streak >= s.increase_after {
                    step = (step * s.step_increase).min(s.max_step);
                    streak = 0;
                }
            }
            Correction::NonFinite => return Segment::Finished(fail(PathStatus::NonFiniteValue, y, steps, t, step)),
            other => {
                streak = 0;
                if step <= s.min_step {
                    let status = match other {
                        Correction::Diverged => PathStatus::CorrectorDiverged,
                        _ => PathStatus::MinStepReached,
                    };
                    return Segment::Finished(fail(status, y, steps, t, step));
                }
                step = (step * s.step_decrease).max(s.min_step);
            }
        }
    }
    let (endpoint, final_residual) = refine(hom, &y, t1, s);
    Segment::Finished(PathResult {
        status: PathStatus::Success,
        endpoint,
        steps_taken: steps,
        final_residual,
        t_reached: t1,
        last_step: step,
    })
}
