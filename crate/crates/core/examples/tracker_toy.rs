//! The path tracker on a small system: `y² = 1 + 3t` carries ±1 at t = 0
//! to ±2 at t = 1.

use lrhomotopy::linalg::{CMatrix, C};
use lrhomotopy::tracker::{track, Homotopy, TrackerSettings};
use nalgebra::DVector;

struct Square;

impl Homotopy for Square {
    fn equation_count(&self) -> usize {
        1
    }

    fn variable_count(&self) -> usize {
        1
    }

    fn evaluate(&self, y: &[C], t: C) -> DVector<C> {
        DVector::from_element(1, y[0] * y[0] - (t * 3.0 + 1.0))
    }

    fn evaluate_with_jacobian(&self, y: &[C], t: C) -> (DVector<C>, CMatrix, DVector<C>) {
        (
            self.evaluate(y, t),
            CMatrix::from_element(1, 1, y[0] * 2.0),
            DVector::from_element(1, C::new(-3.0, 0.0)),
        )
    }
}

fn main() {
    let settings = TrackerSettings::default();
    for start in [1.0, -1.0] {
        let r = track(&Square, &[C::new(start, 0.0)], 0.0, 1.0, &settings);
        println!(
            "{start:+} -> {:.12} ({:?}, {} steps, residual {:.1e})",
            r.endpoint[0], r.status, r.steps_taken, r.final_residual
        );
    }
}
