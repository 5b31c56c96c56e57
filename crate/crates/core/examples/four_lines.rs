//! Lines meeting four general lines in projective 3-space: the two
//! solution planes of `[2,4]^4` in Gr(2,4), with their verification.

use lrhomotopy::combinatorics::Bracket;
use lrhomotopy::solver::{solve, Instance, SolveOptions};

fn main() -> lrhomotopy::Result<()> {
    let b = Bracket::new(vec![2, 4], 4)?;
    let instance = Instance::with_random_flags(vec![b; 4], 42)?;
    let out = solve(&instance, &SolveOptions::default())?;
    for (i, h) in out.solutions.iter().enumerate() {
        println!("solution {i}:{h:.6}");
    }
    let r = &out.report;
    println!(
        "pass {}, max residual {:.2e}, min distance {:.2e}",
        r.pass,
        r.max_residual,
        r.min_distance.unwrap_or(f64::NAN)
    );
    println!("{}", out.accounting.summary());
    Ok(())
}
