//! Solves a problem into a JSON solution file and re-verifies it from the
//! stored data alone.

use lrhomotopy::cli::{cmd_solve, ProblemFile, SolutionFile};
use lrhomotopy::solver::RESIDUAL_TOL;

fn main() -> lrhomotopy::Result<()> {
    let problem = ProblemFile::parse_shorthand("Gr(4,8) [3,4,7,8]^4")?;
    let (file, elapsed) = cmd_solve(&problem, 3, Some(1), RESIDUAL_TOL)?;
    let json = file.to_json()?;
    println!(
        "{} solutions in {elapsed:.2?}, {} bytes of JSON",
        file.solutions.len(),
        json.len()
    );
    let reread = SolutionFile::from_json(&json)?;
    let report = reread.reverify(reread.residual_tol)?;
    println!(
        "re-verified: pass {}, max residual {:.2e}",
        report.pass, report.max_residual
    );
    assert_eq!(reread.to_json()?, json);
    Ok(())
}
