//! Counts solutions of a Schubert problem with the checkerboard tournament.
//!
//! `cargo run --example count -- "Gr(3,7) [4,6,7]^10 [3,6,7]"`

use lrhomotopy::cli::ProblemFile;
use lrhomotopy::combinatorics::build_tournament;

fn main() -> lrhomotopy::Result<()> {
    let text = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "Gr(4,8) [3,6,7,8]^6 [3,4,7,8]".into());
    let problem = ProblemFile::parse_shorthand(&text)?;
    let t = build_tournament(&problem.brackets()?)?;
    println!("{text}: {} solutions", t.count());
    println!("{} levels, level sizes {:?}", t.levels(), t.level_sizes());
    Ok(())
}
