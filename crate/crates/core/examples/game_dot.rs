//! Prints the checkerboard game of two brackets as Graphviz.
//!
//! `cargo run --example game_dot | dot -Tsvg > game.svg`

use lrhomotopy::combinatorics::{game_to_dot, initial_checkerboard, Bracket};

fn main() -> lrhomotopy::Result<()> {
    let a = Bracket::new(vec![2, 4], 4)?;
    let root = initial_checkerboard(&a, &a).expect("the two conditions meet");
    print!("{}", game_to_dot(&root)?);
    Ok(())
}
