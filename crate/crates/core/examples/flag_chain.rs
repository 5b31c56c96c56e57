//! The moving flags of the checkerboard game for n = 4: the stage bases and
//! one interpolating family evaluated along its parameter.

use lrhomotopy::linalg::{flag_chain, C};

fn main() {
    let chain = flag_chain(4);
    for s in 0..chain.stages.len() {
        println!("stage {s}:{}", chain.stage(s).map(|z| z.re));
    }
    for t in [0.0, 0.5, 1.0] {
        println!("family 3 at t = {t}:{}", chain.family(3, C::new(t, 0.0)).map(|z| z.re));
    }
}
