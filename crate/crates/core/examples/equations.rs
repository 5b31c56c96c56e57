//! Plücker-linear equations of a Schubert condition, checked against the
//! rank-minor formulation on a member and on a generic plane.

use lrhomotopy::combinatorics::Bracket;
use lrhomotopy::equations::{minor_oracle_residual, SchubertCondition};
use lrhomotopy::linalg::{
    complex_gaussian, not_leq_set, orthonormal_columns, plucker_vector, random_flag, random_matrix, CMatrix, C,
};
use nalgebra::DVector;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> lrhomotopy::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let alpha = Bracket::new(vec![3, 4, 7, 8], 8)?;
    let below = not_leq_set(&alpha);
    println!("{} brackets are not below {alpha}:", below.len());
    for b in &below {
        print!(" {b}");
    }
    println!();

    let cond = SchubertCondition::new(alpha.clone(), random_flag(8, &mut rng))?;
    // column j of F⁻¹H supported on the first α_j rows
    let e = CMatrix::from_fn(8, 4, |i, j| {
        if i < alpha.entries()[j] {
            complex_gaussian(&mut rng)
        } else {
            C::new(0.0, 0.0)
        }
    });
    let member = cond.flag.basis() * e;
    let generic = random_matrix(8, 4, &mut rng);
    for (name, h) in [("member", member), ("generic", generic)] {
        let p = DVector::from_vec(plucker_vector(&orthonormal_columns(&h)));
        let linear = (cond.coefficients() * p).camax();
        let minors = minor_oracle_residual(&h, &cond).into_iter().fold(0.0, f64::max);
        println!("{name}: Plücker residual {linear:.2e}, rank-minor residual {minors:.2e}");
    }
    Ok(())
}
