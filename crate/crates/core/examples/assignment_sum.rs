//! Spherical functions of the trisymmetric pair as sums over edge assignments,
//! compared with the matrix element of the tensor representation.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use traincat::surfaces::spherical_assignment_sum_brute;
use traincat::{rep_matrix_element, spherical_assignment_sum, surface_from_tuple, CoeffTensor, ColoredPerm};

fn main() -> traincat::Result<()> {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let xi = CoeffTensor::random(&mut rng, &[2, 2, 2]);
    let n = 4;
    let tuple: Vec<ColoredPerm> = ["(1 2)(3 4)", "(1 3)", "(2 3 4)"].iter().map(|s| s.parse()).collect::<Result<_, _>>()?;

    let s = surface_from_tuple(&tuple, 0, 0, Some(n))?;
    let contracted = spherical_assignment_sum(&s, &xi)?;
    let brute = spherical_assignment_sum_brute(&s, &xi)?;
    let tensor = rep_matrix_element(&xi, n, &tuple)?;
    println!("contracted {contracted:.12}");
    println!("brute      {brute:.12}");
    println!("tensor     {tensor:.12}");
    println!("|difference| = {:.3e}", (contracted - tensor).norm());
    Ok(())
}
