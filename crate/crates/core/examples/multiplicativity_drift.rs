//! Finite-N failure of multiplicativity for the tensor representation,
//! shrinking as N grows.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use traincat::tensor::{drift_deviation, DriftCase};

fn main() -> traincat::Result<()> {
    for seed in 0..6 {
        let case = DriftCase::random(&mut ChaCha8Rng::seed_from_u64(seed));
        print!("seed {seed} p={} q={} levels ({},{},{}):", case.p, case.q, case.alpha, case.beta, case.gamma);
        for n in [8, 10, 12, 16, 20] {
            print!(" N={n} {:.2e}", drift_deviation(&case, n)?);
        }
        println!();
    }
    Ok(())
}
