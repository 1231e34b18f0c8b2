//! Scramble the standard self-dual lattice by a random Z[sqrt p]-automorphism
//! and recover a basis in which the pairing has its split shape again.

use rand::rngs::StdRng;
use rand::SeedableRng;
use superspecial::dieudonne::lattice::lagrangian_pairings;
use superspecial::dieudonne::{lagrangian_basis, make_step1_lattice, RAutomorphism};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut rng = StdRng::seed_from_u64(2024);
    let base = make_step1_lattice(7, 3)?;
    for _ in 0..3 {
        let t = RAutomorphism::random(base.ring(), &mut rng);
        let scrambled = base.transform(&t)?;
        let basis = lagrangian_basis(&scrambled)?;
        println!(
            "det T = {:?}  e1 = {:?}  e2 = {:?}  pairings = {:?}",
            t.determinant().coords(),
            basis.e1,
            basis.e2,
            lagrangian_pairings(&scrambled, &basis.e1, &basis.e2)
        );
    }
    Ok(())
}
