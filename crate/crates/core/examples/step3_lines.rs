//! Every index-p sublattice between sqrt(p) M0 and M0 is isotropic for the
//! reduced Frobenius pairing.

use superspecial::dieudonne::lattice::reduced_frobenius_pairing;
use superspecial::dieudonne::{kernel_condition, lines_in_reduction, make_step1_lattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let lattice = make_step1_lattice(5, 3)?;
    println!(
        "(x, y) mod 5 on (e1, e2): {:?}",
        reduced_frobenius_pairing(&lattice)?
    );
    for line in lines_in_reduction(&lattice)? {
        println!(
            "{:<6} v = {:?}  isotropic: {}",
            line.point.to_string(),
            line.spanning_vector,
            kernel_condition(&line.point, &lattice)?
        );
    }
    Ok(())
}
