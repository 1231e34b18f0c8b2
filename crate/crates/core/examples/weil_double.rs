//! Doubling a Frobenius with F^2 = -p: the polarization kernel splits into
//! two equal blocks.

use superspecial::dieudonne::doubling::standard_doubling_input;
use superspecial::dieudonne::weil_double;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for c in 1..=3 {
        for p in [5, 7, 13] {
            let (phi, gram) = standard_doubling_input(c, p, 3)?;
            let d = weil_double(&phi, &gram, p, 3)?;
            println!(
                "c = {c}, p = {p:>2}: dim {}, kernel {} = {} + {}",
                d.dimension(),
                d.kernel.total,
                d.kernel.blocks[0],
                d.kernel.blocks[1]
            );
        }
    }
    Ok(())
}
