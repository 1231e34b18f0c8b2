//! Which dimensions are known to carry an F_p-rational component, and which
//! carry a polarized variety with Frobenius squaring to -p.

use superspecial::sigmacount::{component_existence, sigma_prime_existence};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [5u64, 7, 11, 13] {
        for n in 1..=6 {
            let comp = component_existence(n, p)?;
            let prime = if n % 2 == 0 {
                sigma_prime_existence(n, p)?.to_string()
            } else {
                "-".into()
            };
            println!("p = {p:>2}, n = {n}: component {comp}; F^2 = -p: {prime}");
        }
    }
    Ok(())
}
