//! B_{2,chi} for the real quadratic characters attached to small primes.

use superspecial::arithmetic::{primes_in, real_quadratic_character};
use superspecial::specialvalues::{bernoulli_b2_definitional, bernoulli_b2_even};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>4} {:>5} {:>10}", "p", "D", "B2,chi");
    for p in primes_in(2, 60) {
        let chi = real_quadratic_character(p)?;
        let b = bernoulli_b2_definitional(&chi)?;
        assert_eq!(b, bernoulli_b2_even(&chi)?);
        println!("{p:>4} {:>5} {b:>10}", chi.discriminant());
    }
    Ok(())
}
