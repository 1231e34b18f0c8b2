//! Component count for a single prime, with every term of the formula.
//!
//! `cargo run --example count -- 13`

use superspecial::sigma2_count;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: u64 = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "13".into())
        .parse()?;
    let b = sigma2_count(p)?;
    println!("p = {p} ({})", b.branch);
    if let (Some(ing), Some(t)) = (&b.ingredients, &b.terms) {
        println!("  B2,chi       = {}", ing.bernoulli);
        println!(
            "  h(-p), h(-2p), h(-3p) = {}, {}, {}",
            ing.h_p, ing.h_2p, ing.h_3p
        );
        println!("  (2/p)        = {}", ing.leg2p);
        println!(
            "  terms        = {} + {} + {} + {}",
            t.bernoulli_term, t.h_p_term, t.h_2p_term, t.h_3p_term
        );
    }
    println!("  |Sigma_2(F_p)| = {}", b.total);
    Ok(())
}
