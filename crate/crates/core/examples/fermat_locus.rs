//! Points of a^(p+1) + b^(p+1) = 0 on the projective line: p + 1 of them over
//! F_{p^2}, and over F_p exactly when -1 is a square.

use superspecial::dieudonne::fermat_locus;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    for p in [2u64, 3, 5, 7, 13] {
        let over_p: Vec<String> = fermat_locus(p, 1)?.iter().map(|x| x.to_string()).collect();
        let over_p2 = fermat_locus(p, 2)?;
        println!(
            "p = {p:>2}: {:>2} points over F_p^2; over F_p: {}",
            over_p2.len(),
            if over_p.is_empty() {
                "none".to_string()
            } else {
                over_p.join(", ")
            }
        );
    }
    Ok(())
}
