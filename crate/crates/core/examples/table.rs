//! CSV table over a prime range, computed in parallel with a shared cache.

use rayon::prelude::*;
use superspecial::arithmetic::primes_in;
use superspecial::record::{OutputRecord, CSV_HEADER};
use superspecial::sigmacount::sigma2_count_with_cache;
use superspecial::specialvalues::ClassNumberCache;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let cache = ClassNumberCache::new();
    let rows = primes_in(2, 150)
        .par_iter()
        .map(|&p| sigma2_count_with_cache(p, &cache))
        .collect::<Result<Vec<_>, _>>()?;
    println!("{CSV_HEADER}");
    for b in &rows {
        println!("{}", OutputRecord::try_from(b)?.to_csv_row());
    }
    eprintln!("{} class numbers cached", cache.len());
    Ok(())
}
