//! Level n+1 read off the n-factor matrix generating function, compared with the tree.

use trip_stern::stern::{generating_function_coefficients, level, level_via_generating_function};
use trip_stern::{Result, TripMap, Triple};

fn main() -> Result<()> {
    let map: TripMap = "e,13,12".parse()?;
    let coeffs = generating_function_coefficients(&map, 3);
    println!("{} coefficients for level 4; x^0 coefficient:\n{}", coeffs.len(), coeffs[0]);
    for n in 1..=8 {
        let from_gf = level_via_generating_function(&map, n)?;
        let mut direct = level(&map, n + 1, &Triple::ones())?.triples;
        direct.sort();
        println!("level {}: {} triples, same multiset: {}", n + 1, direct.len(), direct == from_gf);
    }
    Ok(())
}
