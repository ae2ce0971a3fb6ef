//! Stern's diatomic sequence and the Stern-Brocot array, for comparison.

use trip_stern::family::cf_from_binary_word;
use trip_stern::stern::{stern_brocot_level, stern_diatomic};
use trip_stern::Result;

fn main() -> Result<()> {
    let terms: Vec<u64> = (1..=16).map(stern_diatomic).collect::<Result<_>>()?;
    println!("a(1..16) = {terms:?}");
    let row: Vec<String> = stern_brocot_level(3)?.iter().map(|r| format!("{}/{}", r.numer(), r.denom())).collect();
    println!("Stern-Brocot level 3: {}", row.join(" "));
    println!("word 0011101 as continued fraction: {:?}", cf_from_binary_word(&[0, 0, 1, 1, 1, 0, 1]));
    Ok(())
}
