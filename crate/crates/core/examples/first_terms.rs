//! First levels of the (e,e,e) tree and a few individual terms by index.

use trip_stern::stern::{level, trip_stern_term};
use trip_stern::{Result, TripMap, Triple};

fn main() -> Result<()> {
    let map = TripMap::triangle();
    let seed: Triple<i128> = Triple::ones();
    for n in 1..=4 {
        let lvl = level(&map, n, &seed)?;
        let row: Vec<String> = lvl.triples.iter().map(ToString::to_string).collect();
        println!("level {n}: {}", row.join(" "));
    }
    for m in [1u128, 2, 3, 5, 12, 1000] {
        println!("b_{m} = {}", trip_stern_term(&map, m, &seed)?);
    }
    Ok(())
}
