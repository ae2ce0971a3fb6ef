//! Level minima: which side of the tree carries the minimum.

use trip_stern::analysis::{verify_min_path, MinSide};
use trip_stern::reference::{parse_maps, MIN_BOTH, MIN_LEFT, MIN_RIGHT};
use trip_stern::{Result, Triple};

fn main() -> Result<()> {
    let seed: Triple<i128> = Triple::ones();
    for (side, names) in [(MinSide::Left, &MIN_LEFT[..]), (MinSide::Right, &MIN_RIGHT[..]), (MinSide::Both, &MIN_BOTH[..])] {
        for map in parse_maps(names) {
            let r = verify_min_path(&map, side, 15, &seed)?;
            println!("{side:?} {map:<12} holds={} minimum always 1: {}", r.all_hold(), r.min_always("1"));
        }
    }
    Ok(())
}
