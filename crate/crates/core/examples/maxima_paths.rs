//! Level maxima and the paths that carry them, for each tabulated path list.

use trip_stern::analysis::{maxima_sequence, verify_max_path, PathPolicy};
use trip_stern::reference::{parse_maps, MAX_ALTERNATE, MAX_LEFT, MAX_RIGHT};
use trip_stern::{Result, Triple};

fn main() -> Result<()> {
    let seed: Triple<i128> = Triple::ones();
    let lists = [
        (PathPolicy::AlwaysRight, &MAX_RIGHT[..]),
        (PathPolicy::AlwaysLeft, &MAX_LEFT[..]),
        (PathPolicy::AlternateLeftFirst, &MAX_ALTERNATE[..]),
    ];
    for (policy, names) in lists {
        for map in parse_maps(names) {
            let report = verify_max_path(&map, policy, 15, &seed)?;
            let maxima = maxima_sequence(&map, 10, &seed)?;
            let shown: Vec<String> = maxima.iter().map(ToString::to_string).collect();
            println!("{:<5} {map:<12} holds={} maxima {}", policy.name(), report.all_hold(), shown.join(","));
        }
    }
    Ok(())
}
