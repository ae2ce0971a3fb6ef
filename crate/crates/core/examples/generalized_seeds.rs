//! Path and sum statements for arbitrary positive seeds.

use trip_stern::analysis::{applicable_clauses, verify_generalized_paths};
use trip_stern::recurrence::verify_generalized_sums;
use trip_stern::{Result, TripMap, Triple};

fn main() -> Result<()> {
    let seeds: [Triple<i128>; 3] = [Triple::from_i64(7, 4, 2), Triple::from_i64(2, 5, 9), Triple::from_i64(5, 1, 4)];
    for name in ["e,e,e", "e,12,e", "e,13,12", "12,123,e"] {
        let map: TripMap = name.parse()?;
        for seed in &seeds {
            if applicable_clauses(&map, seed).is_empty() {
                continue;
            }
            let r = verify_generalized_paths(&map, seed, 12)?;
            println!("{map:<10} seed {seed}: {} clause(s), all hold {}", r.outcomes.len(), r.all_hold());
        }
        let g = verify_generalized_sums(&map, 14)?;
        println!("{map:<10} unit-seed sums: {:?} holds {}", g.joint.map(|r| r.to_string()), g.holds);
    }
    Ok(())
}
