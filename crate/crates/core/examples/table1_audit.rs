//! Checks the tabulated linear forms of F0 and F1 against the matrices.

use trip_stern::algebra::row_apply;
use trip_stern::reference::{action_row_map, linear_form_matrix, ACTION_TABLE};
use trip_stern::{Result, Triple};

fn main() -> Result<()> {
    let seed: Triple<i128> = Triple::from_i64(2, 3, 7);
    let mut mismatches = 0;
    for row in &ACTION_TABLE {
        let map = action_row_map(row)?;
        let f0_ok = linear_form_matrix(row.2)? == *map.f0();
        let f1_ok = linear_form_matrix(row.3)? == *map.f1();
        if !(f0_ok && f1_ok) {
            mismatches += 1;
        }
        println!(
            "{map:<12} F0 {:<14} {}  F1 {:<14} {}  (2,3,7) -> {} / {}",
            row.2,
            if f0_ok { "ok" } else { "MISMATCH" },
            row.3,
            if f1_ok { "ok" } else { "MISMATCH" },
            row_apply(&seed, map.f0()),
            row_apply(&seed, map.f1()),
        );
    }
    println!("{} rows, {mismatches} mismatches", ACTION_TABLE.len());
    Ok(())
}
