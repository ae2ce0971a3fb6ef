//! Level sums computed two ways, plus the growth-rate estimate.

use trip_stern::analysis::{level_sums_sequence, power_iteration_eigenvalue, sum_ratio_estimate};
use trip_stern::recurrence::dominant_root;
use trip_stern::{Limits, Result, TripMap, Triple};

fn main() -> Result<()> {
    let map = TripMap::triangle();
    let seed: Triple<i128> = Triple::ones();
    let sums = level_sums_sequence(&map, 12, &seed, &Limits::default())?;
    let totals: Vec<String> = sums.iter().map(|s| s.total.to_string()).collect();
    println!("S(1..12) = {}", totals.join(", "));
    let est = sum_ratio_estimate(&map, 30)?;
    println!("S(30)/S(29) = {:.8}", est.ratio);
    println!("S2/S1 at level 30 = {:.8}", est.s2_over_s1);
    println!("bisection root of det(xI - (F0+F1)) = {:.12}", dominant_root(&map.sum_matrix()).unwrap_or(f64::NAN));
    println!("power iteration = {:.12}", power_iteration_eigenvalue(&map, 200));
    Ok(())
}
