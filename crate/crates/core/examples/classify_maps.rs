//! Sum classes of the 36 maps with sigma = e and maxima classes of all 216.

use trip_stern::family::{all_maps, identity_sigma_maps};
use trip_stern::recurrence::{classify_level_sums, classify_maxima};
use trip_stern::{Limits, Result};

fn main() -> Result<()> {
    let limits = Limits::default();
    let sums = classify_level_sums(14, &identity_sigma_maps(), &limits)?;
    println!("{} sum classes", sums.group_count());
    for g in &sums.groups {
        let rec = g.recurrence.as_ref().map_or("none".to_string(), ToString::to_string);
        println!("  {rec:<12} {}", g.maps.join(" "));
    }
    let maxima = classify_maxima(12, &all_maps(), &limits)?;
    println!("{} distinct maxima sequences over 216 maps (empirical)", maxima.group_count());
    for g in &maxima.groups {
        println!("  {:<45} {} maps", g.sequence.join(","), g.maps.len());
    }
    Ok(())
}
