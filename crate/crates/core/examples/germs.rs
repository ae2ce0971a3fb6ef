//! Germs, forbidden triples and the multiplicity census of the (e,e,e) tree.

use trip_stern::germ::{enumerate_forbidden, germ_of, multiplicity_census, partition_check, PotentialTriple};
use trip_stern::Result;

fn main() -> Result<()> {
    for (a, b, c) in [(5, 8, 11), (2, 2, 3), (3, 7, 10), (2, 4, 6), (13, 21, 34)] {
        let t = PotentialTriple::from_i64(a, b, c)?;
        let root = germ_of(&t);
        println!("({a},{b},{c}) -> root {root} in tree: {}", root.is_unit());
    }
    let forbidden = enumerate_forbidden(12);
    let shown: Vec<String> = forbidden.iter().map(ToString::to_string).collect();
    println!("forbidden with a+b+c <= 12: {}", shown.join(" "));
    let census = multiplicity_census(16)?;
    println!(
        "census to level 16: {} nodes, {} distinct, histogram {:?}, holds {}",
        census.nodes,
        census.distinct,
        census.histogram,
        census.holds()
    );
    let p = partition_check(30);
    println!("partition up to sum 30: {} entries, {} via doubled roots, failures {}", p.potential_entries, p.doubled_rooted, p.failures.len());
    Ok(())
}
