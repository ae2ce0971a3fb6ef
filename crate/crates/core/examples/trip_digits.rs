//! Digit expansions of rational points under several maps.

use trip_stern::family::{trip_apply, trip_digits, RationalPoint};
use trip_stern::{Result, TripMap};

fn main() -> Result<()> {
    let p = RationalPoint::from_ratios(3, 5, 1, 5);
    let step = trip_apply(&TripMap::triangle(), &p)?;
    println!("T(3/5,1/5) = digit {} image {}", step.digit, step.image);
    for name in ["e,e,e", "12,e,e", "e,123,e", "132,23,13"] {
        let map: TripMap = name.parse()?;
        for point in [RationalPoint::from_ratios(3, 5, 1, 5), RationalPoint::from_ratios(7, 9, 2, 7)] {
            let e = trip_digits(&map, &point, 20);
            println!("{map:<10} {point:<10} digits {:?} stop {:?}", e.digits, e.stop);
        }
    }
    Ok(())
}
