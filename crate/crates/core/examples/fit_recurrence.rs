//! Exact minimal recurrence fitting on a few familiar sequences.

use num_rational::BigRational;
use trip_stern::recurrence::{fit_min_recurrence, verify_recurrence, Recurrence};
use trip_stern::Result;

fn q(v: &[i64]) -> Vec<BigRational> {
    v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
}

fn main() -> Result<()> {
    let cases: [(&str, Vec<i64>); 3] = [
        ("fibonacci", vec![1, 2, 3, 5, 8, 13, 21, 34]),
        ("(e,e,e) sums", vec![3, 8, 22, 60, 162, 436, 1174, 3164, 8530, 22996, 61990, 167100]),
        ("(e,23,23) maxima", vec![1, 2, 2, 3, 4, 5, 7, 9, 12, 16, 21]),
    ];
    for (name, values) in cases {
        let max_order = ((values.len() - 2) / 2).min(6);
        match fit_min_recurrence(&q(&values), max_order)? {
            Some(r) => println!("{name}: order {} {r}, growth {:.6}", r.order(), r.growth_rate().unwrap_or(f64::NAN)),
            None => println!("{name}: no recurrence up to order {max_order}"),
        }
    }
    let narayana = Recurrence::from_i64(&[1, 0, 1]);
    println!("1,2,3,4,6,9,13,19,28 satisfies {narayana}: {}", verify_recurrence(&q(&[1, 2, 3, 4, 6, 9, 13, 19, 28]), &narayana));
    Ok(())
}
