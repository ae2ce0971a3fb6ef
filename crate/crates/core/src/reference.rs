//! Published reference data: the F₀/F₁ action table, maxima prefixes,
//! level-sum classes, and the map lists of the path results.

use crate::algebra::{Mat3, Perm3};
use crate::error::{Error, Result};
use crate::family::TripMap;

/// `(τ₀, τ₁, (a,b,c)F₀, (a,b,c)F₁)` for the 36 maps `(e,τ₀,τ₁)`.
pub const ACTION_TABLE: [(&str, &str, &str, &str); 36] = [
    ("e", "e", "(b, c, a+c)", "(a, b, a+c)"),
    ("e", "12", "(b, c, a+c)", "(b, a, a+c)"),
    ("e", "13", "(b, c, a+c)", "(a+c, b, a)"),
    ("e", "23", "(b, c, a+c)", "(a, a+c, b)"),
    ("e", "123", "(b, c, a+c)", "(a+c, a, b)"),
    ("e", "132", "(b, c, a+c)", "(b, a+c, a)"),
    ("12", "e", "(c, b, a+c)", "(a, b, a+c)"),
    ("12", "12", "(c, b, a+c)", "(b, a, a+c)"),
    ("12", "13", "(c, b, a+c)", "(a+c, b, a)"),
    ("12", "23", "(c, b, a+c)", "(a, a+c, b)"),
    ("12", "123", "(c, b, a+c)", "(a+c, a, b)"),
    ("12", "132", "(c, b, a+c)", "(b, a+c, a)"),
    ("13", "e", "(a+c, c, b)", "(a, b, a+c)"),
    ("13", "12", "(a+c, c, b)", "(b, a, a+c)"),
    ("13", "13", "(a+c, c, b)", "(a+c, b, a)"),
    ("13", "23", "(a+c, c, b)", "(a, a+c, b)"),
    ("13", "123", "(a+c, c, b)", "(a+c, a, b)"),
    ("13", "132", "(a+c, c, b)", "(b, a+c, a)"),
    ("23", "e", "(b, a+c, c)", "(a, b, a+c)"),
    ("23", "12", "(b, a+c, c)", "(b, a, a+c)"),
    ("23", "13", "(b, a+c, c)", "(a+c, b, a)"),
    ("23", "23", "(b, a+c, c)", "(a, a+c, b)"),
    ("23", "123", "(b, a+c, c)", "(a+c, a, b)"),
    ("23", "132", "(b, a+c, c)", "(b, a+c, a)"),
    ("123", "e", "(a+c, b, c)", "(a, b, a+c)"),
    ("123", "12", "(a+c, b, c)", "(b, a, a+c)"),
    ("123", "13", "(a+c, b, c)", "(a+c, b, a)"),
    ("123", "23", "(a+c, b, c)", "(a, a+c, b)"),
    ("123", "123", "(a+c, b, c)", "(a+c, a, b)"),
    ("123", "132", "(a+c, b, c)", "(b, a+c, a)"),
    ("132", "e", "(c, a+c, b)", "(a, b, a+c)"),
    ("132", "12", "(c, a+c, b)", "(b, a, a+c)"),
    ("132", "13", "(c, a+c, b)", "(a+c, b, a)"),
    ("132", "23", "(c, a+c, b)", "(a, a+c, b)"),
    ("132", "123", "(c, a+c, b)", "(a+c, a, b)"),
    ("132", "132", "(c, a+c, b)", "(b, a+c, a)"),
];

/// Parses a linear form such as `"(b, c, a+c)"` into the matrix `M` with
/// `(a,b,c)·M` equal to the form.
pub fn linear_form_matrix(form: &str) -> Result<Mat3> {
    let err = || Error::Parse { what: "linear form", input: form.to_string() };
    let inner = form.trim().strip_prefix('(').and_then(|s| s.strip_suffix(')')).ok_or_else(err)?;
    let parts: Vec<&str> = inner.split(',').collect();
    if parts.len() != 3 {
        return Err(err());
    }
    let mut rows = [[0i64; 3]; 3];
    for (j, part) in parts.iter().enumerate() {
        for term in part.split('+') {
            let i = match term.trim() {
                "a" => 0,
                "b" => 1,
                "c" => 2,
                _ => return Err(err()),
            };
            rows[i][j] += 1;
        }
    }
    Ok(Mat3::from_rows(rows))
}

/// A row of the maxima table: the printed prefix and the maps it lists.
#[derive(Clone, Copy, Debug)]
pub struct MaximaRow {
    pub prefix: &'static [u64],
    /// Printed recurrence `m_n = Σ cᵢ m_{n−i}`, if one is claimed.
    pub recurrence: Option<&'static [i64]>,
    pub maps: &'static [&'static str],
    pub a_number: &'static str,
}

/// The eight rows exactly as printed, including two rows whose printed
/// prefix disagrees with the computed maxima.
pub const MAXIMA_TABLE: [MaximaRow; 8] = [
    MaximaRow {
        prefix: &[1, 2, 3, 5, 7, 11, 16, 25, 36, 56, 81],
        recurrence: None,
        maps: &["e,13,e", "e,123,12"],
        a_number: "A271485",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 4, 6, 9, 13, 19, 28, 41, 60],
        recurrence: Some(&[1, 0, 1]),
        maps: &["e,13,12"],
        a_number: "A000930",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 4, 6, 8, 11, 16, 22, 30, 43],
        recurrence: None,
        maps: &["e,13,23", "e,23,12"],
        a_number: "A271486",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 4, 6, 8, 11, 17, 23, 32, 48],
        recurrence: None,
        maps: &["e,13,132", "e,132,12"],
        a_number: "A271487",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 4, 6, 8, 11, 15, 21, 30, 41],
        recurrence: None,
        maps: &["e,23,e", "e,123,23"],
        a_number: "A271488",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 4, 5, 7, 9, 12, 16, 21],
        recurrence: Some(&[0, 1, 1]),
        maps: &["e,23,23", "e,23,132", "e,132,23", "e,132,132"],
        a_number: "A000931",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 5, 8, 13, 21, 34, 55, 89, 144],
        recurrence: Some(&[1, 1]),
        maps: &["e,123,e"],
        a_number: "A000045",
    },
    MaximaRow {
        prefix: &[1, 2, 3, 4, 5, 7, 10, 13, 18, 25, 34],
        recurrence: None,
        maps: &["e,123,132", "e,132,e"],
        a_number: "A271489",
    },
];

/// A level-sum class: `S(n) = Σ cᵢ S(n−i)` and its `(e,τ₀,τ₁)` members.
#[derive(Clone, Copy, Debug)]
pub struct SumClass {
    pub coefficients: &'static [i64],
    pub maps: &'static [&'static str],
}

/// The eleven level-sum classes; the same grouping holds for every seed.
pub const SUM_CLASSES: [SumClass; 11] = [
    SumClass { coefficients: &[4, -5, 4], maps: &["e,e,e", "e,123,123"] },
    SumClass { coefficients: &[2, 2], maps: &["e,e,12", "e,e,123", "e,13,12", "e,13,123"] },
    SumClass { coefficients: &[3, -1, 1], maps: &["e,e,13", "e,12,123"] },
    SumClass {
        coefficients: &[2, 2, -1],
        maps: &[
            "e,e,23", "e,12,23", "e,12,132", "e,23,e", "e,23,13", "e,23,123", "e,123,23", "e,123,132", "e,132,e",
            "e,132,13",
        ],
    },
    SumClass { coefficients: &[1, 2, 6], maps: &["e,e,132", "e,132,123"] },
    SumClass { coefficients: &[5, -6], maps: &["e,12,e", "e,12,13", "e,123,e", "e,123,13"] },
    SumClass { coefficients: &[3, 1, -4], maps: &["e,12,12", "e,13,13"] },
    SumClass { coefficients: &[4, -3, -1], maps: &["e,13,e", "e,123,12"] },
    SumClass { coefficients: &[2, 4, -6], maps: &["e,13,23", "e,23,12"] },
    SumClass { coefficients: &[1, 4, 1], maps: &["e,13,132", "e,132,12"] },
    SumClass { coefficients: &[1, 4], maps: &["e,23,23", "e,23,132", "e,132,23", "e,132,132"] },
];

/// Maps whose maxima lie on the right-most path.
pub const MAX_RIGHT: [&str; 11] = [
    "e,e,13", "e,13,13", "e,13,123", "e,23,13", "e,23,123", "e,23,132", "e,123,13", "e,123,123", "e,132,13",
    "e,132,123", "e,132,132",
];

/// Maps whose maxima lie on the left-most path.
pub const MAX_LEFT: [&str; 12] = [
    "e,e,e", "e,e,12", "e,e,23", "e,e,123", "e,e,132", "e,12,e", "e,12,12", "e,12,13", "e,12,23", "e,12,123",
    "e,12,132", "e,132,23",
];

/// Maps whose maxima lie on the alternating path starting left.
pub const MAX_ALTERNATE: [&str; 3] = ["e,13,12", "e,23,23", "e,123,e"];

/// Maps whose minima lie on the left-most path.
pub const MIN_LEFT: [&str; 11] = [
    "e,12,12", "e,12,123", "e,12,132", "e,13,123", "e,13,132", "e,23,12", "e,23,123", "e,23,132", "e,123,12",
    "e,123,123", "e,123,132",
];

/// Maps whose minima lie on the right-most path.
pub const MIN_RIGHT: [&str; 11] = [
    "e,e,e", "e,e,12", "e,e,13", "e,e,23", "e,13,e", "e,13,13", "e,13,23", "e,132,e", "e,132,12", "e,132,13",
    "e,132,23",
];

/// Maps whose minima lie on both extreme paths.
pub const MIN_BOTH: [&str; 10] = [
    "e,12,e", "e,12,13", "e,12,23", "e,13,12", "e,23,e", "e,23,13", "e,23,23", "e,123,e", "e,123,13", "e,123,23",
];

/// Right-path maxima for seeds with `a ≥ b ≥ c > 0`.
pub const GENERALIZED_MAX_RIGHT: [&str; 9] = [
    "e,13,123", "e,e,13", "e,13,13", "e,23,13", "e,23,123", "e,123,13", "e,123,123", "e,132,13", "e,132,123",
];

/// Left-path maxima for seeds with `0 < a ≤ b ≤ c`.
pub const GENERALIZED_MAX_LEFT: [&str; 11] = [
    "e,e,e", "e,e,12", "e,e,23", "e,e,123", "e,e,132", "e,12,e", "e,12,12", "e,12,13", "e,12,23", "e,12,123",
    "e,12,132",
];

pub fn parse_maps(names: &[&str]) -> Vec<TripMap> {
    names.iter().map(|s| s.parse().expect("reference map names are valid")).collect()
}

/// The `(e,τ₀,τ₁)` map of an action-table row.
pub fn action_row_map(row: &(&str, &str, &str, &str)) -> Result<TripMap> {
    Ok(TripMap::new(Perm3::E, row.0.parse()?, row.1.parse()?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::BTreeSet;

    #[test]
    fn linear_forms() {
        assert_eq!(linear_form_matrix("(b, c, a+c)").unwrap(), crate::algebra::a0());
        assert_eq!(linear_form_matrix("(a, b, a+c)").unwrap(), crate::algebra::a1());
        assert!(linear_form_matrix("(a, d, c)").is_err());
        assert!(linear_form_matrix("a, b, c").is_err());
    }

    #[test]
    fn sum_classes_partition_the_36() {
        let all: Vec<&str> = SUM_CLASSES.iter().flat_map(|c| c.maps.iter().copied()).collect();
        let set: BTreeSet<&str> = all.iter().copied().collect();
        assert_eq!(all.len(), 36);
        assert_eq!(set.len(), 36);
    }

    #[test]
    fn path_lists_sizes() {
        assert_eq!(MAX_RIGHT.len() + MAX_LEFT.len() + MAX_ALTERNATE.len(), 26);
        assert_eq!(MIN_LEFT.len() + MIN_RIGHT.len() + MIN_BOTH.len(), 32);
        assert_eq!(parse_maps(&MIN_BOTH).len(), 10);
    }
}
