//! Exact linear-recurrence fitting and the classification of maps by
//! their level sums and maxima.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{format_rational, Mat3, Scalar, Triple};
use crate::analysis::{extrema_sequences, level_sums_sequence};
use crate::error::{Error, Result};
use crate::family::TripMap;
use crate::limits::Limits;

/// Default largest order tried by the fitter.
pub const DEFAULT_MAX_ORDER: usize = 6;

/// `s(n) = Σᵢ cᵢ·s(n−i)`, `i = 1..=r`. Order 0 means `s ≡ 0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Recurrence {
    pub coefficients: Vec<BigRational>,
}

impl Recurrence {
    pub fn new(coefficients: Vec<BigRational>) -> Recurrence {
        Recurrence { coefficients }
    }

    pub fn from_i64(c: &[i64]) -> Recurrence {
        Recurrence { coefficients: c.iter().map(|&v| BigRational::from_integer(v.into())).collect() }
    }

    pub fn order(&self) -> usize {
        self.coefficients.len()
    }

    /// Integer coefficients, if every coefficient is a small integer.
    pub fn to_i64(&self) -> Option<Vec<i64>> {
        self.coefficients.iter().map(|c| if c.is_integer() { c.to_integer().to_i64() } else { None }).collect()
    }

    /// `s(n)` predicted from the `r` preceding terms.
    pub fn predict(&self, previous: &[BigRational]) -> BigRational {
        let r = self.order();
        self.coefficients
            .iter()
            .enumerate()
            .fold(BigRational::zero(), |acc, (i, c)| acc + c * &previous[r - 1 - i])
    }

    /// The strings `"p/q"` of the coefficients.
    pub fn coefficient_strings(&self) -> Vec<String> {
        self.coefficients.iter().map(format_rational).collect()
    }

    /// Largest-modulus real root of `x^r − c₁x^{r−1} − … − c_r`.
    pub fn growth_rate(&self) -> Option<f64> {
        if self.coefficients.is_empty() {
            return None;
        }
        let mut poly = vec![BigRational::one()];
        poly.extend(self.coefficients.iter().map(|c| -c));
        dominant_real_root(&poly)
    }
}

impl fmt::Display for Recurrence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({})", self.coefficient_strings().join(","))
    }
}

/// Integral coefficients serialize as numbers, the rest as `"p/q"` strings.
impl Serialize for Recurrence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let values: Vec<serde_json::Value> = self.coefficients.iter().map(crate::cli::scalar_json).collect();
        values.serialize(s)
    }
}

pub fn to_rationals<T: Scalar>(seq: &[T]) -> Vec<BigRational> {
    seq.iter().map(Scalar::to_rational).collect()
}

/// Solves `A x = b` exactly; `None` if inconsistent. Free variables are set to 0.
fn solve(mut rows: Vec<Vec<BigRational>>, unknowns: usize) -> Option<Vec<BigRational>> {
    let mut pivots = Vec::new();
    let mut r = 0;
    for col in 0..unknowns {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][col].recip();
        for v in rows[r].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot_row = rows[r].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i != r && !row[col].is_zero() {
                let factor = row[col].clone();
                for (v, p) in row.iter_mut().zip(&pivot_row) {
                    *v = &*v - &factor * p;
                }
            }
        }
        pivots.push(col);
        r += 1;
        if r == rows.len() {
            break;
        }
    }
    if rows[r..].iter().any(|row| !row[unknowns].is_zero()) {
        return None;
    }
    let mut x = vec![BigRational::zero(); unknowns];
    for (i, &col) in pivots.iter().enumerate() {
        x[col] = rows[i][unknowns].clone();
    }
    Some(x)
}

/// Holds exactly at every index `n ≥ r`.
pub fn verify_recurrence(seq: &[BigRational], rec: &Recurrence) -> bool {
    let r = rec.order();
    if seq.len() <= r {
        return false;
    }
    (r..seq.len()).all(|n| rec.predict(&seq[n - r..n]) == seq[n])
}

/// Minimal-order recurrence satisfied by the whole prefix.
///
/// Order `r` is solved from the Hankel equations inside the first
/// `2·max_order + 2` terms, then checked on every term.
pub fn fit_min_recurrence(prefix: &[BigRational], max_order: usize) -> Result<Option<Recurrence>> {
    fit_joint_min_recurrence(&[prefix.to_vec()], max_order)
}

/// Minimal-order recurrence satisfied by every sequence at once.
pub fn fit_joint_min_recurrence(seqs: &[Vec<BigRational>], max_order: usize) -> Result<Option<Recurrence>> {
    let needed = 2 * max_order + 2;
    let got = seqs.iter().map(Vec::len).min().unwrap_or(0);
    if got < needed {
        return Err(Error::InsufficientPrefix { needed, got });
    }
    if seqs.iter().all(|s| s.iter().all(Zero::is_zero)) {
        return Ok(Some(Recurrence::new(Vec::new())));
    }
    for r in 1..=max_order {
        let mut rows = Vec::new();
        for s in seqs {
            for n in r..needed {
                // unknown i multiplies s(n−1−i)
                let mut row: Vec<BigRational> = (0..r).map(|i| s[n - 1 - i].clone()).collect();
                row.push(s[n].clone());
                rows.push(row);
            }
        }
        let Some(c) = solve(rows, r) else { continue };
        if c[r - 1].is_zero() {
            continue;
        }
        let rec = Recurrence::new(c);
        if seqs.iter().all(|s| verify_recurrence(s, &rec)) {
            return Ok(Some(rec));
        }
    }
    Ok(None)
}

/// Largest-modulus real root of a polynomial (leading coefficient first),
/// isolated between critical points and refined by bisection to width 1e-12.
pub fn dominant_real_root(poly: &[BigRational]) -> Option<f64> {
    real_roots(poly).into_iter().max_by(|a, b| a.abs().total_cmp(&b.abs()))
}

fn eval(poly: &[BigRational], x: &BigRational) -> BigRational {
    poly.iter().fold(BigRational::zero(), |acc, c| acc * x + c)
}

fn derivative(poly: &[BigRational]) -> Vec<BigRational> {
    let d = poly.len() - 1;
    poly[..d].iter().enumerate().map(|(i, c)| c * BigRational::from_integer(BigInt::from(d - i))).collect()
}

fn to_q(x: f64) -> BigRational {
    BigRational::from_float(x).expect("finite")
}

/// All real roots, ascending.
pub fn real_roots(poly: &[BigRational]) -> Vec<f64> {
    let start = poly.iter().position(|c| !c.is_zero()).unwrap_or(poly.len());
    let poly = &poly[start..];
    if poly.len() < 2 {
        return Vec::new();
    }
    if poly.len() == 2 {
        return vec![ToPrimitive::to_f64(&(-&poly[1] / &poly[0])).unwrap_or(f64::NAN)];
    }
    // Cauchy bound
    let lead = poly[0].abs();
    let bound = poly[1..].iter().map(|c| c.abs() / &lead).max().unwrap_or_else(BigRational::zero) + BigRational::one();
    let b = ToPrimitive::to_f64(&bound).unwrap_or(f64::MAX);
    let mut marks = vec![-b];
    marks.extend(real_roots(&derivative(poly)).into_iter().filter(|x| x.abs() < b));
    marks.push(b);
    let mut roots: Vec<f64> = Vec::new();
    for w in marks.windows(2) {
        let (mut lo, mut hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(poly, &to_q(lo)), eval(poly, &to_q(hi)));
        if flo.is_zero() {
            roots.push(lo);
            continue;
        }
        if fhi.is_zero() || flo.signum() == fhi.signum() {
            continue;
        }
        let neg_lo = flo.is_negative();
        while hi - lo > 1e-12 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            let fm = eval(poly, &to_q(mid));
            if fm.is_zero() {
                lo = mid;
                hi = mid;
                break;
            }
            if fm.is_negative() == neg_lo {
                lo = mid;
            } else {
                hi = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    if eval(poly, &to_q(b)).is_zero() {
        roots.push(b);
    }
    roots.dedup_by(|a, b| (*a - *b).abs() < 1e-9);
    roots
}

/// Dominant real root of the characteristic polynomial of `m`.
pub fn dominant_root(m: &Mat3) -> Option<f64> {
    let poly: Vec<BigRational> = m.characteristic_polynomial().iter().cloned().map(BigRational::from_integer).collect();
    dominant_real_root(&poly)
}

/// Dominant real root of a polynomial given by integer coefficients, leading first.
pub fn dominant_root_of(coeffs: &[i64]) -> Option<f64> {
    let poly: Vec<BigRational> = coeffs.iter().map(|&c| BigRational::from_integer(c.into())).collect();
    dominant_real_root(&poly)
}

/// One group of a classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassGroup {
    /// The fitted recurrence, or `None` when no order up to the maximum fits.
    pub recurrence: Option<Recurrence>,
    pub maps: Vec<String>,
    /// The sequence of the first map of the group (seed `(1,1,1)`).
    pub sequence: Vec<String>,
    /// `true` when the recurrence is an empirical fit rather than a tabulated one.
    pub empirical: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClassReport {
    pub what: String,
    pub depth: usize,
    pub groups: Vec<ClassGroup>,
}

impl ClassReport {
    pub fn group_count(&self) -> usize {
        self.groups.len()
    }

    pub fn group_of(&self, map: &str) -> Option<&ClassGroup> {
        self.groups.iter().find(|g| g.maps.iter().any(|m| m == map))
    }
}

/// Level-sum data of one map used for classification.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MapSums {
    pub map: String,
    /// Minimal recurrence shared by the totals of the three unit seeds.
    pub joint: Option<Recurrence>,
    /// Minimal recurrence of the totals for seed `(1,1,1)`.
    pub ones: Option<Recurrence>,
    pub ones_sequence: Vec<String>,
}

fn unit_seeds() -> [Triple<i128>; 3] {
    [Triple::from_i64(1, 0, 0), Triple::from_i64(0, 1, 0), Triple::from_i64(0, 0, 1)]
}

fn totals(map: &TripMap, depth: usize, seed: &Triple<i128>, limits: &Limits) -> Result<Vec<BigRational>> {
    Ok(level_sums_sequence(map, depth, seed, limits)?
        .iter()
        .map(|s| BigRational::from_integer(s.total.into()))
        .collect())
}

fn order_for(depth: usize) -> usize {
    DEFAULT_MAX_ORDER.min(depth.saturating_sub(2) / 2)
}

/// Fits the level sums of one map, jointly over the unit seeds and for `(1,1,1)`.
pub fn map_sums(map: &TripMap, depth: usize, limits: &Limits) -> Result<MapSums> {
    let max_order = order_for(depth);
    let per_seed: Vec<Vec<BigRational>> =
        unit_seeds().iter().map(|s| totals(map, depth, s, limits)).collect::<Result<_>>()?;
    let ones = totals(map, depth, &Triple::ones(), limits)?;
    Ok(MapSums {
        map: map.to_string(),
        joint: fit_joint_min_recurrence(&per_seed, max_order)?,
        ones: fit_min_recurrence(&ones, max_order)?,
        ones_sequence: ones.iter().map(format_rational).collect(),
    })
}

fn group_by<K: Ord + Clone>(items: Vec<(String, K, Vec<String>, Option<Recurrence>)>) -> Vec<ClassGroup> {
    let mut order: Vec<K> = Vec::new();
    let mut groups: BTreeMap<K, ClassGroup> = BTreeMap::new();
    for (map, key, seq, rec) in items {
        let g = groups.entry(key.clone()).or_insert_with(|| {
            order.push(key.clone());
            ClassGroup { recurrence: rec, maps: Vec::new(), sequence: seq, empirical: true }
        });
        g.maps.push(map);
    }
    order.into_iter().map(|k| groups.remove(&k).expect("key recorded")).collect()
}

/// Groups maps by their seed-`(1,1,1)` level-sum sequence; each group carries
/// the minimal recurrence of that sequence.
///
/// Keying on the minimal joint recurrence over all seeds would split one
/// class: its members share a sequence but differ in how the extra eigenvalue
/// `-1` of `F0+F1` is excited by unit seeds.
pub fn classify_level_sums(depth: usize, maps: &[TripMap], limits: &Limits) -> Result<ClassReport> {
    if depth < 12 {
        return Err(Error::Precondition(format!("sum classification needs depth >= 12, got {depth}")));
    }
    let data: Vec<MapSums> = maps.par_iter().map(|m| map_sums(m, depth, limits)).collect::<Result<_>>()?;
    let catalog = catalog();
    let items = data.into_iter().map(|d| (d.map, d.ones_sequence.clone(), d.ones_sequence, d.ones)).collect();
    let mut groups = group_by(items);
    for g in &mut groups {
        g.empirical = g.recurrence.as_ref().is_none_or(|r| oeis_lookup(r, &catalog.sums).is_none());
    }
    Ok(ClassReport { what: "sums".into(), depth, groups })
}

/// Groups maps by their raw maxima sequence for seed `(1,1,1)`; each group
/// carries whatever recurrence the fitter finds, marked empirical unless it
/// is catalogued.
pub fn classify_maxima(depth: usize, maps: &[TripMap], limits: &Limits) -> Result<ClassReport> {
    if depth < 11 {
        return Err(Error::Precondition(format!("maxima classification needs depth >= 11, got {depth}")));
    }
    let one: Triple<i128> = Triple::ones();
    let seqs: Vec<Vec<i128>> =
        maps.par_iter().map(|m| extrema_sequences(m, depth, &one, limits).map(|e| e.max)).collect::<Result<_>>()?;
    let max_order = order_for(depth);
    let mut items = Vec::with_capacity(maps.len());
    for (m, s) in maps.iter().zip(seqs) {
        let rec = fit_min_recurrence(&to_rationals(&s), max_order)?;
        items.push((m.to_string(), s.clone(), s.iter().map(ToString::to_string).collect(), rec));
    }
    let catalog = catalog();
    let mut groups = group_by(items);
    for g in &mut groups {
        g.empirical = g.recurrence.as_ref().is_none_or(|r| oeis_lookup(r, &catalog.maxima).is_none());
    }
    Ok(ClassReport { what: "maxima".into(), depth, groups })
}

/// Outcome of the three-seed level-sum check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedSums {
    pub map: String,
    pub depth: usize,
    pub joint: Option<Recurrence>,
    /// Minimal recurrence of each unit seed on its own (may be of lower order).
    pub per_seed: Vec<Option<Recurrence>>,
    /// The joint recurrence holds for every seed's sums.
    pub holds: bool,
}

/// Fits the sums of the unit seeds jointly and checks that one recurrence
/// serves all three; by linearity it then serves every seed.
pub fn verify_generalized_sums(map: &TripMap, depth: usize) -> Result<GeneralizedSums> {
    if depth < 12 {
        return Err(Error::Precondition(format!("generalized sums need depth >= 12, got {depth}")));
    }
    let limits = Limits::default();
    let max_order = order_for(depth);
    let seqs: Vec<Vec<BigRational>> =
        unit_seeds().iter().map(|s| totals(map, depth, s, &limits)).collect::<Result<_>>()?;
    let joint = fit_joint_min_recurrence(&seqs, max_order)?;
    let per_seed = seqs.iter().map(|s| fit_min_recurrence(s, max_order)).collect::<Result<_>>()?;
    let holds = joint.as_ref().is_some_and(|r| seqs.iter().all(|s| verify_recurrence(s, r)));
    Ok(GeneralizedSums { map: map.to_string(), depth, joint, per_seed, holds })
}

/// Whether `rec` holds for the level sums of the three unit seeds and of
/// `(1,1,1)` through `depth`; by linearity it then holds for every seed.
pub fn sums_satisfy(map: &TripMap, depth: usize, rec: &Recurrence, limits: &Limits) -> Result<bool> {
    let mut seeds = unit_seeds().to_vec();
    seeds.push(Triple::ones());
    for s in &seeds {
        if !verify_recurrence(&totals(map, depth, s, limits)?, rec) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// A catalogued recurrence with its encyclopedia number.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogEntry {
    pub coefficients: Vec<i64>,
    pub a_number: String,
    /// `"existing"` or `"new"`.
    pub status: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Catalog {
    pub sums: Vec<CatalogEntry>,
    pub maxima: Vec<CatalogEntry>,
}

/// The bundled catalog.
pub fn catalog() -> &'static Catalog {
    static CATALOG: OnceLock<Catalog> = OnceLock::new();
    CATALOG.get_or_init(|| serde_json::from_str(include_str!("../data/oeis.json")).expect("bundled catalog is valid"))
}

/// `true` iff the recurrence has exactly the catalogued coefficients.
pub fn oeis_crosscheck(rec: &Recurrence, known: &CatalogEntry) -> bool {
    rec.to_i64().as_deref() == Some(known.coefficients.as_slice())
}

pub fn oeis_lookup<'a>(rec: &Recurrence, entries: &'a [CatalogEntry]) -> Option<&'a CatalogEntry> {
    entries.iter().find(|e| oeis_crosscheck(rec, e))
}
