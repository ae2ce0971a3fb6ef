//! Level statistics: extrema and where they sit, path results, level sums
//! and their growth rate, conjugation, and generalized seeds.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use serde::Serialize;

use crate::algebra::{ensure_headroom, row_apply, Perm3, Scalar, Triple};
use crate::error::{Error, Result};
use crate::family::TripMap;
use crate::limits::Limits;
use crate::reference::{GENERALIZED_MAX_LEFT, GENERALIZED_MAX_RIGHT};
use crate::stern::{for_each_in_level, scan_tree};

/// A path from the root choosing `F₀` (left) or `F₁` (right) at each step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PathPolicy {
    AlwaysLeft,
    AlwaysRight,
    AlternateLeftFirst,
}

impl PathPolicy {
    pub const ALL: [PathPolicy; 3] = [PathPolicy::AlwaysLeft, PathPolicy::AlwaysRight, PathPolicy::AlternateLeftFirst];

    /// Edge taken at step `i` (0-based): 0 = left, 1 = right.
    pub fn bit(self, i: usize) -> u8 {
        match self {
            PathPolicy::AlwaysLeft => 0,
            PathPolicy::AlwaysRight => 1,
            PathPolicy::AlternateLeftFirst => (i % 2) as u8,
        }
    }

    /// Offset of the path node within level `n`.
    pub fn offset(self, n: usize) -> u64 {
        (0..n.saturating_sub(1)).fold(0u64, |acc, i| (acc << 1) | u64::from(self.bit(i)))
    }

    pub fn name(self) -> &'static str {
        match self {
            PathPolicy::AlwaysLeft => "left",
            PathPolicy::AlwaysRight => "right",
            PathPolicy::AlternateLeftFirst => "alt",
        }
    }
}

impl FromStr for PathPolicy {
    type Err = Error;

    fn from_str(s: &str) -> Result<PathPolicy> {
        match s {
            "left" => Ok(PathPolicy::AlwaysLeft),
            "right" => Ok(PathPolicy::AlwaysRight),
            "alt" | "alternate" => Ok(PathPolicy::AlternateLeftFirst),
            _ => Err(Error::Parse { what: "path policy", input: s.to_string() }),
        }
    }
}

impl fmt::Display for PathPolicy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Which extreme path(s) should carry the level minimum.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MinSide {
    Left,
    Right,
    Both,
}

impl FromStr for MinSide {
    type Err = Error;

    fn from_str(s: &str) -> Result<MinSide> {
        match s {
            "left" => Ok(MinSide::Left),
            "right" => Ok(MinSide::Right),
            "both" => Ok(MinSide::Both),
            _ => Err(Error::Parse { what: "min side", input: s.to_string() }),
        }
    }
}

/// Exhaustive statistics of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelStats<T = BigInt> {
    pub depth: usize,
    pub max_value: T,
    /// `(offset within level, component)` of every maximal entry.
    pub max_positions: Vec<(u64, usize)>,
    pub min_value: T,
    pub min_positions: Vec<(u64, usize)>,
    pub s1: T,
    pub s2: T,
    pub s3: T,
    pub s: T,
}

/// Growth needed to bound entries and level sums up to `depth`.
fn sum_headroom_bits(depth: usize) -> u64 {
    2 * depth as u64 + 2
}

fn update_extreme<T: Scalar>(best: &mut Option<T>, positions: &mut Vec<(u64, usize)>, v: &T, pos: (u64, usize), better: std::cmp::Ordering) {
    match best {
        Some(b) => match v.cmp(b) {
            o if o == better => {
                *b = v.clone();
                positions.clear();
                positions.push(pos);
            }
            std::cmp::Ordering::Equal => positions.push(pos),
            _ => {}
        },
        None => {
            *best = Some(v.clone());
            positions.push(pos);
        }
    }
}

/// Exhaustive scan of level `n`.
pub fn level_stats<T: Scalar>(map: &TripMap, n: usize, seed: &Triple<T>) -> Result<LevelStats<T>> {
    level_stats_with_limits(map, n, seed, &Limits::default())
}

pub fn level_stats_with_limits<T: Scalar>(map: &TripMap, n: usize, seed: &Triple<T>, limits: &Limits) -> Result<LevelStats<T>> {
    limits.check_scan(n)?;
    ensure_headroom(seed, sum_headroom_bits(n))?;
    let (mut max, mut min) = (None, None);
    let (mut max_pos, mut min_pos) = (Vec::new(), Vec::new());
    let mut sums = Triple::<T>::zeros();
    for_each_in_level(map, n, seed, |off, t| {
        for (j, v) in t.0.iter().enumerate() {
            update_extreme(&mut max, &mut max_pos, v, (off, j), std::cmp::Ordering::Greater);
            update_extreme(&mut min, &mut min_pos, v, (off, j), std::cmp::Ordering::Less);
        }
        sums = sums.clone() + t.clone();
    })?;
    let s = sums.sum();
    let [s1, s2, s3] = sums.0;
    Ok(LevelStats {
        depth: n,
        max_value: max.expect("nonempty level"),
        max_positions: max_pos,
        min_value: min.expect("nonempty level"),
        min_positions: min_pos,
        s1,
        s2,
        s3,
        s,
    })
}

/// Per-level maxima and minima of levels `1..=depth`, from one tree scan.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extrema<T> {
    pub max: Vec<T>,
    pub min: Vec<T>,
}

pub fn extrema_sequences<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>, limits: &Limits) -> Result<Extrema<T>> {
    limits.check_scan(depth)?;
    ensure_headroom(seed, sum_headroom_bits(depth))?;
    let mut max: Vec<Option<T>> = vec![None; depth];
    let mut min: Vec<Option<T>> = vec![None; depth];
    scan_tree(map, depth, seed, |lvl, _, t| {
        let (hi, lo) = (t.max_entry(), t.min_entry());
        let slot = &mut max[lvl - 1];
        if slot.as_ref().is_none_or(|m| hi > m) {
            *slot = Some(hi.clone());
        }
        let slot = &mut min[lvl - 1];
        if slot.as_ref().is_none_or(|m| lo < m) {
            *slot = Some(lo.clone());
        }
    })?;
    Ok(Extrema {
        max: max.into_iter().map(|v| v.expect("every level visited")).collect(),
        min: min.into_iter().map(|v| v.expect("every level visited")).collect(),
    })
}

/// `(m₁, …, m_depth)`, the level maxima.
pub fn maxima_sequence<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>) -> Result<Vec<T>> {
    Ok(extrema_sequences(map, depth, seed, &Limits::default())?.max)
}

pub fn minima_sequence<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>) -> Result<Vec<T>> {
    Ok(extrema_sequences(map, depth, seed, &Limits::default())?.min)
}

/// The triples on a path for levels `1..=depth`.
pub fn path_triples<T: Scalar>(map: &TripMap, policy: PathPolicy, depth: usize, seed: &Triple<T>) -> Vec<Triple<T>> {
    let mut out = Vec::with_capacity(depth);
    let mut t = seed.clone();
    for i in 0..depth {
        if i > 0 {
            t = map.selection(policy.bit(i - 1)).apply(&t);
        }
        out.push(t.clone());
    }
    out
}

/// Per-level outcome of a path check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PathReport {
    pub map: String,
    pub policy: String,
    /// `holds[n-1]`: the path node at level `n` attains the extreme value.
    pub holds: Vec<bool>,
    pub values: Vec<String>,
}

impl PathReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }
}

/// Checks level by level whether the path node attains `m_n`.
pub fn verify_max_path<T: Scalar>(map: &TripMap, policy: PathPolicy, depth: usize, seed: &Triple<T>) -> Result<PathReport> {
    verify_max_path_with_limits(map, policy, depth, seed, &Limits::default())
}

pub fn verify_max_path_with_limits<T: Scalar>(
    map: &TripMap,
    policy: PathPolicy,
    depth: usize,
    seed: &Triple<T>,
    limits: &Limits,
) -> Result<PathReport> {
    let ext = extrema_sequences(map, depth, seed, limits)?;
    let path = path_triples(map, policy, depth, seed);
    Ok(PathReport {
        map: map.to_string(),
        policy: policy.name().into(),
        holds: path.iter().zip(&ext.max).map(|(t, m)| t.max_entry() == m).collect(),
        values: ext.max.iter().map(ToString::to_string).collect(),
    })
}

/// Minimum-path outcome; `holds` combines the side(s) requested.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MinPathReport {
    pub map: String,
    pub side: MinSide,
    pub left: Vec<bool>,
    pub right: Vec<bool>,
    pub holds: Vec<bool>,
    pub min_values: Vec<String>,
}

impl MinPathReport {
    pub fn all_hold(&self) -> bool {
        self.holds.iter().all(|&h| h)
    }

    /// Every level minimum equals `v`.
    pub fn min_always(&self, v: &str) -> bool {
        self.min_values.iter().all(|m| m == v)
    }
}

pub fn verify_min_path<T: Scalar>(map: &TripMap, side: MinSide, depth: usize, seed: &Triple<T>) -> Result<MinPathReport> {
    verify_min_path_with_limits(map, side, depth, seed, &Limits::default())
}

pub fn verify_min_path_with_limits<T: Scalar>(
    map: &TripMap,
    side: MinSide,
    depth: usize,
    seed: &Triple<T>,
    limits: &Limits,
) -> Result<MinPathReport> {
    let ext = extrema_sequences(map, depth, seed, limits)?;
    let on = |policy| -> Vec<bool> {
        path_triples(map, policy, depth, seed).iter().zip(&ext.min).map(|(t, m)| t.min_entry() == m).collect()
    };
    let (left, right) = (on(PathPolicy::AlwaysLeft), on(PathPolicy::AlwaysRight));
    let holds = left
        .iter()
        .zip(&right)
        .map(|(&l, &r)| match side {
            MinSide::Left => l,
            MinSide::Right => r,
            MinSide::Both => l && r,
        })
        .collect();
    Ok(MinPathReport {
        map: map.to_string(),
        side,
        left,
        right,
        holds,
        min_values: ext.min.iter().map(ToString::to_string).collect(),
    })
}

/// Policies whose path carries the maximum at every level up to `depth`.
pub fn observed_max_paths<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>) -> Result<Vec<PathPolicy>> {
    let ext = extrema_sequences(map, depth, seed, &Limits::default())?;
    Ok(PathPolicy::ALL
        .into_iter()
        .filter(|&p| path_triples(map, p, depth, seed).iter().zip(&ext.max).all(|(t, m)| t.max_entry() == m))
        .collect())
}

/// `(S₁, S₂, S₃)` and `S = S₁ + S₂ + S₃` of one level.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LevelSums<T = BigInt> {
    pub depth: usize,
    pub components: Triple<T>,
    pub total: T,
}

/// Sums of levels `1..=depth` by the recurrence `(S₁,S₂,S₃)(n) = (S₁,S₂,S₃)(n−1)·(F₀+F₁)`.
pub fn level_sums_by_recurrence<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>) -> Result<Vec<LevelSums<T>>> {
    ensure_headroom(seed, sum_headroom_bits(depth))?;
    let m = map.sum_matrix();
    let mut out = Vec::with_capacity(depth);
    let mut v = seed.clone();
    for n in 1..=depth {
        if n > 1 {
            v = row_apply(&v, &m);
        }
        out.push(LevelSums { depth: n, total: v.sum(), components: v.clone() });
    }
    Ok(out)
}

/// Sums of levels `1..=depth` by direct summation over one tree scan.
pub fn level_sums_direct<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>, limits: &Limits) -> Result<Vec<LevelSums<T>>> {
    limits.check_scan(depth)?;
    ensure_headroom(seed, sum_headroom_bits(depth))?;
    let mut acc: Vec<Triple<T>> = vec![Triple::zeros(); depth];
    scan_tree(map, depth, seed, |lvl, _, t| {
        let slot = &mut acc[lvl - 1];
        *slot = slot.clone() + t.clone();
    })?;
    Ok(acc
        .into_iter()
        .enumerate()
        .map(|(i, c)| LevelSums { depth: i + 1, total: c.sum(), components: c })
        .collect())
}

/// Sums of levels `1..=depth`, computed both ways; disagreement is an
/// [`Error::Invariant`].
pub fn level_sums_sequence<T: Scalar>(map: &TripMap, depth: usize, seed: &Triple<T>, limits: &Limits) -> Result<Vec<LevelSums<T>>> {
    let direct = level_sums_direct(map, depth, seed, limits)?;
    let rec = level_sums_by_recurrence(map, depth, seed)?;
    for (d, r) in direct.iter().zip(&rec) {
        if d != r {
            return Err(Error::Invariant(format!(
                "level sums of {map} at level {}: direct {} but recurrence {}",
                d.depth, d.components, r.components
            )));
        }
    }
    Ok(direct)
}

/// Sums of level `n`, checked both ways.
pub fn level_sums<T: Scalar>(map: &TripMap, n: usize, seed: &Triple<T>) -> Result<LevelSums<T>> {
    if n == 0 {
        return Err(Error::Domain("levels are numbered from 1".into()));
    }
    let limits = Limits::default();
    limits.check_scan(n)?;
    ensure_headroom(seed, sum_headroom_bits(n))?;
    let mut direct = Triple::<T>::zeros();
    for_each_in_level(map, n, seed, |_, t| direct = direct.clone() + t.clone())?;
    let rec = level_sums_by_recurrence(map, n, seed)?.pop().expect("n >= 1");
    if rec.components != direct {
        return Err(Error::Invariant(format!(
            "level sums of {map} at level {n}: direct {direct} but recurrence {}",
            rec.components
        )));
    }
    Ok(rec)
}

/// Float growth-rate estimates for the level sums.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RatioEstimate {
    pub depth: usize,
    /// `S(depth) / S(depth − 1)`.
    pub ratio: f64,
    pub s2_over_s1: f64,
    pub s3_over_s2: f64,
    /// Dominant eigenvalue of `F₀ + F₁` by exact power iteration.
    pub eigenvalue: f64,
}

fn ratio_f64(num: &BigInt, den: &BigInt) -> f64 {
    ToPrimitive::to_f64(&BigRational::new(num.clone(), den.clone())).unwrap_or(f64::NAN)
}

pub fn sum_ratio_estimate(map: &TripMap, depth: usize) -> Result<RatioEstimate> {
    if depth < 4 {
        return Err(Error::Precondition(format!("ratio estimates need depth >= 4, got {depth}")));
    }
    let sums = level_sums_by_recurrence::<BigInt>(map, depth, &Triple::ones())?;
    let last = &sums[depth - 1];
    let prev = &sums[depth - 2];
    let [s1, s2, s3] = &last.components.0;
    Ok(RatioEstimate {
        depth,
        ratio: ratio_f64(&last.total, &prev.total),
        s2_over_s1: ratio_f64(s2, s1),
        s3_over_s2: ratio_f64(s3, s2),
        eigenvalue: power_iteration_eigenvalue(map, 200),
    })
}

/// `|v F| / |v|` after `iterations` exact steps from `v = (1,1,1)`, with
/// `F = F₀ + F₁` and `|·|` the entry sum.
pub fn power_iteration_eigenvalue(map: &TripMap, iterations: usize) -> f64 {
    let m = map.sum_matrix();
    let mut v: Triple<BigInt> = Triple::ones();
    let mut next = row_apply(&v, &m);
    for _ in 0..iterations {
        v = next;
        next = row_apply(&v, &m);
    }
    ratio_f64(&next.sum(), &v.sum())
}

/// `(κσ, τ₀κ⁻¹, τ₁κ⁻¹)`; its words are the original words times `κ⁻¹`
/// for the seed `(1,1,1)`.
pub fn conjugate_map(map: &TripMap, kappa: Perm3) -> TripMap {
    let inv = kappa.inverse();
    TripMap::new(kappa.compose(map.sigma()), map.tau0().compose(inv), map.tau1().compose(inv))
}

/// `(κ, (e, τ₀κ, τ₁κ))` with `map = conjugate_map((e, τ₀κ, τ₁κ), κ)` and `κ = σ`.
pub fn identity_sigma_representative(map: &TripMap) -> (Perm3, TripMap) {
    let k = map.sigma();
    (k, TripMap::new(Perm3::E, map.tau0().compose(k), map.tau1().compose(k)))
}

/// A clause of the generalized-seed path results.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum GeneralizedClause {
    /// Maxima on the right-most path (`a ≥ b ≥ c > 0` after `κ`).
    MaxRight,
    /// Maxima on the left-most path (`0 < a ≤ b ≤ c` after `κ`).
    MaxLeft,
    /// Minimum equal to seed component `component` on the given path.
    Min { side: MinSide, component: usize },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClauseOutcome {
    pub clause: GeneralizedClause,
    pub holds: Vec<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GeneralizedPathReport {
    pub map: String,
    pub seed: String,
    pub kappa: String,
    pub outcomes: Vec<ClauseOutcome>,
}

impl GeneralizedPathReport {
    pub fn all_hold(&self) -> bool {
        self.outcomes.iter().all(|o| o.holds.iter().all(|&h| h))
    }
}

fn strict_min_index<T: Scalar>(t: &Triple<T>) -> Option<usize> {
    let m = t.min_entry();
    let idx: Vec<usize> = (0..3).filter(|&i| &t.0[i] == m).collect();
    (idx.len() == 1).then(|| idx[0])
}

/// The clauses whose seed condition holds for `map` at `seed`.
pub fn applicable_clauses<T: Scalar>(map: &TripMap, seed: &Triple<T>) -> Vec<GeneralizedClause> {
    let (kappa, base) = identity_sigma_representative(map);
    let s = kappa.permute(seed);
    let [a, b, c] = &s.0;
    let zero = T::zero();
    let name = base.to_string();
    let mut out = Vec::new();
    if GENERALIZED_MAX_RIGHT.contains(&name.as_str()) && a >= b && b >= c && *c > zero {
        out.push(GeneralizedClause::MaxRight);
    }
    if GENERALIZED_MAX_LEFT.contains(&name.as_str()) && zero < *a && a <= b && b <= c {
        out.push(GeneralizedClause::MaxLeft);
    }
    let strict = strict_min_index(&s);
    // the seed component of the base tree maps back to component κ(i) of the conjugate
    let (t0, t1) = (base.tau0(), base.tau1());
    let left_component = match (t0, strict) {
        (Perm3::P12, Some(1)) => Some(1),
        (Perm3::P123, Some(i @ (1 | 2))) => Some(i),
        (Perm3::P23, Some(2)) => Some(2),
        _ => None,
    };
    let right_component = match (t1, strict) {
        (Perm3::P23, Some(0)) => Some(0),
        (Perm3::P13, Some(1)) => Some(1),
        (Perm3::E, Some(i @ (0 | 1))) => Some(i),
        _ => None,
    };
    if let Some(i) = left_component {
        out.push(GeneralizedClause::Min { side: MinSide::Left, component: i });
    }
    if let Some(i) = right_component {
        out.push(GeneralizedClause::Min { side: MinSide::Right, component: i });
    }
    out
}

/// Checks every generalized-seed clause that applies to `(map, seed)`.
/// Fails with [`Error::Precondition`] when the seed meets none of them.
pub fn verify_generalized_paths<T: Scalar>(map: &TripMap, seed: &Triple<T>, depth: usize) -> Result<GeneralizedPathReport> {
    let clauses = applicable_clauses(map, seed);
    if clauses.is_empty() {
        return Err(Error::Precondition(format!(
            "seed {seed} meets no ordering condition of the generalized path results for {map}"
        )));
    }
    let (kappa, _) = identity_sigma_representative(map);
    let base_seed = kappa.permute(seed);
    let ext = extrema_sequences(map, depth, seed, &Limits::default())?;
    let mut outcomes = Vec::new();
    for clause in clauses {
        let holds = match &clause {
            GeneralizedClause::MaxRight | GeneralizedClause::MaxLeft => {
                let policy = if clause == GeneralizedClause::MaxRight {
                    PathPolicy::AlwaysRight
                } else {
                    PathPolicy::AlwaysLeft
                };
                path_triples(map, policy, depth, seed).iter().zip(&ext.max).map(|(t, m)| t.max_entry() == m).collect()
            }
            GeneralizedClause::Min { side, component } => {
                let policy = if *side == MinSide::Left { PathPolicy::AlwaysLeft } else { PathPolicy::AlwaysRight };
                let value = &base_seed.0[*component];
                path_triples(map, policy, depth, seed)
                    .iter()
                    .zip(&ext.min)
                    .map(|(t, m)| t.min_entry() == m && m == value)
                    .collect()
            }
        };
        outcomes.push(ClauseOutcome { clause, holds });
    }
    Ok(GeneralizedPathReport { map: map.to_string(), seed: seed.to_string(), kappa: kappa.to_string(), outcomes })
}
