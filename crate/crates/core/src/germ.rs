//! Potential entries, the partial inverse `G`, germs, and forbidden
//! triples of the `(e,e,e)` tree.
//!
//! `G` is undefined on the germs `(a,a,b)`, `b < 2a`, and also on the
//! triples `(a,a,2a)` with `a ≥ 2`, which are not germs. Both kinds root
//! subtrees of the potential entries, so [`germ_of`] returns a [`TreeRoot`].

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use rayon::prelude::*;
use serde::Serialize;

use crate::algebra::{a0, a1, row_apply, Triple};
use crate::error::{Error, Result};
use crate::family::TripMap;
use crate::stern::scan_tree;

/// Membership in `P = {0 < a ≤ b < c} ∪ {(1,1,1)}`.
#[allow(non_snake_case)]
pub fn in_P(t: &Triple<BigInt>) -> bool {
    let [a, b, c] = &t.0;
    (a.is_positive() && a <= b && b < c) || (a.is_one() && b.is_one() && c.is_one())
}

/// A triple known to lie in `P`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PotentialTriple(Triple<BigInt>);

impl PotentialTriple {
    pub fn new(t: Triple<BigInt>) -> Result<PotentialTriple> {
        if in_P(&t) {
            Ok(PotentialTriple(t))
        } else {
            Err(Error::Precondition(format!("{t} is not a potential entry")))
        }
    }

    pub fn from_i64(a: i64, b: i64, c: i64) -> Result<PotentialTriple> {
        PotentialTriple::new(Triple::from_i64(a, b, c))
    }

    pub fn triple(&self) -> &Triple<BigInt> {
        &self.0
    }
}

/// How `G` treats an element of `P`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum InverseCase {
    /// `a + b < c`: `G` undoes `A₁`, giving `(a, b, c − a)`.
    UndoA1,
    /// `a + b ≥ c` with `a < b` or `a = 1 = c − b`: `G` undoes `A₀`, giving `(c − b, a, b)`.
    UndoA0,
    /// `(a, a, b)` with `b < 2a`.
    Germ,
    /// `(a, a, 2a)` with `a ≥ 2`.
    Doubled,
}

pub fn inverse_case(t: &PotentialTriple) -> InverseCase {
    let [a, b, c] = &t.0 .0;
    if a + b < *c {
        InverseCase::UndoA1
    } else if a < b || (a.is_one() && (c - b).is_one()) {
        InverseCase::UndoA0
    } else if *c < a * 2 {
        InverseCase::Germ
    } else {
        InverseCase::Doubled
    }
}

/// `G(t)`, or `None` where `G` is undefined.
pub fn inverse_step(t: &PotentialTriple) -> Option<Triple<BigInt>> {
    let [a, b, c] = &t.0 .0;
    match inverse_case(t) {
        InverseCase::UndoA1 => Some(Triple::new(a.clone(), b.clone(), c - a)),
        InverseCase::UndoA0 => Some(Triple::new(c - b, a.clone(), b.clone())),
        InverseCase::Germ | InverseCase::Doubled => None,
    }
}

/// The root of the subtree of `P` containing a triple.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TreeRoot {
    /// `(a, a, b)` with `b < 2a`.
    Germ { a: BigInt, b: BigInt },
    /// `(a, a, 2a)`, `a ≥ 2`.
    Doubled { a: BigInt },
}

impl TreeRoot {
    pub fn triple(&self) -> Triple<BigInt> {
        match self {
            TreeRoot::Germ { a, b } => Triple::new(a.clone(), a.clone(), b.clone()),
            TreeRoot::Doubled { a } => Triple::new(a.clone(), a.clone(), a * 2),
        }
    }

    pub fn is_unit(&self) -> bool {
        matches!(self, TreeRoot::Germ { a, b } if a.is_one() && b.is_one())
    }
}

impl Serialize for TreeRoot {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let kind = match self {
            TreeRoot::Germ { .. } => "germ",
            TreeRoot::Doubled { .. } => "doubled",
        };
        let mut st = s.serialize_struct("TreeRoot", 2)?;
        st.serialize_field("kind", kind)?;
        st.serialize_field("triple", &self.triple().0.iter().map(ToString::to_string).collect::<Vec<_>>())?;
        st.end()
    }
}

impl fmt::Display for TreeRoot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.triple().fmt(f)
    }
}

fn root_of(t: &PotentialTriple) -> TreeRoot {
    let [a, _, c] = &t.0 .0;
    match inverse_case(t) {
        InverseCase::Germ => TreeRoot::Germ { a: a.clone(), b: c.clone() },
        InverseCase::Doubled => TreeRoot::Doubled { a: a.clone() },
        _ => unreachable!("only called where G is undefined"),
    }
}

/// Iterates `G` until it is undefined. Runs of `A₁`-undoing steps are taken
/// in one division, so the cost is logarithmic in the entries.
pub fn germ_of(t: &PotentialTriple) -> TreeRoot {
    let [mut a, mut b, mut c] = t.0 .0.clone();
    loop {
        if &a + &b < c {
            // k = ⌈(c − a − b)/a⌉ steps of c ↦ c − a
            let k = (&c - &a - &b).div_ceil(&a);
            c -= &a * k;
            continue;
        }
        let cur = PotentialTriple(Triple::new(a.clone(), b.clone(), c.clone()));
        match inverse_step(&cur) {
            Some(Triple([x, y, z])) => {
                (a, b, c) = (x, y, z);
            }
            None => return root_of(&cur),
        }
    }
}

/// Single-step iteration of `G`; reference for [`germ_of`].
pub fn germ_of_stepwise(t: &PotentialTriple) -> TreeRoot {
    let mut cur = t.clone();
    while let Some(next) = inverse_step(&cur) {
        cur = PotentialTriple(next);
    }
    root_of(&cur)
}

/// Membership in the `(e,e,e)` tree `S`.
#[allow(non_snake_case)]
pub fn in_S(t: &Triple<BigInt>) -> bool {
    PotentialTriple::new(t.clone()).is_ok_and(|p| germ_of(&p).is_unit())
}

/// Elements of `P` with entry sum at most `bound`, ascending.
pub fn potential_entries(bound: u64) -> Vec<Triple<BigInt>> {
    let mut out = Vec::new();
    if bound >= 3 {
        out.push(Triple::from_i64(1, 1, 1));
    }
    for a in 1..=bound / 3 {
        for b in a..=(bound - a) / 2 {
            for c in (b + 1)..=(bound - a - b) {
                out.push(Triple::new(a.into(), b.into(), c.into()));
            }
        }
    }
    out.sort();
    out
}

/// Elements of `P` with entry sum at most `bound` that are not in `S`,
/// sorted lexicographically.
pub fn enumerate_forbidden(bound: u64) -> Vec<Triple<BigInt>> {
    potential_entries(bound)
        .into_par_iter()
        .filter(|t| !germ_of(&PotentialTriple(t.clone())).is_unit())
        .collect()
}

/// Every element of `S` with entry sum at most `bound`, from a tree search.
/// Entry sums increase strictly along edges, which bounds the search.
pub fn tree_elements_up_to(root: &Triple<BigInt>, bound: u64) -> BTreeSet<Triple<BigInt>> {
    let bound = BigInt::from(bound);
    let (m0, m1) = (a0(), a1());
    let mut seen = BTreeSet::new();
    let mut stack = vec![root.clone()];
    while let Some(t) = stack.pop() {
        if t.sum() > bound {
            continue;
        }
        stack.push(row_apply(&t, &m0));
        stack.push(row_apply(&t, &m1));
        seen.insert(t);
    }
    seen
}

/// Forbidden triples computed from the tree: `P` minus the tree elements.
pub fn forbidden_by_tree(bound: u64) -> Vec<Triple<BigInt>> {
    let members = tree_elements_up_to(&Triple::ones(), bound);
    potential_entries(bound).into_iter().filter(|t| !members.contains(t)).collect()
}

/// Occurrence counts over the first `depth` levels of the `(e,e,e)` tree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Census {
    pub depth: usize,
    pub nodes: u64,
    pub distinct: usize,
    /// Number of distinct triples seen exactly `k` times, keyed by `k`.
    pub histogram: BTreeMap<u32, usize>,
    pub root_count: u32,
    /// Non-root triples not seen exactly twice (at most 20 listed).
    pub violations: Vec<(String, u32)>,
}

impl Census {
    pub fn holds(&self) -> bool {
        self.root_count == 1 && self.violations.is_empty()
    }
}

/// Counts each triple over levels `1..=depth`. The two level-2 subtrees of
/// the `(e,e,e)` tree coincide, so an element's two occurrences always sit
/// on the same level and both lie inside any truncation.
pub fn multiplicity_census(depth: usize) -> Result<Census> {
    if depth > 26 {
        return Err(Error::DepthCap { requested: depth, cap: 26 });
    }
    let mut counts: HashMap<Triple<i128>, u32> = HashMap::new();
    let mut nodes = 0u64;
    scan_tree(&TripMap::triangle(), depth, &Triple::<i128>::ones(), |_, _, t| {
        nodes += 1;
        *counts.entry(t.clone()).or_insert(0) += 1;
    })?;
    let root = Triple::<i128>::ones();
    let root_count = counts.get(&root).copied().unwrap_or(0);
    let mut histogram = BTreeMap::new();
    let mut bad: Vec<(Triple<i128>, u32)> = Vec::new();
    for (t, &k) in &counts {
        *histogram.entry(k).or_insert(0) += 1;
        if *t != root && k != 2 {
            bad.push((t.clone(), k));
        }
    }
    bad.sort();
    Ok(Census {
        depth,
        nodes,
        distinct: counts.len(),
        histogram,
        root_count,
        violations: bad.into_iter().take(20).map(|(t, k)| (t.to_string(), k)).collect(),
    })
}

/// Result of the bounded partition check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PartitionReport {
    pub bound: u64,
    pub potential_entries: usize,
    /// Elements found in exactly one root's subtree, that root being `germ_of`.
    pub consistent: usize,
    /// Elements whose root is a `(a,a,2a)` triple rather than a germ.
    pub doubled_rooted: usize,
    /// Elements in no root's subtree, or in several, or in the wrong one.
    pub failures: Vec<String>,
}

/// Expands the subtree of every root with entry sum at most `bound` and
/// checks that each element of `P` in range lies in exactly one of them,
/// namely the one named by [`germ_of`].
pub fn partition_check(bound: u64) -> PartitionReport {
    let entries = potential_entries(bound);
    let roots: Vec<TreeRoot> = entries
        .iter()
        .filter_map(|t| {
            let p = PotentialTriple(t.clone());
            matches!(inverse_case(&p), InverseCase::Germ | InverseCase::Doubled).then(|| root_of(&p))
        })
        .collect();
    let mut owner: HashMap<Triple<BigInt>, Vec<TreeRoot>> = HashMap::new();
    for r in &roots {
        for t in tree_elements_up_to(&r.triple(), bound) {
            owner.entry(t).or_default().push(r.clone());
        }
    }
    let mut consistent = 0;
    let mut doubled_rooted = 0;
    let mut failures = Vec::new();
    for t in &entries {
        let expected = germ_of(&PotentialTriple(t.clone()));
        match owner.get(t).map(Vec::as_slice) {
            Some([only]) if *only == expected => {
                consistent += 1;
                if matches!(expected, TreeRoot::Doubled { .. }) {
                    doubled_rooted += 1;
                }
            }
            other => failures.push(format!("{t}: roots {:?}, expected {expected}", other.unwrap_or(&[]))),
        }
    }
    PartitionReport { bound, potential_entries: entries.len(), consistent, doubled_rooted, failures }
}

/// `t·A₀⁻¹` and `t·A₁⁻¹`.
pub fn preimages(t: &Triple<BigInt>) -> (Triple<BigInt>, Triple<BigInt>) {
    let [a, b, c] = &t.0;
    // (a,b,c)·A₀⁻¹ = (c − b, a, b); (a,b,c)·A₁⁻¹ = (a, b, c − a)
    (Triple::new(c - b, a.clone(), b.clone()), Triple::new(a.clone(), b.clone(), c - a))
}
