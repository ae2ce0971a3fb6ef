//! TRIP-Stern trees: the recursive definition, explicit binary words,
//! the generating-function form, and the one-dimensional Stern baseline.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::Ratio;

use crate::algebra::{row_apply, Mat3, Scalar, Triple};
use crate::error::{Error, Result};
use crate::family::TripMap;
use crate::limits::Limits;

/// A finite word over `{0,1}` naming a node of the tree.
///
/// The node `Δ(v)` sits at flat index `2^|v| + v` (first bit most
/// significant) on level `|v| + 1`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BinaryWord {
    bits: Vec<u8>,
}

impl BinaryWord {
    pub fn new(bits: Vec<u8>) -> Result<BinaryWord> {
        if bits.iter().any(|&b| b > 1) {
            return Err(Error::Domain("binary words use only 0 and 1".into()));
        }
        Ok(BinaryWord { bits })
    }

    pub fn empty() -> BinaryWord {
        BinaryWord::default()
    }

    /// The word of flat index `m ≥ 1`: its binary digits after the leading 1.
    pub fn from_index(m: u128) -> Result<BinaryWord> {
        if m == 0 {
            return Err(Error::Domain("flat indices start at 1".into()));
        }
        let len = 127 - m.leading_zeros() as usize;
        let bits = (0..len).rev().map(|i| ((m >> i) & 1) as u8).collect();
        Ok(BinaryWord { bits })
    }

    /// `2^len + bits`, or `None` when that exceeds `u128`.
    pub fn index(&self) -> Option<u128> {
        if self.bits.len() >= 127 {
            return None;
        }
        Some(self.bits.iter().fold(1u128, |acc, &b| (acc << 1) | u128::from(b)))
    }

    /// Offset of the node inside its level.
    pub fn offset(&self) -> Option<u128> {
        self.index().map(|i| i - (1u128 << self.bits.len()))
    }

    pub fn bits(&self) -> &[u8] {
        &self.bits
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// Level of `Δ(v)` under the convention that the seed is level 1.
    pub fn level(&self) -> usize {
        self.bits.len() + 1
    }

    pub fn push(&mut self, bit: u8) {
        self.bits.push(bit & 1);
    }
}

impl fmt::Display for BinaryWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.bits {
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

impl FromStr for BinaryWord {
    type Err = Error;

    fn from_str(s: &str) -> Result<BinaryWord> {
        let bits = s
            .chars()
            .filter(|c| !matches!(c, ',' | ' '))
            .map(|c| match c {
                '0' => Ok(0),
                '1' => Ok(1),
                _ => Err(Error::Parse { what: "binary word", input: s.to_string() }),
            })
            .collect::<Result<Vec<u8>>>()?;
        Ok(BinaryWord { bits })
    }
}

/// `a_m` of the tree seeded at `seed`: `a₁ = seed`, `a_{2n} = aₙF₀`, `a_{2n+1} = aₙF₁`.
pub fn trip_stern_term<T: Scalar>(map: &TripMap, m: u128, seed: &Triple<T>) -> Result<Triple<T>> {
    if m == 0 {
        return Err(Error::Domain("flat indices start at 1".into()));
    }
    if m == 1 {
        return Ok(seed.clone());
    }
    let parent = trip_stern_term(map, m / 2, seed)?;
    Ok(map.selection((m & 1) as u8).apply(&parent))
}

/// `seed · F_{i₁} ⋯ F_{iₙ}`, using the full matrices.
pub fn triangle_word<T: Scalar>(map: &TripMap, v: &BinaryWord, seed: &Triple<T>) -> Triple<T> {
    v.bits.iter().fold(seed.clone(), |t, &b| row_apply(&t, map.f(b)))
}

/// The ordered triples of one level of the tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Level<T = BigInt> {
    pub depth: usize,
    pub seed: Triple<T>,
    pub triples: Vec<Triple<T>>,
}

impl<T> Level<T> {
    /// Flat index of the first triple: `2^(depth−1)`.
    pub fn first_index(&self) -> u128 {
        1u128 << (self.depth - 1)
    }
}

fn check_depth(n: usize) -> Result<()> {
    if n == 0 {
        return Err(Error::Domain("levels are numbered from 1".into()));
    }
    Ok(())
}

/// Level `n` (`2^{n−1} ≤ m < 2^n`) by one breadth-first sweep, with the default cap.
pub fn level<T: Scalar>(map: &TripMap, n: usize, seed: &Triple<T>) -> Result<Level<T>> {
    level_with_limits(map, n, seed, &Limits::default())
}

pub fn level_with_limits<T: Scalar>(map: &TripMap, n: usize, seed: &Triple<T>, limits: &Limits) -> Result<Level<T>> {
    check_depth(n)?;
    limits.check_level(n)?;
    let mut current = vec![seed.clone()];
    for _ in 1..n {
        current = expand(map, &current);
    }
    Ok(Level { depth: n, seed: seed.clone(), triples: current })
}

/// The next level: children in order `F₀, F₁` for each parent.
pub fn expand<T: Scalar>(map: &TripMap, parents: &[Triple<T>]) -> Vec<Triple<T>> {
    let (s0, s1) = (map.selection(0), map.selection(1));
    let mut out = Vec::with_capacity(parents.len() * 2);
    for p in parents {
        out.push(s0.apply(p));
        out.push(s1.apply(p));
    }
    out
}

/// Visits every node of levels `1..=depth` depth-first with
/// `(level, offset within level, triple)`, using `O(depth)` memory.
pub fn scan_tree<T: Scalar>(
    map: &TripMap,
    depth: usize,
    seed: &Triple<T>,
    mut visit: impl FnMut(usize, u64, &Triple<T>),
) -> Result<()> {
    check_depth(depth)?;
    if depth > 64 {
        return Err(Error::DepthCap { requested: depth, cap: 64 });
    }
    let (s0, s1) = (map.selection(0), map.selection(1));
    // explicit stack of (level, offset, triple)
    let mut stack: Vec<(usize, u64, Triple<T>)> = vec![(1, 0, seed.clone())];
    while let Some((lvl, off, t)) = stack.pop() {
        visit(lvl, off, &t);
        if lvl < depth {
            stack.push((lvl + 1, 2 * off + 1, s1.apply(&t)));
            stack.push((lvl + 1, 2 * off, s0.apply(&t)));
        }
    }
    Ok(())
}

/// Visits the triples of level `n` in order, without materialising the level.
pub fn for_each_in_level<T: Scalar>(
    map: &TripMap,
    n: usize,
    seed: &Triple<T>,
    mut visit: impl FnMut(u64, &Triple<T>),
) -> Result<()> {
    check_depth(n)?;
    if n > 64 {
        return Err(Error::DepthCap { requested: n, cap: 64 });
    }
    let (s0, s1) = (map.selection(0), map.selection(1));
    let mut stack: Vec<(usize, u64, Triple<T>)> = vec![(1, 0, seed.clone())];
    while let Some((lvl, off, t)) = stack.pop() {
        if lvl == n {
            visit(off, &t);
        } else {
            stack.push((lvl + 1, 2 * off + 1, s1.apply(&t)));
            stack.push((lvl + 1, 2 * off, s0.apply(&t)));
        }
    }
    Ok(())
}

/// The matrix coefficients of `∏_{j<n} P(x^{2^j})` with `P(x) = F₀ + F₁x`,
/// indexed by the exponent of `x`.
pub fn generating_function_coefficients(map: &TripMap, n: usize) -> Vec<Mat3> {
    let mut coeffs = vec![Mat3::identity()];
    for j in 0..n {
        let shift = 1usize << j;
        let mut next = vec![Mat3::zero(); shift * 2];
        for (k, c) in coeffs.iter().enumerate() {
            next[k] = c * map.f0();
            next[k + shift] = c * map.f1();
        }
        coeffs = next;
    }
    coeffs
}

/// `{(1,1,1)·B}` over the coefficients `B` of the `n`-factor product,
/// sorted; as a multiset it equals level `n + 1`.
pub fn level_via_generating_function(map: &TripMap, n: usize) -> Result<Vec<Triple<BigInt>>> {
    level_via_generating_function_with_limits(map, n, &Limits::default())
}

pub fn level_via_generating_function_with_limits(map: &TripMap, n: usize, limits: &Limits) -> Result<Vec<Triple<BigInt>>> {
    check_depth(n)?;
    limits.check_level(n + 1)?;
    let one: Triple<BigInt> = Triple::ones();
    let mut out: Vec<Triple<BigInt>> =
        generating_function_coefficients(map, n).iter().map(|b| row_apply(&one, b)).collect();
    out.sort();
    Ok(out)
}

/// Stern's diatomic sequence: `a₁ = 1`, `a_{2n} = aₙ`, `a_{2n+1} = aₙ + aₙ₊₁`.
pub fn stern_diatomic(n: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::Domain("the diatomic sequence starts at n = 1".into()));
    }
    // (a_k, a_{k+1}) while walking the bits of n below the leading one
    let (mut a, mut b) = (1u64, 1u64);
    for i in (0..63 - n.leading_zeros()).rev() {
        if (n >> i) & 1 == 0 {
            b += a;
        } else {
            a += b;
        }
    }
    Ok(a)
}

/// Level `n` of the Stern-Brocot array: `0/1, 1/1` with mediants inserted `n` times.
pub fn stern_brocot_level(n: usize) -> Result<Vec<Ratio<u64>>> {
    if n > 30 {
        return Err(Error::DepthCap { requested: n, cap: 30 });
    }
    let mut row = vec![Ratio::new_raw(0u64, 1u64), Ratio::new_raw(1, 1)];
    for _ in 0..n {
        let mut next = Vec::with_capacity(row.len() * 2 - 1);
        for w in row.windows(2) {
            next.push(w[0]);
            next.push(Ratio::new_raw(w[0].numer() + w[1].numer(), w[0].denom() + w[1].denom()));
        }
        next.push(*row.last().expect("nonempty"));
        row = next;
    }
    Ok(row)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn m(s: &str) -> TripMap {
        s.parse().unwrap()
    }

    fn ts(v: &[(i64, i64, i64)]) -> Vec<Triple<BigInt>> {
        v.iter().map(|&(a, b, c)| Triple::from_i64(a, b, c)).collect()
    }

    #[test]
    fn first_terms() {
        let one: Triple<BigInt> = Triple::ones();
        let got: Vec<_> = (1..=7).map(|i| trip_stern_term(&TripMap::triangle(), i, &one).unwrap()).collect();
        assert_eq!(got, ts(&[(1, 1, 1), (1, 1, 2), (1, 1, 2), (1, 2, 3), (1, 1, 3), (1, 2, 3), (1, 1, 3)]));
        let got: Vec<_> = (1..=7).map(|i| trip_stern_term(&m("13,132,132"), i, &one).unwrap()).collect();
        assert_eq!(got, ts(&[(1, 1, 1), (1, 2, 1), (1, 2, 1), (1, 2, 2), (2, 2, 1), (1, 2, 2), (2, 2, 1)]));
        assert!(trip_stern_term(&TripMap::triangle(), 0, &one).is_err());
    }

    #[test]
    fn symbolic_words() {
        // linear in the seed, so three unit seeds pin the action
        let check = |map: &str, word: &str, rows: [[i64; 3]; 3]| {
            let map = m(map);
            let w: BinaryWord = word.parse().unwrap();
            for (i, row) in rows.iter().enumerate() {
                let mut s = [0i64; 3];
                s[i] = 1;
                let got = triangle_word(&map, &w, &Triple::<BigInt>::from_i64(s[0], s[1], s[2]));
                assert_eq!(got, Triple::from_i64(row[0], row[1], row[2]), "{map} {word} seed {i}");
            }
        };
        // (c, a+c, a+b+c)
        check("e,e,e", "00", [[0, 1, 1], [0, 0, 1], [1, 1, 1]]);
        // (b, b+c, a+b+c)
        check("12,e,e", "10", [[0, 0, 1], [1, 1, 1], [0, 1, 1]]);
        let seed: Triple<BigInt> = Triple::from_i64(4, 5, 6);
        assert_eq!(triangle_word(&TripMap::triangle(), &BinaryWord::empty(), &seed), seed);
    }

    #[test]
    fn levels() {
        let t = TripMap::triangle();
        let one: Triple<BigInt> = Triple::ones();
        assert_eq!(level(&t, 1, &one).unwrap().triples, vec![one.clone()]);
        assert_eq!(level(&t, 3, &one).unwrap().triples, ts(&[(1, 2, 3), (1, 1, 3), (1, 2, 3), (1, 1, 3)]));
        let l4 = level(&t, 4, &one).unwrap();
        assert_eq!(
            l4.triples,
            ts(&[(2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 1, 4), (2, 3, 4), (1, 2, 4), (1, 3, 4), (1, 1, 4)])
        );
        assert_eq!(l4.first_index(), 8);
        for (j, tr) in l4.triples.iter().enumerate() {
            assert_eq!(tr, &trip_stern_term(&t, 8 + j as u128, &one).unwrap());
        }
        assert!(level(&t, 0, &one).is_err());
        assert!(matches!(level(&t, 31, &one), Err(Error::DepthCap { .. })));
    }

    #[test]
    fn streaming_matches_materialised() {
        let map = m("e,23,132");
        let one: Triple<i128> = Triple::ones();
        for n in 1..=8 {
            let mut got = Vec::new();
            for_each_in_level(&map, n, &one, |off, t| {
                assert_eq!(off as usize, got.len());
                got.push(t.clone());
            })
            .unwrap();
            assert_eq!(got, level(&map, n, &one).unwrap().triples);
        }
        let mut count = [0usize; 7];
        scan_tree(&map, 6, &one, |lvl, _, _| count[lvl] += 1).unwrap();
        assert_eq!(count, [0, 1, 2, 4, 8, 16, 32]);
    }

    #[test]
    fn generating_function_level_two() {
        let t = TripMap::triangle();
        let coeffs = generating_function_coefficients(&t, 2);
        let (a0, a1) = (t.f0().clone(), t.f1().clone());
        assert_eq!(coeffs, vec![&a0 * &a0, &a1 * &a0, &a0 * &a1, &a1 * &a1]);
        assert_eq!(level_via_generating_function(&t, 2).unwrap(), ts(&[(1, 1, 3), (1, 1, 3), (1, 2, 3), (1, 2, 3)]));
        let mut one_factor = level_via_generating_function(&t, 1).unwrap();
        one_factor.sort();
        assert_eq!(one_factor, ts(&[(1, 1, 2), (1, 1, 2)]));
    }

    #[test]
    fn diatomic() {
        let got: Vec<u64> = (1..=9).map(|n| stern_diatomic(n).unwrap()).collect();
        assert_eq!(got, vec![1, 1, 2, 1, 3, 2, 3, 1, 4]);
        for k in 0..63 {
            assert_eq!(stern_diatomic(1 << k).unwrap(), 1);
        }
        assert!(stern_diatomic(0).is_err());
    }

    #[test]
    fn stern_brocot() {
        let show = |n| stern_brocot_level(n).unwrap().iter().map(|r| r.to_string()).collect::<Vec<_>>().join(" ");
        assert_eq!(show(0), "0 1");
        assert_eq!(show(2), "0 1/3 1/2 2/3 1");
        assert_eq!(show(3), "0 1/4 1/3 2/5 1/2 3/5 2/3 3/4 1");
        for r in stern_brocot_level(12).unwrap() {
            assert_eq!(r, Ratio::new(*r.numer(), *r.denom()));
        }
    }

    #[test]
    fn diatomic_is_stern_brocot_denominators() {
        // level n of the array, read without its final 1/1, has denominators a_{2^n..2^{n+1}}
        let row = stern_brocot_level(6).unwrap();
        for (j, r) in row[..row.len() - 1].iter().enumerate() {
            assert_eq!(*r.denom(), stern_diatomic(64 + j as u64).unwrap());
        }
    }

    #[test]
    fn word_parsing() {
        let w: BinaryWord = "1,0,1".parse().unwrap();
        assert_eq!(w.bits(), &[1, 0, 1]);
        assert_eq!(w.index(), Some(13));
        assert_eq!(w.level(), 4);
        assert!("102".parse::<BinaryWord>().is_err());
        assert_eq!(BinaryWord::from_index(13).unwrap(), w);
        assert_eq!(BinaryWord::from_index(1).unwrap(), BinaryWord::empty());
    }

    proptest! {
        #[test]
        fn index_and_word_agree(mi in 0usize..216, idx in 1u128..(1u128 << 20), a in -50i64..50, b in -50i64..50, c in -50i64..50) {
            let map = &crate::family::all_maps()[mi];
            let seed: Triple<BigInt> = Triple::from_i64(a, b, c);
            let w = BinaryWord::from_index(idx).unwrap();
            prop_assert_eq!(w.index(), Some(idx));
            prop_assert_eq!(trip_stern_term(map, idx, &seed).unwrap(), triangle_word(map, &w, &seed));
        }
    }
}
