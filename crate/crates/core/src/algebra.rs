//! Exact arithmetic primitives: permutations of {1,2,3} as 3×3 matrices,
//! 3×3 integer matrices, and triples acting as row vectors.
//!
//! A triple is always a row vector multiplied on the right by a matrix, so
//! `(a,b,c)·A₀ = (b, c, a+c)`.

use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Exact number type a triple can carry.
///
/// `i128` is accepted for speed; callers that use it go through
/// [`ensure_headroom`], which proves no intermediate value can overflow
/// before any arithmetic happens.
pub trait Scalar:
    Clone
    + Ord
    + Hash
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + 'static
{
    /// Magnitude bits the type can hold, `None` when unbounded.
    const CAPACITY_BITS: Option<u64>;

    /// Bits needed for `|self|` (numerator bits for rationals).
    fn magnitude_bits(&self) -> u64;

    fn from_bigint(v: &BigInt) -> Option<Self>;

    fn to_rational(&self) -> BigRational;

    fn to_f64(&self) -> f64;

    /// `Some` when the value is an integer.
    fn to_bigint(&self) -> Option<BigInt>;
}

impl Scalar for i128 {
    const CAPACITY_BITS: Option<u64> = Some(126);

    fn magnitude_bits(&self) -> u64 {
        128 - u64::from(self.unsigned_abs().leading_zeros())
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        v.to_i128()
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(*self))
    }

    fn to_f64(&self) -> f64 {
        *self as f64
    }

    fn to_bigint(&self) -> Option<BigInt> {
        Some(BigInt::from(*self))
    }
}

impl Scalar for BigInt {
    const CAPACITY_BITS: Option<u64> = None;

    fn magnitude_bits(&self) -> u64 {
        self.bits()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(v.clone())
    }

    fn to_rational(&self) -> BigRational {
        BigRational::from_integer(self.clone())
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_bigint(&self) -> Option<BigInt> {
        Some(self.clone())
    }
}

impl Scalar for BigRational {
    const CAPACITY_BITS: Option<u64> = None;

    fn magnitude_bits(&self) -> u64 {
        self.numer().bits()
    }

    fn from_bigint(v: &BigInt) -> Option<Self> {
        Some(BigRational::from_integer(v.clone()))
    }

    fn to_rational(&self) -> BigRational {
        self.clone()
    }

    fn to_f64(&self) -> f64 {
        ToPrimitive::to_f64(self).unwrap_or(f64::NAN)
    }

    fn to_bigint(&self) -> Option<BigInt> {
        self.is_integer().then(|| self.to_integer())
    }
}

/// Checks that `extra_bits` of growth on top of the seed magnitude fit in `T`.
pub fn ensure_headroom<T: Scalar>(seed: &Triple<T>, extra_bits: u64) -> Result<()> {
    if let Some(available) = T::CAPACITY_BITS {
        let seed_bits = seed.0.iter().map(Scalar::magnitude_bits).max().unwrap_or(0);
        let needed = seed_bits + extra_bits;
        if needed > available {
            return Err(Error::Overflow { needed, available });
        }
    }
    Ok(())
}

/// An element of S₃, named in cycle notation.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Perm3 {
    E,
    P12,
    P13,
    P23,
    P123,
    P132,
}

impl Perm3 {
    pub const ALL: [Perm3; 6] = [Perm3::E, Perm3::P12, Perm3::P13, Perm3::P23, Perm3::P123, Perm3::P132];

    /// Column index of the 1 in each row of the permutation matrix.
    const fn image(self) -> [usize; 3] {
        match self {
            Perm3::E => [0, 1, 2],
            Perm3::P12 => [1, 0, 2],
            Perm3::P13 => [2, 1, 0],
            Perm3::P23 => [0, 2, 1],
            Perm3::P123 => [1, 2, 0],
            Perm3::P132 => [2, 0, 1],
        }
    }

    fn from_image(image: [usize; 3]) -> Perm3 {
        Perm3::ALL
            .into_iter()
            .find(|p| p.image() == image)
            .expect("every bijection of {0,1,2} is one of the six tags")
    }

    pub fn tag(self) -> &'static str {
        match self {
            Perm3::E => "e",
            Perm3::P12 => "12",
            Perm3::P13 => "13",
            Perm3::P23 => "23",
            Perm3::P123 => "123",
            Perm3::P132 => "132",
        }
    }

    /// The zero-one matrix of this permutation.
    pub fn matrix(self) -> Mat3 {
        let image = self.image();
        Mat3::from_fn(|i, j| i64::from(image[i] == j))
    }

    /// Product of the permutation matrices `self · other`.
    pub fn compose(self, other: Perm3) -> Perm3 {
        let (p, q) = (self.image(), other.image());
        Perm3::from_image([q[p[0]], q[p[1]], q[p[2]]])
    }

    pub fn inverse(self) -> Perm3 {
        let p = self.image();
        let mut inv = [0; 3];
        for (i, &j) in p.iter().enumerate() {
            inv[j] = i;
        }
        Perm3::from_image(inv)
    }

    /// `t · P` for the permutation matrix `P`, without going through a matrix.
    pub fn permute<T: Clone>(self, t: &Triple<T>) -> Triple<T> {
        // (t·P)_j = t_i where image[i] = j
        let inv = self.inverse().image();
        Triple([t.0[inv[0]].clone(), t.0[inv[1]].clone(), t.0[inv[2]].clone()])
    }
}

impl fmt::Display for Perm3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for Perm3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let trimmed = s.trim().trim_start_matches('(').trim_end_matches(')');
        Perm3::ALL
            .into_iter()
            .find(|p| p.tag() == trimmed)
            .ok_or_else(|| Error::Parse { what: "permutation", input: s.to_string() })
    }
}

/// A 3×3 matrix of arbitrary-precision integers.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Mat3(pub [[BigInt; 3]; 3]);

impl Mat3 {
    pub fn from_fn(mut f: impl FnMut(usize, usize) -> i64) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| BigInt::from(f(i, j)))))
    }

    pub fn from_rows(rows: [[i64; 3]; 3]) -> Mat3 {
        Mat3::from_fn(|i, j| rows[i][j])
    }

    pub fn identity() -> Mat3 {
        Mat3::from_fn(|i, j| i64::from(i == j))
    }

    pub fn zero() -> Mat3 {
        Mat3::from_fn(|_, _| 0)
    }

    pub fn entry(&self, i: usize, j: usize) -> &BigInt {
        &self.0[i][j]
    }

    pub fn row(&self, i: usize) -> Triple<BigInt> {
        Triple(self.0[i].clone())
    }

    pub fn column(&self, j: usize) -> [BigInt; 3] {
        std::array::from_fn(|i| self.0[i][j].clone())
    }

    pub fn transpose(&self) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| self.0[j][i].clone())))
    }

    pub fn det(&self) -> BigInt {
        let m = &self.0;
        &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1])
            - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
            + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
    }

    /// Transposed cofactor matrix: `M · adj(M) = det(M) · I`.
    pub fn adjugate(&self) -> Mat3 {
        let m = &self.0;
        let minor = |r0: usize, r1: usize, c0: usize, c1: usize| &m[r0][c0] * &m[r1][c1] - &m[r0][c1] * &m[r1][c0];
        let others = |k: usize| match k {
            0 => (1, 2),
            1 => (0, 2),
            _ => (0, 1),
        };
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                // cofactor of (j, i)
                let (r0, r1) = others(j);
                let (c0, c1) = others(i);
                let c = minor(r0, r1, c0, c1);
                if (i + j) % 2 == 0 {
                    c
                } else {
                    -c
                }
            })
        }))
    }

    /// Exact integer inverse of a matrix with determinant ±1.
    pub fn unimodular_inverse(&self) -> Result<Mat3> {
        let det = self.det();
        if det.is_one() {
            Ok(self.adjugate())
        } else if (-&det).is_one() {
            Ok(-self.adjugate())
        } else {
            Err(Error::NotUnimodular { det: det.to_string() })
        }
    }

    pub fn pow(&self, n: u32) -> Mat3 {
        let mut result = Mat3::identity();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            base = &base * &base;
            n >>= 1;
        }
        result
    }

    pub fn trace(&self) -> BigInt {
        &self.0[0][0] + &self.0[1][1] + &self.0[2][2]
    }

    /// Coefficients of `det(xI − M)`, leading coefficient first.
    pub fn characteristic_polynomial(&self) -> [BigInt; 4] {
        let m = &self.0;
        let principal_minors = &m[0][0] * &m[1][1] - &m[0][1] * &m[1][0] + &m[0][0] * &m[2][2]
            - &m[0][2] * &m[2][0]
            + &m[1][1] * &m[2][2]
            - &m[1][2] * &m[2][1];
        [BigInt::one(), -self.trace(), principal_minors, -self.det()]
    }

    pub fn is_zero_one(&self) -> bool {
        self.0.iter().flatten().all(|e| e.is_zero() || e.is_one())
    }

    pub fn is_permutation(&self) -> bool {
        self.is_zero_one()
            && (0..3).all(|i| self.0[i].iter().filter(|e| e.is_one()).count() == 1)
            && (0..3).all(|j| (0..3).filter(|&i| self.0[i][j].is_one()).count() == 1)
    }

    pub fn to_i64_rows(&self) -> Option<[[i64; 3]; 3]> {
        let mut out = [[0i64; 3]; 3];
        for (i, row) in self.0.iter().enumerate() {
            for (j, e) in row.iter().enumerate() {
                out[i][j] = e.to_i64()?;
            }
        }
        Some(out)
    }
}

impl Mul for &Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| {
            std::array::from_fn(|j| {
                (0..3).fold(BigInt::zero(), |acc, k| acc + &self.0[i][k] * &rhs.0[k][j])
            })
        }))
    }
}

impl Mul for Mat3 {
    type Output = Mat3;

    fn mul(self, rhs: Mat3) -> Mat3 {
        &self * &rhs
    }
}

impl Add for &Mat3 {
    type Output = Mat3;

    fn add(self, rhs: &Mat3) -> Mat3 {
        Mat3(std::array::from_fn(|i| std::array::from_fn(|j| &self.0[i][j] + &rhs.0[i][j])))
    }
}

impl Neg for Mat3 {
    type Output = Mat3;

    fn neg(self) -> Mat3 {
        Mat3(self.0.map(|row| row.map(|e| -e)))
    }
}

impl fmt::Display for Mat3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .iter()
            .map(|r| format!("({},{},{})", r[0], r[1], r[2]))
            .collect();
        write!(f, "[{}]", rows.join(","))
    }
}

/// Exact matrix product.
pub fn mat_mul(a: &Mat3, b: &Mat3) -> Mat3 {
    a * b
}

pub fn perm_matrix(p: Perm3) -> Mat3 {
    p.matrix()
}

pub fn unimodular_inverse(m: &Mat3) -> Result<Mat3> {
    m.unimodular_inverse()
}

/// The triangle-map matrix `A₀`.
pub fn a0() -> Mat3 {
    Mat3::from_rows([[0, 0, 1], [1, 0, 0], [0, 1, 1]])
}

/// The triangle-map matrix `A₁`.
pub fn a1() -> Mat3 {
    Mat3::from_rows([[1, 0, 1], [0, 1, 0], [0, 0, 1]])
}

/// Change-of-basis matrix whose columns are the triangle vertices
/// `v₁ = (1,0,0)ᵀ`, `v₂ = (1,1,0)ᵀ`, `v₃ = (1,1,1)ᵀ`.
pub fn vertex_basis() -> Mat3 {
    Mat3::from_rows([[1, 1, 1], [0, 1, 1], [0, 0, 1]])
}

/// An ordered triple of exact numbers, used as a row vector.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Triple<T = BigInt>(pub [T; 3]);

impl<T> Triple<T> {
    pub fn new(a: T, b: T, c: T) -> Self {
        Triple([a, b, c])
    }

    pub fn a(&self) -> &T {
        &self.0[0]
    }

    pub fn b(&self) -> &T {
        &self.0[1]
    }

    pub fn c(&self) -> &T {
        &self.0[2]
    }

    pub fn map<U>(&self, f: impl FnMut(&T) -> U) -> Triple<U> {
        let [a, b, c] = &self.0;
        let mut f = f;
        Triple([f(a), f(b), f(c)])
    }
}

impl<T: Scalar> Triple<T> {
    pub fn from_i64(a: i64, b: i64, c: i64) -> Self {
        let conv = |v: i64| T::from_bigint(&BigInt::from(v)).expect("small integers fit every scalar");
        Triple([conv(a), conv(b), conv(c)])
    }

    pub fn ones() -> Self {
        Triple([T::one(), T::one(), T::one()])
    }

    pub fn zeros() -> Self {
        Triple([T::zero(), T::zero(), T::zero()])
    }

    pub fn max_entry(&self) -> &T {
        self.0.iter().max().expect("three entries")
    }

    pub fn min_entry(&self) -> &T {
        self.0.iter().min().expect("three entries")
    }

    pub fn sum(&self) -> T {
        self.0[0].clone() + self.0[1].clone() + self.0[2].clone()
    }

    /// Converts to another scalar type; `None` if a value does not fit.
    pub fn convert<U: Scalar>(&self) -> Option<Triple<U>> {
        let conv = |v: &T| -> Option<U> {
            match v.to_bigint() {
                Some(i) => U::from_bigint(&i),
                None => None,
            }
        };
        Some(Triple([conv(&self.0[0])?, conv(&self.0[1])?, conv(&self.0[2])?]))
    }

    pub fn to_rational(&self) -> Triple<BigRational> {
        self.map(Scalar::to_rational)
    }
}

impl<T: Scalar> Add for Triple<T> {
    type Output = Triple<T>;

    fn add(self, rhs: Triple<T>) -> Triple<T> {
        let [a, b, c] = self.0;
        let [x, y, z] = rhs.0;
        Triple([a + x, b + y, c + z])
    }
}

impl<T: fmt::Display> fmt::Display for Triple<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.0[0], self.0[1], self.0[2])
    }
}

/// Parses `"a,b,c"` (optionally parenthesised) into a triple of exact rationals.
impl FromStr for Triple<BigRational> {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let parts: Vec<&str> = inner.split(',').map(str::trim).collect();
        if parts.len() != 3 {
            return Err(Error::Parse { what: "triple", input: s.to_string() });
        }
        let mut out = Vec::with_capacity(3);
        for p in parts {
            out.push(parse_rational(p)?);
        }
        let [a, b, c]: [BigRational; 3] = out.try_into().expect("three parts");
        Ok(Triple([a, b, c]))
    }
}

/// Parses `"p"` or `"p/q"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let err = || Error::Parse { what: "rational", input: s.to_string() };
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| err())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| err())?;
            if d.is_zero() {
                return Err(err());
            }
            Ok(BigRational::new(n, d))
        }
        None => BigInt::from_str(s).map(BigRational::from_integer).map_err(|_| err()),
    }
}

/// Formats a rational as `"p"` or `"p/q"` in lowest terms.
pub fn format_rational(q: &BigRational) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// `t · M`, exact.
pub fn row_apply<T: Scalar>(t: &Triple<T>, m: &Mat3) -> Triple<T> {
    Triple(std::array::from_fn(|j| {
        (0..3).fold(T::zero(), |acc, i| {
            let e = &m.0[i][j];
            if e.is_zero() {
                acc
            } else if e.is_one() {
                acc + t.0[i].clone()
            } else if (-e).is_one() {
                acc - t.0[i].clone()
            } else {
                let factor = T::from_bigint(e).expect("matrix entry fits the scalar type");
                acc + t.0[i].clone() * factor
            }
        })
    }))
}

/// A zero-one matrix compiled to index lists: output `j` is the sum of the
/// input entries listed in `columns[j]`. Every F₀ and F₁ of the family has
/// this shape with one or two inputs per column.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Selection {
    columns: [(usize, Option<usize>); 3],
}

impl Selection {
    pub fn from_matrix(m: &Mat3) -> Option<Selection> {
        if !m.is_zero_one() {
            return None;
        }
        let mut columns = [(0, None); 3];
        for (j, col) in columns.iter_mut().enumerate() {
            let rows: Vec<usize> = (0..3).filter(|&i| m.0[i][j].is_one()).collect();
            *col = match rows.as_slice() {
                [i] => (*i, None),
                [i, k] => (*i, Some(*k)),
                _ => return None,
            };
        }
        Some(Selection { columns })
    }

    #[inline]
    pub fn apply<T: Clone + Add<Output = T>>(&self, t: &Triple<T>) -> Triple<T> {
        Triple(self.columns.map(|(i, k)| match k {
            None => t.0[i].clone(),
            Some(k) => t.0[i].clone() + t.0[k].clone(),
        }))
    }
}
