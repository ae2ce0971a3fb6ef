//! The 216 triangle partition maps, their digit expansions, and the
//! one-dimensional Gauss map they generalise.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::algebra::{a0, a1, format_rational, parse_rational, vertex_basis, Mat3, Perm3, Selection};
use crate::error::{Error, Result};

/// Default bound on the digit search in [`trip_apply`].
pub const DEFAULT_DIGIT_CAP: u64 = 1_000_000;

/// One member of the family: `F₀ = σA₀τ₀`, `F₁ = σA₁τ₁`.
#[derive(Clone, Debug)]
pub struct TripMap {
    sigma: Perm3,
    tau0: Perm3,
    tau1: Perm3,
    f0: Mat3,
    f1: Mat3,
    sel0: Selection,
    sel1: Selection,
}

impl PartialEq for TripMap {
    fn eq(&self, other: &Self) -> bool {
        self.perms() == other.perms()
    }
}

impl Eq for TripMap {}

impl TripMap {
    pub fn new(sigma: Perm3, tau0: Perm3, tau1: Perm3) -> TripMap {
        let s = sigma.matrix();
        let f0 = &(&s * &a0()) * &tau0.matrix();
        let f1 = &(&s * &a1()) * &tau1.matrix();
        let sel0 = Selection::from_matrix(&f0).expect("F0 is a zero-one matrix");
        let sel1 = Selection::from_matrix(&f1).expect("F1 is a zero-one matrix");
        TripMap { sigma, tau0, tau1, f0, f1, sel0, sel1 }
    }

    /// The map `(e,e,e)`, i.e. `F₀ = A₀`, `F₁ = A₁`.
    pub fn triangle() -> TripMap {
        TripMap::new(Perm3::E, Perm3::E, Perm3::E)
    }

    pub fn sigma(&self) -> Perm3 {
        self.sigma
    }

    pub fn tau0(&self) -> Perm3 {
        self.tau0
    }

    pub fn tau1(&self) -> Perm3 {
        self.tau1
    }

    pub fn perms(&self) -> (Perm3, Perm3, Perm3) {
        (self.sigma, self.tau0, self.tau1)
    }

    pub fn f0(&self) -> &Mat3 {
        &self.f0
    }

    pub fn f1(&self) -> &Mat3 {
        &self.f1
    }

    pub fn f(&self, bit: u8) -> &Mat3 {
        if bit == 0 {
            &self.f0
        } else {
            &self.f1
        }
    }

    pub fn selection(&self, bit: u8) -> &Selection {
        if bit == 0 {
            &self.sel0
        } else {
            &self.sel1
        }
    }

    /// The change-of-basis matrix `V = (v₁ v₂ v₃)`.
    pub fn vertex_basis(&self) -> Mat3 {
        vertex_basis()
    }

    /// `F₀ + F₁`, the matrix driving the level-sum recurrence.
    pub fn sum_matrix(&self) -> Mat3 {
        &self.f0 + &self.f1
    }
}

impl fmt::Display for TripMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{}", self.sigma, self.tau0, self.tau1)
    }
}

impl FromStr for TripMap {
    type Err = Error;

    fn from_str(s: &str) -> Result<TripMap> {
        let parts: Vec<&str> = s.trim().trim_start_matches('(').trim_end_matches(')').split(',').collect();
        let [sigma, tau0, tau1] = parts.as_slice() else {
            return Err(Error::Parse { what: "map triplet", input: s.to_string() });
        };
        Ok(TripMap::new(sigma.parse()?, tau0.parse()?, tau1.parse()?))
    }
}

/// Constructs the map for a permutation triplet.
pub fn make_trip_map(sigma: Perm3, tau0: Perm3, tau1: Perm3) -> TripMap {
    TripMap::new(sigma, tau0, tau1)
}

/// All 216 maps, ordered by `(σ, τ₀, τ₁)`.
pub fn all_maps() -> Vec<TripMap> {
    let mut out = Vec::with_capacity(216);
    for s in Perm3::ALL {
        for t0 in Perm3::ALL {
            for t1 in Perm3::ALL {
                out.push(TripMap::new(s, t0, t1));
            }
        }
    }
    out
}

/// The 36 maps with `σ = e`.
pub fn identity_sigma_maps() -> Vec<TripMap> {
    all_maps().into_iter().filter(|m| m.sigma == Perm3::E).collect()
}

/// `V·F₁ⁿ·F₀`; its columns are the vertices of the n-th subtriangle.
pub fn subtriangle_matrix(map: &TripMap, n: u32) -> Mat3 {
    &(&map.vertex_basis() * &map.f1.pow(n)) * &map.f0
}

/// A point `(x, y)` of the plane with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RationalPoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl RationalPoint {
    pub fn new(x: BigRational, y: BigRational) -> RationalPoint {
        RationalPoint { x, y }
    }

    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> RationalPoint {
        RationalPoint {
            x: BigRational::new(xn.into(), xd.into()),
            y: BigRational::new(yn.into(), yd.into()),
        }
    }

    /// Membership in `Δ = {1 ≥ x ≥ y > 0}`.
    pub fn in_triangle(&self) -> bool {
        self.x <= BigRational::one() && self.x >= self.y && self.y.is_positive()
    }

    fn check_in_triangle(&self) -> Result<()> {
        if self.in_triangle() {
            Ok(())
        } else {
            Err(Error::OutsideTriangle(self.to_string()))
        }
    }
}

impl fmt::Display for RationalPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", format_rational(&self.x), format_rational(&self.y))
    }
}

impl FromStr for RationalPoint {
    type Err = Error;

    fn from_str(s: &str) -> Result<RationalPoint> {
        let inner = s.trim().trim_start_matches('(').trim_end_matches(')');
        let (x, y) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse { what: "point", input: s.to_string() })?;
        Ok(RationalPoint { x: parse_rational(x)?, y: parse_rational(y)? })
    }
}

/// Result of one application of a triangle partition map.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripStep {
    pub digit: u64,
    pub image: RationalPoint,
    /// The point lies on an edge of its subtriangle. Shared edges between
    /// consecutive subtriangles belong to the one with the larger digit.
    pub on_boundary: bool,
}

type Column = [BigRational; 3];

fn mat_col(m: &Mat3, v: &Column) -> Column {
    std::array::from_fn(|i| {
        (0..3).fold(BigRational::zero(), |acc, k| {
            acc + BigRational::from_integer(m.entry(i, k).clone()) * &v[k]
        })
    })
}

#[derive(PartialEq, Eq)]
enum Containment {
    Outside,
    Boundary,
    Interior,
}

fn classify(bary: &Column) -> Containment {
    if bary.iter().any(|l| l.is_negative()) {
        Containment::Outside
    } else if bary.iter().any(Zero::is_zero) {
        Containment::Boundary
    } else {
        Containment::Interior
    }
}

/// Applies the map once with the default digit cap.
pub fn trip_apply(map: &TripMap, p: &RationalPoint) -> Result<TripStep> {
    trip_apply_with_cap(map, p, DEFAULT_DIGIT_CAP)
}

/// Applies the map once: finds the digit `k` with `p ∈ Δₖ` and returns
/// `π((1,x,y)·(V F₀⁻¹ F₁⁻ᵏ V⁻¹)ᵀ)`.
///
/// Containment is decided from the barycentric coordinates
/// `λ = (V F₁ᵏ F₀)⁻¹ (1,x,y)ᵀ`: `p ∈ Δₖ` iff every `λᵢ ≥ 0`. The image is `π(Vλ)`.
pub fn trip_apply_with_cap(map: &TripMap, p: &RationalPoint, cap: u64) -> Result<TripStep> {
    p.check_in_triangle()?;
    let v = vertex_basis();
    let v_inv = v.unimodular_inverse()?;
    let f0_inv = map.f0.unimodular_inverse()?;
    let f1_inv = map.f1.unimodular_inverse()?;

    let homogeneous: Column = [BigRational::one(), p.x.clone(), p.y.clone()];
    // u = F₁⁻ᵏ V⁻¹ P
    let mut u = mat_col(&v_inv, &homogeneous);
    let mut k: u64 = 0;
    loop {
        if k > cap {
            return Err(Error::NoSubtriangle { cap });
        }
        let bary = mat_col(&f0_inv, &u);
        match classify(&bary) {
            Containment::Outside => {
                u = mat_col(&f1_inv, &u);
                k += 1;
            }
            found => {
                let mut on_boundary = found == Containment::Boundary;
                let mut bary = bary;
                // a point on the edge shared with Δₖ₊₁ belongs to Δₖ₊₁
                loop {
                    let next_u = mat_col(&f1_inv, &u);
                    let next_bary = mat_col(&f0_inv, &next_u);
                    if classify(&next_bary) == Containment::Outside || k >= cap {
                        break;
                    }
                    on_boundary = true;
                    u = next_u;
                    bary = next_bary;
                    k += 1;
                }
                let image_h = mat_col(&v, &bary);
                if image_h[0].is_zero() {
                    return Err(Error::ZeroLeadingCoordinate);
                }
                let image = RationalPoint { x: &image_h[1] / &image_h[0], y: &image_h[2] / &image_h[0] };
                return Ok(TripStep { digit: k, image, on_boundary });
            }
        }
    }
}

/// Closed form of the `(e,e,e)` map: `k = ⌊(1−x)/y⌋`, image `(y/x, (1−x−ky)/x)`.
pub fn triangle_map_closed_form(p: &RationalPoint) -> Result<TripStep> {
    p.check_in_triangle()?;
    let one = BigRational::one();
    let k = ((&one - &p.x) / &p.y).floor();
    let kb = BigRational::from_integer(k.to_integer());
    let rest = &one - &p.x - &kb * &p.y;
    let on_boundary = rest.is_zero() || p.x == one || p.x == p.y;
    let digit = k.to_integer().to_u64().ok_or_else(|| Error::Domain("digit exceeds u64".into()))?;
    Ok(TripStep {
        digit,
        image: RationalPoint { x: &p.y / &p.x, y: rest / &p.x },
        on_boundary,
    })
}

/// Why a digit expansion stopped.
#[derive(Clone, Debug, PartialEq, Eq, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ExpansionStop {
    /// `max_digits` digits were produced.
    MaxDigits,
    /// The orbit left the open triangle (for instance `y` became 0).
    Terminated,
    /// No subtriangle within the digit cap contained the point.
    NoSubtriangle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TripExpansion {
    pub digits: Vec<u64>,
    pub stop: ExpansionStop,
    /// Indices of digits whose point sat on a subtriangle edge.
    pub boundary_steps: Vec<usize>,
}

/// The digit sequence `(t₀, t₁, …)` with `Tⁿ(p) ∈ Δ_{tₙ}`.
pub fn trip_digits(map: &TripMap, p: &RationalPoint, max_digits: usize) -> TripExpansion {
    trip_digits_with_cap(map, p, max_digits, DEFAULT_DIGIT_CAP)
}

pub fn trip_digits_with_cap(map: &TripMap, p: &RationalPoint, max_digits: usize, cap: u64) -> TripExpansion {
    let mut digits = Vec::new();
    let mut boundary_steps = Vec::new();
    let mut point = p.clone();
    let stop = loop {
        if digits.len() >= max_digits {
            break ExpansionStop::MaxDigits;
        }
        match trip_apply_with_cap(map, &point, cap) {
            Ok(step) => {
                if step.on_boundary {
                    boundary_steps.push(digits.len());
                }
                digits.push(step.digit);
                point = step.image;
            }
            Err(Error::NoSubtriangle { .. }) => break ExpansionStop::NoSubtriangle,
            Err(_) => break ExpansionStop::Terminated,
        }
    };
    TripExpansion { digits, stop, boundary_steps }
}

/// One step of the Gauss map on `(0, 1]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GaussStep {
    pub digit: BigInt,
    pub image: BigRational,
}

impl GaussStep {
    /// The expansion stops after this digit.
    pub fn terminates(&self) -> bool {
        self.image.is_zero()
    }
}

/// `x ∈ (1/(k+1), 1/k]` gives digit `k` and image `(1 − kx)/x`.
pub fn gauss_step(x: &BigRational) -> Result<GaussStep> {
    if !x.is_positive() || *x > BigRational::one() {
        return Err(Error::Domain(format!("Gauss map needs 0 < x <= 1, got {}", format_rational(x))));
    }
    let inv = x.recip();
    let digit = inv.floor().to_integer();
    let image = inv - BigRational::from_integer(digit.clone());
    Ok(GaussStep { digit, image })
}

/// Partial quotients from a subdivision address `(1^{k₀}, 0, 1^{k₁}, 0, …)`:
/// each completed run gives `kⱼ + 1`; an unterminated trailing run is dropped.
pub fn cf_from_binary_word(word: &[u8]) -> Vec<u64> {
    let mut out = Vec::new();
    let mut run = 0u64;
    for &bit in word {
        if bit == 0 {
            out.push(run + 1);
            run = 0;
        } else {
            run += 1;
        }
    }
    out
}
