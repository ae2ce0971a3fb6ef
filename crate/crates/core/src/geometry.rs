//! Projection of subdivision matrices to the plane triangle and SVG/JSON output.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use serde_json::{json, Value};

use crate::algebra::{format_rational, vertex_basis, Mat3, Triple};
use crate::error::{Error, Result};
use crate::family::TripMap;
use crate::limits::Limits;
use crate::stern::BinaryWord;

/// A point of the plane with exact coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PlanePoint {
    pub x: BigRational,
    pub y: BigRational,
}

impl PlanePoint {
    pub fn from_ratios(xn: i64, xd: i64, yn: i64, yd: i64) -> PlanePoint {
        PlanePoint { x: BigRational::new(xn.into(), xd.into()), y: BigRational::new(yn.into(), yd.into()) }
    }
}

/// `π(b₀, b₁, b₂) = (b₁/b₀, b₂/b₀)`.
pub fn project_pi(v: &[BigInt; 3]) -> Result<PlanePoint> {
    if v[0].is_zero() {
        return Err(Error::ZeroLeadingCoordinate);
    }
    Ok(PlanePoint {
        x: BigRational::new(v[1].clone(), v[0].clone()),
        y: BigRational::new(v[2].clone(), v[0].clone()),
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubdivisionCell {
    pub word: BinaryWord,
    /// `V·F_{i₁}⋯F_{iₙ}`.
    pub matrix: Mat3,
    pub vertices: [PlanePoint; 3],
    /// Leading coordinates of the three columns, i.e. the top row.
    pub label: Triple<BigInt>,
}

impl SubdivisionCell {
    fn from_matrix(word: BinaryWord, matrix: Mat3) -> Result<SubdivisionCell> {
        let vertices = [
            project_pi(&matrix.column(0))?,
            project_pi(&matrix.column(1))?,
            project_pi(&matrix.column(2))?,
        ];
        let label = matrix.row(0);
        Ok(SubdivisionCell { word, matrix, vertices, label })
    }

    /// Twice the signed area is the shoelace sum; this returns the area itself.
    pub fn signed_area(&self) -> BigRational {
        signed_area(&self.vertices)
    }

    pub fn area(&self) -> BigRational {
        self.signed_area().abs()
    }

    pub fn contains(&self, p: &PlanePoint) -> bool {
        in_closed_triangle(&self.vertices, p)
    }
}

pub fn signed_area(v: &[PlanePoint; 3]) -> BigRational {
    let cross = |p: &PlanePoint, q: &PlanePoint| &p.x * &q.y - &q.x * &p.y;
    let twice = cross(&v[0], &v[1]) + cross(&v[1], &v[2]) + cross(&v[2], &v[0]);
    twice / BigRational::from_integer(2.into())
}

fn orient(a: &PlanePoint, b: &PlanePoint, c: &PlanePoint) -> BigRational {
    (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x)
}

/// Exact closed point-in-triangle test, either orientation.
pub fn in_closed_triangle(v: &[PlanePoint; 3], p: &PlanePoint) -> bool {
    let d = [orient(&v[0], &v[1], p), orient(&v[1], &v[2], p), orient(&v[2], &v[0], p)];
    let has_neg = d.iter().any(Signed::is_negative);
    let has_pos = d.iter().any(Signed::is_positive);
    !(has_neg && has_pos)
}

/// The `2^depth` cells of the depth-`depth` subdivision, in word order.
pub fn subdivision(map: &TripMap, depth: usize) -> Result<Vec<SubdivisionCell>> {
    subdivision_with_limits(map, depth, &Limits::default())
}

pub fn subdivision_with_limits(map: &TripMap, depth: usize, limits: &Limits) -> Result<Vec<SubdivisionCell>> {
    limits.check_render(depth)?;
    let mut layer = vec![(BinaryWord::empty(), vertex_basis())];
    for _ in 0..depth {
        let mut next = Vec::with_capacity(layer.len() * 2);
        for (w, m) in layer {
            for bit in [0u8, 1] {
                let mut w2 = w.clone();
                w2.push(bit);
                next.push((w2, &m * map.f(bit)));
            }
        }
        layer = next;
    }
    layer.into_iter().map(|(w, m)| SubdivisionCell::from_matrix(w, m)).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SvgOptions {
    /// Label each vertex with the leading coordinate of its column.
    pub labels: bool,
    /// Side of the square drawing area in user units.
    pub size: u32,
}

impl Default for SvgOptions {
    fn default() -> SvgOptions {
        SvgOptions { labels: false, size: 1000 }
    }
}

fn fmt_coord(q: &BigRational, scale: u32) -> String {
    let v = ToPrimitive::to_f64(q).unwrap_or(f64::NAN) * f64::from(scale);
    let mut s = format!("{v:.6}");
    if s.contains('.') {
        while s.ends_with('0') {
            s.pop();
        }
        if s.ends_with('.') {
            s.pop();
        }
    }
    if s == "-0" {
        s = "0".into();
    }
    s
}

fn svg_xy(p: &PlanePoint, size: u32) -> (String, String) {
    let one = BigRational::from_integer(1.into());
    (fmt_coord(&p.x, size), fmt_coord(&(one - &p.y), size))
}

/// An SVG 1.1 document: one stroked `<polygon>` per cell, y axis pointing up.
pub fn render_svg(cells: &[SubdivisionCell], options: &SvgOptions) -> String {
    let size = options.size;
    let pad = size / 25;
    let mut out = String::new();
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{w}" viewBox="-{pad} -{pad} {w} {w}">"#,
        w = size + 2 * pad
    );
    let _ = writeln!(out, r#"<g fill="none" stroke="black" stroke-width="1" stroke-linejoin="round">"#);
    for cell in cells {
        let pts: Vec<String> = cell
            .vertices
            .iter()
            .map(|v| {
                let (x, y) = svg_xy(v, size);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(out, r#"<polygon data-word="{}" points="{}"/>"#, cell.word, pts.join(" "));
    }
    let _ = writeln!(out, "</g>");
    if options.labels {
        let mut labels: BTreeMap<PlanePoint, BigInt> = BTreeMap::new();
        for cell in cells {
            for (v, b0) in cell.vertices.iter().zip(&cell.label.0) {
                labels.entry(v.clone()).or_insert_with(|| b0.clone());
            }
        }
        let _ = writeln!(out, r#"<g font-family="sans-serif" font-size="{}" fill="black">"#, (size / 60).max(6));
        for (v, b0) in labels {
            let (x, y) = svg_xy(&v, size);
            let _ = writeln!(out, r#"<text x="{x}" y="{y}">{b0}</text>"#);
        }
        let _ = writeln!(out, "</g>");
    }
    out.push_str("</svg>\n");
    out
}

/// Cells as JSON with exact `"p/q"` coordinates.
pub fn cells_json(cells: &[SubdivisionCell]) -> Value {
    Value::Array(
        cells
            .iter()
            .map(|c| {
                json!({
                    "word": c.word.to_string(),
                    "vertices": c.vertices.iter().map(|v| json!([format_rational(&v.x), format_rational(&v.y)])).collect::<Vec<_>>(),
                    "label": c.label.0.iter().map(ToString::to_string).collect::<Vec<_>>(),
                    "area": format_rational(&c.area()),
                    "orientation": if c.signed_area().is_negative() { "cw" } else { "ccw" },
                })
            })
            .collect(),
    )
}
