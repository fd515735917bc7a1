//! Geodesic polygons and their validation.
//!
//! Simplicity and orientation are decided in the Klein model, where geodesics
//! are straight chords and ideal vertices sit on the unit circle, so the
//! tests reduce to planar segment predicates with no clipping.

use super::{direction, dist, geom_tolerance, GeometryError, Vertex};
use num_complex::Complex64;
use std::f64::consts::PI;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Ccw,
    Cw,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Ccw => Orientation::Cw,
            Orientation::Cw => Orientation::Ccw,
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Orientation::Ccw => "CCW",
            Orientation::Cw => "CW",
        }
    }
}

/// Cyclic list of vertices. The orientation is the turning sense of the
/// vertex order as drawn.
#[derive(Clone, Debug, PartialEq)]
pub struct GeodesicPolygon {
    pub vertices: Vec<Vertex>,
    pub orientation: Orientation,
}

impl GeodesicPolygon {
    pub fn new(vertices: Vec<Vertex>) -> Self {
        let orientation = if klein_signed_area(&vertices) >= 0.0 {
            Orientation::Ccw
        } else {
            Orientation::Cw
        };
        GeodesicPolygon { vertices, orientation }
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn sides(&self) -> impl Iterator<Item = Segment> + '_ {
        let n = self.vertices.len();
        (0..n).map(move |i| Segment::new(self.vertices[i], self.vertices[(i + 1) % n]))
    }
}

/// A geodesic segment between two vertices (either may be ideal).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Segment {
    pub start: Vertex,
    pub end: Vertex,
}

impl Segment {
    pub fn new(start: Vertex, end: Vertex) -> Self {
        Segment { start, end }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ValidityReport {
    pub nondegenerate: bool,
    pub simple: bool,
    /// Measured turning sense; `None` when the polygon has no positive-area
    /// reading.
    pub orientation: Option<Orientation>,
    /// Interior angle at each vertex (0 at ideal vertices).
    pub interior_angles: Vec<f64>,
    pub angle_sum: f64,
    pub area: f64,
    pub reasons: Vec<String>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.nondegenerate && self.simple && self.orientation.is_some() && self.area > 0.0
    }
}

pub(crate) fn klein(v: Vertex) -> Complex64 {
    let w = v.to_disk();
    match v {
        Vertex::Ideal(_) => w,
        Vertex::Finite(_) => w * (2.0 / (1.0 + w.norm_sqr())),
    }
}

fn klein_signed_area(vertices: &[Vertex]) -> f64 {
    let pts: Vec<Complex64> = vertices.iter().map(|v| klein(*v)).collect();
    let n = pts.len();
    (0..n)
        .map(|i| {
            let a = pts[i];
            let b = pts[(i + 1) % n];
            a.re * b.im - a.im * b.re
        })
        .sum::<f64>()
        * 0.5
}

fn cross(a: Complex64, b: Complex64) -> f64 {
    a.re * b.im - a.im * b.re
}

/// Signed distance of `p` from the line through `a` and `b`.
fn side(a: Complex64, b: Complex64, p: Complex64) -> f64 {
    let ab = b - a;
    cross(ab, p - a) / ab.norm()
}

fn on_segment(a: Complex64, b: Complex64, p: Complex64, eps: f64) -> bool {
    let ab = b - a;
    let t = ((p - a) * ab.conj()).re / ab.norm_sqr();
    let len = ab.norm();
    side(a, b, p).abs() <= eps && t * len >= -eps && (t - 1.0) * len <= eps
}

fn klein_segments_meet(a: Complex64, b: Complex64, c: Complex64, d: Complex64, eps: f64) -> bool {
    let d1 = side(a, b, c);
    let d2 = side(a, b, d);
    let d3 = side(c, d, a);
    let d4 = side(c, d, b);
    if ((d1 > eps && d2 < -eps) || (d1 < -eps && d2 > eps))
        && ((d3 > eps && d4 < -eps) || (d3 < -eps && d4 > eps))
    {
        return true;
    }
    on_segment(a, b, c, eps)
        || on_segment(a, b, d, eps)
        || on_segment(c, d, a, eps)
        || on_segment(c, d, b, eps)
}

fn klein_eps() -> f64 {
    geom_tolerance() * 1e-3
}

/// Do two geodesic segments share a point (including touching)?
pub fn segments_intersect(s1: Segment, s2: Segment) -> bool {
    klein_segments_meet(klein(s1.start), klein(s1.end), klein(s2.start), klein(s2.end), klein_eps())
}

fn vertices_coincide(u: Vertex, v: Vertex, tol: f64) -> bool {
    match (u, v) {
        (Vertex::Finite(p), Vertex::Finite(q)) => dist(p, q) < tol,
        (Vertex::Ideal(a), Vertex::Ideal(b)) => a.approx_eq(b, tol),
        _ => false,
    }
}

/// Counterclockwise-sense interior angle at `b` between the incoming side
/// from `a` and the outgoing side to `c`.
fn ccw_angle(a: Vertex, b: Vertex, c: Vertex) -> Result<f64, GeometryError> {
    match b {
        Vertex::Ideal(_) => Ok(0.0),
        Vertex::Finite(b) => {
            let da = direction(b, a)?;
            let dc = direction(b, c)?;
            Ok((da - dc).rem_euclid(2.0 * PI))
        }
    }
}

/// Checks nondegeneracy, simplicity and orientation; reports angles and area.
pub fn polygon_validate(poly: &GeodesicPolygon) -> Result<ValidityReport, GeometryError> {
    let n = poly.vertices.len();
    if n < 3 {
        return Err(GeometryError::TooFewVertices(n));
    }
    let tol = geom_tolerance();
    let vs = &poly.vertices;
    let mut reasons = Vec::new();

    let mut nondegenerate = true;
    for i in 0..n {
        let j = (i + 1) % n;
        if vertices_coincide(vs[i], vs[j], tol) {
            nondegenerate = false;
            reasons.push(format!("vertices {i} and {j} coincide"));
        }
    }

    let mut ccw = Vec::with_capacity(n);
    if nondegenerate {
        for i in 0..n {
            let a = vs[(i + n - 1) % n];
            let c = vs[(i + 1) % n];
            match ccw_angle(a, vs[i], c) {
                Ok(x) => ccw.push(x),
                Err(_) => {
                    nondegenerate = false;
                    reasons.push(format!("degenerate corner at vertex {i}"));
                    ccw.push(0.0);
                }
            }
        }
    } else {
        ccw = vec![0.0; n];
    }

    let measured = if klein_signed_area(vs) >= 0.0 { Orientation::Ccw } else { Orientation::Cw };
    let interior_angles: Vec<f64> = vs
        .iter()
        .zip(&ccw)
        .map(|(v, &x)| match (v, measured) {
            (Vertex::Ideal(_), _) => 0.0,
            (_, Orientation::Ccw) => x,
            (_, Orientation::Cw) => {
                if x == 0.0 {
                    0.0
                } else {
                    2.0 * PI - x
                }
            }
        })
        .collect();
    if nondegenerate {
        for (i, (v, &ang)) in vs.iter().zip(&interior_angles).enumerate() {
            if matches!(v, Vertex::Finite(_)) && (ang < tol || ang > 2.0 * PI - tol) {
                nondegenerate = false;
                reasons.push(format!("sides fold back at vertex {i}"));
            }
        }
    }
    let angle_sum: f64 = interior_angles.iter().sum();
    let area = (n as f64 - 2.0) * PI - angle_sum;
    let orientation = if area > tol { Some(measured) } else { None };
    if orientation.is_none() {
        reasons.push(format!("non-positive area {area}"));
    }

    let eps = klein_eps();
    let pts: Vec<Complex64> = vs.iter().map(|v| klein(*v)).collect();
    let mut simple = true;
    'outer: for i in 0..n {
        for j in (i + 1)..n {
            let adjacent = j == i + 1 || (i == 0 && j == n - 1);
            if adjacent {
                continue;
            }
            let (a, b) = (pts[i], pts[(i + 1) % n]);
            let (c, d) = (pts[j], pts[(j + 1) % n]);
            if klein_segments_meet(a, b, c, d, eps) {
                simple = false;
                reasons.push(format!("sides {i} and {j} intersect"));
                break 'outer;
            }
        }
    }
    // Adjacent sides overlap only when they fold back, which the corner
    // check already caught.
    if !nondegenerate {
        simple = false;
    }

    Ok(ValidityReport {
        nondegenerate,
        simple,
        orientation,
        interior_angles,
        angle_sum,
        area,
        reasons,
    })
}
