//! Hyperbolic plane primitives in the upper half-plane model.
//!
//! Points are complex numbers with positive imaginary part. Ideal points live
//! on the extended real line. The Poincaré disk appears only through
//! [`to_disk`] and [`from_disk`], which the renderer uses.
//!
//! Fermi coordinates on a geodesic with real endpoints `a < b` are based at the
//! Euclidean top of the semicircle, arclength grows toward `b`, and a positive
//! offset lies to the left of the direction of travel. A vertical geodesic
//! `{a, ∞}` is based at `a + i` and travels upward.

mod polygon;
mod tolerance;

pub use polygon::{
    polygon_validate, segments_intersect, GeodesicPolygon, Orientation, Segment, ValidityReport,
};
pub use tolerance::{geom_tolerance, set_geom_tolerance, TOLERANCE_ENV};

use num_complex::Complex64;
use std::cmp::Ordering;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use thiserror::Error;

/// Errors raised by the plane primitives.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("point is not in the upper half-plane: {0}")]
    NotInHalfPlane(Complex64),
    #[error("points coincide")]
    CoincidentPoints,
    #[error("degenerate vertex: a neighbour coincides with the vertex")]
    DegenerateVertex,
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("trace {0} is not hyperbolic (needs t > 2)")]
    TraceNotHyperbolic(f64),
    #[error("geodesics are not ultraparallel")]
    NotUltraparallel,
}

/// A finite point of the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct HPoint(Complex64);

impl HPoint {
    /// Panics unless `y > 0`; use [`HPoint::try_new`] for untrusted input.
    pub fn new(x: f64, y: f64) -> Self {
        Self::try_new(x, y).expect("imaginary part must be positive")
    }

    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        Self::from_complex(Complex64::new(x, y))
    }

    pub fn from_complex(z: Complex64) -> Result<Self, GeometryError> {
        if z.im > 0.0 && z.re.is_finite() && z.im.is_finite() {
            Ok(HPoint(z))
        } else {
            Err(GeometryError::NotInHalfPlane(z))
        }
    }

    /// Wraps a value produced by an isometry. Round-off can push points that
    /// sit extremely close to the boundary onto it; those are nudged back.
    pub(crate) fn from_image(z: Complex64) -> Self {
        if z.im > 0.0 {
            HPoint(z)
        } else {
            HPoint(Complex64::new(z.re, f64::MIN_POSITIVE))
        }
    }

    pub fn i() -> Self {
        HPoint(Complex64::new(0.0, 1.0))
    }

    pub fn z(self) -> Complex64 {
        self.0
    }

    pub fn x(self) -> f64 {
        self.0.re
    }

    pub fn y(self) -> f64 {
        self.0.im
    }

    pub fn to_disk(self) -> Complex64 {
        to_disk(self.0)
    }
}

impl fmt::Display for HPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}+{}i", self.0.re, self.0.im)
    }
}

/// A point of the boundary circle: a real number or infinity.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum BoundaryPoint {
    Real(f64),
    Infinity,
}

impl BoundaryPoint {
    pub fn is_infinite(self) -> bool {
        matches!(self, BoundaryPoint::Infinity)
    }

    /// Image on the unit circle under the Cayley transform.
    pub fn to_disk(self) -> Complex64 {
        match self {
            BoundaryPoint::Infinity => Complex64::new(1.0, 0.0),
            BoundaryPoint::Real(x) => to_disk(Complex64::new(x, 0.0)),
        }
    }

    /// Approximate equality, comparing on the unit circle so that huge reals
    /// are close to infinity.
    pub fn approx_eq(self, other: BoundaryPoint, tol: f64) -> bool {
        (self.to_disk() - other.to_disk()).norm() < tol
    }
}

impl PartialOrd for BoundaryPoint {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (BoundaryPoint::Infinity, BoundaryPoint::Infinity) => Some(Ordering::Equal),
            (BoundaryPoint::Infinity, _) => Some(Ordering::Greater),
            (_, BoundaryPoint::Infinity) => Some(Ordering::Less),
            (BoundaryPoint::Real(a), BoundaryPoint::Real(b)) => a.partial_cmp(b),
        }
    }
}

impl fmt::Display for BoundaryPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BoundaryPoint::Real(x) => write!(f, "{x}"),
            BoundaryPoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Polygon vertex: finite or ideal.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Vertex {
    Finite(HPoint),
    Ideal(BoundaryPoint),
}

impl Vertex {
    pub fn finite(self) -> Option<HPoint> {
        match self {
            Vertex::Finite(p) => Some(p),
            Vertex::Ideal(_) => None,
        }
    }

    pub fn to_disk(self) -> Complex64 {
        match self {
            Vertex::Finite(p) => p.to_disk(),
            Vertex::Ideal(b) => b.to_disk(),
        }
    }
}

impl From<HPoint> for Vertex {
    fn from(p: HPoint) -> Self {
        Vertex::Finite(p)
    }
}

impl From<BoundaryPoint> for Vertex {
    fn from(b: BoundaryPoint) -> Self {
        Vertex::Ideal(b)
    }
}

/// Real 2×2 matrix acting by Möbius transformations. Determinant is not
/// enforced here; callers keep it at ±1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Mat2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
}

impl Mat2 {
    pub const IDENTITY: Mat2 = Mat2 { a: 1.0, b: 0.0, c: 0.0, d: 1.0 };

    pub const fn new(a: f64, b: f64, c: f64, d: f64) -> Self {
        Mat2 { a, b, c, d }
    }

    pub fn det(&self) -> f64 {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> f64 {
        self.a + self.d
    }

    /// Inverse for determinant-one matrices (the adjugate).
    pub fn adjugate(&self) -> Mat2 {
        Mat2::new(self.d, -self.b, -self.c, self.a)
    }

    pub fn scale(&self, k: f64) -> Mat2 {
        Mat2::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    pub fn neg(&self) -> Mat2 {
        self.scale(-1.0)
    }

    /// Rescales so that `|det| = 1`.
    pub fn unimodular(&self) -> Mat2 {
        self.scale(1.0 / self.det().abs().sqrt())
    }

    pub fn entries(&self) -> [f64; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn frobenius_distance(&self, other: &Mat2) -> f64 {
        let [a, b, c, d] = self.entries();
        let [e, f, g, h] = other.entries();
        ((a - e).powi(2) + (b - f).powi(2) + (c - g).powi(2) + (d - h).powi(2)).sqrt()
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        (z * self.a + self.b) / (z * self.c + self.d)
    }

    pub fn apply_point(&self, p: HPoint) -> HPoint {
        HPoint::from_image(self.apply(p.0))
    }

    pub fn apply_boundary(&self, x: BoundaryPoint) -> BoundaryPoint {
        match x {
            BoundaryPoint::Infinity => {
                if self.c == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Real(self.a / self.c)
                }
            }
            BoundaryPoint::Real(x) => {
                let den = self.c * x + self.d;
                if den == 0.0 {
                    BoundaryPoint::Infinity
                } else {
                    BoundaryPoint::Real((self.a * x + self.b) / den)
                }
            }
        }
    }

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        match v {
            Vertex::Finite(p) => Vertex::Finite(self.apply_point(p)),
            Vertex::Ideal(x) => Vertex::Ideal(self.apply_boundary(x)),
        }
    }
}

impl std::ops::Mul for Mat2 {
    type Output = Mat2;
    fn mul(self, o: Mat2) -> Mat2 {
        Mat2::new(
            self.a * o.a + self.b * o.c,
            self.a * o.b + self.b * o.d,
            self.c * o.a + self.d * o.c,
            self.c * o.b + self.d * o.d,
        )
    }
}

impl std::ops::Add for Mat2 {
    type Output = Mat2;
    fn add(self, o: Mat2) -> Mat2 {
        Mat2::new(self.a + o.a, self.b + o.b, self.c + o.c, self.d + o.d)
    }
}

/// Unordered pair of distinct boundary points, stored with `a < b`
/// (infinity sorts last).
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Geodesic {
    a: BoundaryPoint,
    b: BoundaryPoint,
}

impl Geodesic {
    pub fn new(p: BoundaryPoint, q: BoundaryPoint) -> Result<Self, GeometryError> {
        match p.partial_cmp(&q) {
            Some(Ordering::Less) => Ok(Geodesic { a: p, b: q }),
            Some(Ordering::Greater) => Ok(Geodesic { a: q, b: p }),
            _ => Err(GeometryError::CoincidentPoints),
        }
    }

    pub fn from_reals(a: f64, b: f64) -> Result<Self, GeometryError> {
        Geodesic::new(BoundaryPoint::Real(a), BoundaryPoint::Real(b))
    }

    /// The imaginary axis `{0, ∞}`.
    pub fn imaginary_axis() -> Self {
        Geodesic { a: BoundaryPoint::Real(0.0), b: BoundaryPoint::Infinity }
    }

    pub fn endpoints(&self) -> (BoundaryPoint, BoundaryPoint) {
        (self.a, self.b)
    }

    /// Same unordered endpoints within `tol`, compared on the unit circle.
    pub fn approx_eq(&self, other: &Geodesic, tol: f64) -> bool {
        (self.a.approx_eq(other.a, tol) && self.b.approx_eq(other.b, tol))
            || (self.a.approx_eq(other.b, tol) && self.b.approx_eq(other.a, tol))
    }

    /// Orientation-preserving map taking the imaginary axis to this geodesic,
    /// `i` to the base point and `∞` to `b`.
    pub fn frame(&self) -> Mat2 {
        match (self.a, self.b) {
            (BoundaryPoint::Real(a), BoundaryPoint::Infinity) => Mat2::new(1.0, a, 0.0, 1.0),
            (BoundaryPoint::Real(a), BoundaryPoint::Real(b)) => {
                let s = (b - a).sqrt();
                Mat2::new(b / s, a / s, 1.0 / s, 1.0 / s)
            }
            _ => unreachable!("geodesic endpoints are ordered with infinity last"),
        }
    }

    /// Base point of the Fermi coordinates.
    pub fn base_point(&self) -> HPoint {
        self.frame().apply_point(HPoint::i())
    }

    /// Does `p` lie on the geodesic, in Euclidean terms?
    pub fn incidence_error(&self, p: HPoint) -> f64 {
        match (self.a, self.b) {
            (BoundaryPoint::Real(a), BoundaryPoint::Infinity) => (p.x() - a).abs(),
            (BoundaryPoint::Real(a), BoundaryPoint::Real(b)) => {
                let c = 0.5 * (a + b);
                let r = 0.5 * (b - a);
                ((p.z() - c).norm() - r).abs()
            }
            _ => unreachable!(),
        }
    }

    /// Reflection across this geodesic as a determinant −1 matrix acting on
    /// the conjugate: `z ↦ M(z̄)`.
    pub fn reflection_matrix(&self) -> Mat2 {
        let f = self.frame();
        f * Mat2::new(-1.0, 0.0, 0.0, 1.0) * f.adjugate()
    }
}

impl fmt::Display for Geodesic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}, {}}}", self.a, self.b)
    }
}

/// Cayley transform from the half-plane to the unit disk.
pub fn to_disk(z: Complex64) -> Complex64 {
    let i = Complex64::i();
    (z - i) / (z + i)
}

/// Inverse Cayley transform.
pub fn from_disk(w: Complex64) -> Complex64 {
    let i = Complex64::i();
    i * (Complex64::new(1.0, 0.0) + w) / (Complex64::new(1.0, 0.0) - w)
}

/// Wraps an angle into `(-π, π]`.
pub fn wrap_angle(x: f64) -> f64 {
    let mut y = x.rem_euclid(2.0 * PI);
    if y > PI {
        y -= 2.0 * PI;
    }
    y
}

/// Hyperbolic distance between two finite points.
pub fn dist(p: HPoint, q: HPoint) -> f64 {
    let chord = (p.z() - q.z()).norm();
    2.0 * (chord / (2.0 * (p.y() * q.y()).sqrt())).asinh()
}

/// Euclidean-picture direction (radians, counterclockwise from the positive
/// real axis) of the geodesic leaving `p` toward `q`.
pub fn direction(p: HPoint, q: Vertex) -> Result<f64, GeometryError> {
    let w = match q {
        Vertex::Ideal(BoundaryPoint::Infinity) => Complex64::new(1.0, 0.0),
        Vertex::Ideal(BoundaryPoint::Real(x)) => {
            let x = Complex64::new(x, 0.0);
            (x - p.z()) / (x - p.z().conj())
        }
        Vertex::Finite(q) => {
            let w = (q.z() - p.z()) / (q.z() - p.z().conj());
            if w.norm() < 1e-15 {
                return Err(GeometryError::DegenerateVertex);
            }
            w
        }
    };
    Ok(wrap_angle(w.arg() + FRAC_PI_2))
}

/// Unsigned angle at `b` between the geodesic segments toward `a` and `c`.
pub fn interior_angle(a: Vertex, b: HPoint, c: Vertex) -> Result<f64, GeometryError> {
    let da = direction(b, a)?;
    let dc = direction(b, c)?;
    Ok(wrap_angle(dc - da).abs())
}

/// The geodesic through two vertices, at most one of them ideal.
pub fn geodesic_through(p: Vertex, q: Vertex) -> Result<Geodesic, GeometryError> {
    match (p, q) {
        (Vertex::Ideal(a), Vertex::Ideal(b)) => Geodesic::new(a, b),
        (Vertex::Finite(p), other) | (other, Vertex::Finite(p)) => {
            if let Vertex::Finite(q) = other {
                if dist(p, q) < 1e-15 {
                    return Err(GeometryError::CoincidentPoints);
                }
            }
            // Move p to i, where the circle through i and w has endpoints with
            // product -1; this keeps nearly vertical geodesics well conditioned.
            let (x, y) = (p.x(), p.y());
            let to_i = Mat2::new(1.0 / y.sqrt(), -x / y.sqrt(), 0.0, y.sqrt());
            let back = Mat2::new(y.sqrt(), x / y.sqrt(), 0.0, 1.0 / y.sqrt());
            let ends = match to_i.apply_vertex(other) {
                Vertex::Ideal(BoundaryPoint::Infinity) => {
                    (BoundaryPoint::Real(0.0), BoundaryPoint::Infinity)
                }
                Vertex::Ideal(BoundaryPoint::Real(e)) if e == 0.0 => {
                    (BoundaryPoint::Real(0.0), BoundaryPoint::Infinity)
                }
                Vertex::Ideal(BoundaryPoint::Real(e)) => {
                    (BoundaryPoint::Real(e), BoundaryPoint::Real(-1.0 / e))
                }
                Vertex::Finite(w) => {
                    let w = w.z();
                    if w.re == 0.0 {
                        (BoundaryPoint::Real(0.0), BoundaryPoint::Infinity)
                    } else {
                        let c = (w.norm_sqr() - 1.0) / (2.0 * w.re);
                        let r = (c * c + 1.0).sqrt();
                        let e1 = c + c.signum() * r;
                        (BoundaryPoint::Real(e1), BoundaryPoint::Real(-1.0 / e1))
                    }
                }
            };
            Geodesic::new(back.apply_boundary(ends.0), back.apply_boundary(ends.1))
        }
    }
}

/// Point at signed arclength `s` along `l` and signed offset `h` to its left.
pub fn fermi_point(l: &Geodesic, s: f64, h: f64) -> HPoint {
    let w = Complex64::new(-h.tanh(), 1.0 / h.cosh()) * s.exp();
    l.frame().apply_point(HPoint::from_image(w))
}

/// Inverse of [`fermi_point`]: `(arclength of the foot, signed offset)`.
pub fn fermi_coords(l: &Geodesic, p: HPoint) -> (f64, f64) {
    let w = l.frame().adjugate().apply(p.z());
    let s = w.norm().ln();
    let h = (-w.re / w.im).asinh();
    (s, h)
}

/// Distance from a point to a geodesic.
pub fn dist_to_geodesic(l: &Geodesic, p: HPoint) -> f64 {
    fermi_coords(l, p).1.abs()
}

/// Reflection of a point across a geodesic.
pub fn reflect(l: &Geodesic, p: HPoint) -> HPoint {
    let m = l.reflection_matrix();
    HPoint::from_image(m.apply(p.z().conj()))
}

pub fn reflect_vertex(l: &Geodesic, v: Vertex) -> Vertex {
    match v {
        Vertex::Finite(p) => Vertex::Finite(reflect(l, p)),
        Vertex::Ideal(x) => Vertex::Ideal(l.reflection_matrix().apply_boundary(x)),
    }
}

/// Length of the closed geodesic whose holonomy has trace `t`.
pub fn translation_length_for_trace(t: f64) -> Result<f64, GeometryError> {
    if t > 2.0 {
        Ok(2.0 * (t / 2.0).acosh())
    } else {
        Err(GeometryError::TraceNotHyperbolic(t))
    }
}

/// Half-width of the embedded collar about a closed geodesic of trace `t`.
pub fn collar_width(t: f64) -> Result<f64, GeometryError> {
    let d = translation_length_for_trace(t)?;
    Ok((1.0 / (d / 2.0).sinh()).asinh())
}

/// Endpoints of `l` expressed in the frame of `base` (which is then the
/// imaginary axis).
fn endpoints_in_frame(base: &Geodesic, l: &Geodesic) -> (BoundaryPoint, BoundaryPoint) {
    let inv = base.frame().adjugate();
    (inv.apply_boundary(l.a), inv.apply_boundary(l.b))
}

/// The common perpendicular of two ultraparallel geodesics.
pub fn common_perpendicular(l1: &Geodesic, l2: &Geodesic) -> Result<Geodesic, GeometryError> {
    let (u, v) = endpoints_in_frame(l1, l2);
    let (u, v) = match (u, v) {
        (BoundaryPoint::Real(u), BoundaryPoint::Real(v)) => (u, v),
        _ => return Err(GeometryError::NotUltraparallel),
    };
    let tol = 1e-12;
    let prod = u * v;
    if !(prod > 0.0) || u.abs().min(v.abs()) < tol || u.abs().max(v.abs()) > 1.0 / tol {
        return Err(GeometryError::NotUltraparallel);
    }
    let r = prod.sqrt();
    let f = l1.frame();
    Geodesic::new(
        f.apply_boundary(BoundaryPoint::Real(-r)),
        f.apply_boundary(BoundaryPoint::Real(r)),
    )
}

/// Crossing point of two geodesics, if they cross in the interior.
pub fn geodesic_intersection(l1: &Geodesic, l2: &Geodesic) -> Option<HPoint> {
    let (u, v) = endpoints_in_frame(l1, l2);
    let (u, v) = match (u, v) {
        (BoundaryPoint::Real(u), BoundaryPoint::Real(v)) => (u, v),
        _ => return None,
    };
    let prod = u * v;
    if !(prod < 0.0) {
        return None;
    }
    let y = (-prod).sqrt();
    Some(l1.frame().apply_point(HPoint::from_image(Complex64::new(0.0, y))))
}

/// Closest point of `l` to an ideal point not on it: the foot of the
/// perpendicular from that ideal point.
pub fn foot_from_ideal(l: &Geodesic, x: BoundaryPoint) -> Option<HPoint> {
    let inv = l.frame().adjugate();
    match inv.apply_boundary(x) {
        BoundaryPoint::Real(u) if u != 0.0 => {
            Some(l.frame().apply_point(HPoint::from_image(Complex64::new(0.0, u.abs()))))
        }
        _ => None,
    }
}

/// Foot on `l` of the perpendicular dropped from `p`.
pub fn project_to_geodesic(l: &Geodesic, p: HPoint) -> HPoint {
    let (s, _) = fermi_coords(l, p);
    fermi_point(l, s, 0.0)
}

/// Hyperbolic area of a finite-vertex polygon via Gauss–Bonnet given its
/// interior angles.
pub fn gauss_bonnet_area(n: usize, angle_sum: f64) -> f64 {
    (n as f64 - 2.0) * PI - angle_sum
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn midpoint_integral(p: HPoint, q: HPoint, steps: usize) -> f64 {
        // ds = |dz|/y along the geodesic, sampled through Fermi coordinates.
        let l = geodesic_through(p.into(), q.into()).unwrap();
        let (s0, _) = fermi_coords(&l, p);
        let (s1, _) = fermi_coords(&l, q);
        let mut total = 0.0;
        for k in 0..steps {
            let a = fermi_point(&l, s0 + (s1 - s0) * k as f64 / steps as f64, 0.0);
            let b = fermi_point(&l, s0 + (s1 - s0) * (k + 1) as f64 / steps as f64, 0.0);
            let mid = 0.5 * (a.y() + b.y());
            total += (a.z() - b.z()).norm() / mid;
        }
        total
    }

    #[test]
    fn distance_examples() {
        assert_eq!(dist(HPoint::i(), HPoint::i()), 0.0);
        assert_abs_diff_eq!(dist(HPoint::i(), HPoint::new(0.0, 2.0)), 2f64.ln(), epsilon = 1e-14);
        let p = HPoint::i();
        let q = HPoint::new(1.0, 2.0);
        let d = dist(p, q);
        let cosh = 1.0 + (p.z() - q.z()).norm_sqr() / (2.0 * p.y() * q.y());
        assert_abs_diff_eq!(d.cosh(), cosh, epsilon = 1e-12);
        assert_abs_diff_eq!(d, midpoint_integral(p, q, 20000), epsilon = 1e-7);
    }

    #[test]
    fn geodesic_through_examples() {
        let l = geodesic_through(HPoint::i().into(), HPoint::new(0.0, 2.0).into()).unwrap();
        assert_eq!(l.endpoints(), (BoundaryPoint::Real(0.0), BoundaryPoint::Infinity));

        let a = 0.3f64;
        let p = HPoint::new(-a.cos(), a.sin());
        let q = HPoint::new(a.cos(), a.sin());
        let l = geodesic_through(p.into(), q.into()).unwrap();
        assert!(l.approx_eq(&Geodesic::from_reals(-1.0, 1.0).unwrap(), 1e-12));

        let p = HPoint::i();
        let q = HPoint::new(1.0, 1.0);
        let l = geodesic_through(p.into(), q.into()).unwrap();
        assert!(l.incidence_error(p) < 1e-12);
        assert!(l.incidence_error(q) < 1e-12);
        // centre 1/2, radius sqrt(5)/2
        let r = 5f64.sqrt() / 2.0;
        assert!(l.approx_eq(&Geodesic::from_reals(0.5 - r, 0.5 + r).unwrap(), 1e-12));

        assert_eq!(
            geodesic_through(HPoint::i().into(), HPoint::i().into()),
            Err(GeometryError::CoincidentPoints)
        );
    }

    #[test]
    fn geodesic_through_ideal() {
        let l = geodesic_through(HPoint::i().into(), BoundaryPoint::Real(1.0).into()).unwrap();
        assert!(l.approx_eq(&Geodesic::from_reals(-1.0, 1.0).unwrap(), 1e-12));
        let l = geodesic_through(BoundaryPoint::Infinity.into(), HPoint::new(3.0, 1.0).into()).unwrap();
        assert!(l.approx_eq(&Geodesic::new(BoundaryPoint::Real(3.0), BoundaryPoint::Infinity).unwrap(), 1e-12));
    }

    #[test]
    fn interior_angle_examples() {
        let a = Vertex::Finite(HPoint::new(0.0, 2.0));
        let c = Vertex::Ideal(BoundaryPoint::Real(1.0));
        assert_abs_diff_eq!(interior_angle(a, HPoint::i(), c).unwrap(), FRAC_PI_2, epsilon = 1e-12);
        let c = Vertex::Finite(HPoint::new(0.0, 0.5));
        assert_abs_diff_eq!(interior_angle(a, HPoint::i(), c).unwrap(), PI, epsilon = 1e-12);
        assert_eq!(
            interior_angle(Vertex::Finite(HPoint::i()), HPoint::i(), c),
            Err(GeometryError::DegenerateVertex)
        );
    }

    #[test]
    fn interior_angle_matches_disk_picture() {
        // In the disk, geodesics through 0 are straight, so the angle at the
        // origin is the Euclidean angle between the two target points.
        let b = HPoint::i();
        let a = HPoint::new(0.4, 2.3);
        let c = HPoint::new(-1.7, 0.6);
        let wa = a.to_disk();
        let wc = c.to_disk();
        let expected = wrap_angle(wc.arg() - wa.arg()).abs();
        assert_abs_diff_eq!(interior_angle(a.into(), b, c.into()).unwrap(), expected, epsilon = 1e-12);
    }

    #[test]
    fn fermi_examples() {
        let l = Geodesic::imaginary_axis();
        assert_abs_diff_eq!((fermi_point(&l, 0.0, 0.0).z() - Complex64::i()).norm(), 0.0, epsilon = 1e-15);
        let p = fermi_point(&l, 2f64.ln(), 0.0);
        assert_abs_diff_eq!((p.z() - Complex64::new(0.0, 2.0)).norm(), 0.0, epsilon = 1e-14);
        // positive offset is to the left of upward travel
        assert!(fermi_point(&l, 0.0, 0.5).x() < 0.0);

        let l = Geodesic::from_reals(-1.0, 3.0).unwrap();
        let p = fermi_point(&l, 0.5, 0.3);
        let foot = fermi_point(&l, 0.5, 0.0);
        assert_abs_diff_eq!(dist(p, foot), 0.3, epsilon = 1e-12);
        assert_abs_diff_eq!(dist(l.base_point(), foot), 0.5, epsilon = 1e-12);
        // the foot really is the closest point of l
        for k in -20..=20 {
            let other = fermi_point(&l, 0.5 + k as f64 * 0.05, 0.0);
            assert!(dist(p, other) >= 0.3 - 1e-12);
        }
        assert_abs_diff_eq!(l.base_point().x(), 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(l.base_point().y(), 2.0, epsilon = 1e-14);
    }

    #[test]
    fn collar_width_examples() {
        assert_abs_diff_eq!(translation_length_for_trace(3.0).unwrap(), 1.9248473002384139, epsilon = 1e-12);
        assert_abs_diff_eq!(collar_width(3.0).unwrap(), 0.8047189562170501, epsilon = 1e-12);
        assert!(collar_width(2.0 + 1e-8).unwrap() > 8.0);
        assert!(collar_width(10.0).unwrap() < collar_width(3.0).unwrap());
        assert_eq!(collar_width(2.0), Err(GeometryError::TraceNotHyperbolic(2.0)));
    }

    #[test]
    fn common_perpendicular_examples() {
        let l1 = Geodesic::from_reals(-2.0, -1.0).unwrap();
        let l2 = Geodesic::from_reals(1.0, 2.0).unwrap();
        let m = common_perpendicular(&l1, &l2).unwrap();
        assert!(m.approx_eq(&Geodesic::from_reals(-2f64.sqrt(), 2f64.sqrt()).unwrap(), 1e-12));
        for l in [l1, l2] {
            let x = geodesic_intersection(&m, &l).unwrap();
            let (am, bm) = m.endpoints();
            let (al, _) = l.endpoints();
            let angle = interior_angle(am.into(), x, al.into()).unwrap();
            let other = interior_angle(bm.into(), x, al.into()).unwrap();
            assert_abs_diff_eq!(angle, FRAC_PI_2, epsilon = 1e-9);
            assert_abs_diff_eq!(other, FRAC_PI_2, epsilon = 1e-9);
        }

        let m = common_perpendicular(&Geodesic::imaginary_axis(), &l2).unwrap();
        assert!(m.approx_eq(&Geodesic::from_reals(-2f64.sqrt(), 2f64.sqrt()).unwrap(), 1e-12));

        let crossing = Geodesic::from_reals(-1.0, 1.0).unwrap();
        assert_eq!(
            common_perpendicular(&crossing, &Geodesic::imaginary_axis()),
            Err(GeometryError::NotUltraparallel)
        );
    }

    #[test]
    fn reflection_fixes_geodesic_and_is_involutive() {
        let l = Geodesic::from_reals(-0.5, 2.0).unwrap();
        let on = fermi_point(&l, 0.7, 0.0);
        assert_abs_diff_eq!((reflect(&l, on).z() - on.z()).norm(), 0.0, epsilon = 1e-12);
        let p = fermi_point(&l, 0.2, 0.9);
        let r = reflect(&l, p);
        let (s, h) = fermi_coords(&l, r);
        assert_abs_diff_eq!(s, 0.2, epsilon = 1e-12);
        assert_abs_diff_eq!(h, -0.9, epsilon = 1e-12);
    }

    #[test]
    fn disk_round_trip() {
        let z = Complex64::new(0.3, 1.7);
        assert_abs_diff_eq!((from_disk(to_disk(z)) - z).norm(), 0.0, epsilon = 1e-14);
        assert_abs_diff_eq!(to_disk(Complex64::i()).norm(), 0.0, epsilon = 1e-15);
    }
}
