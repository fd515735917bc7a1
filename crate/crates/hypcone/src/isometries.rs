//! Orientation-preserving isometries of the hyperbolic plane.
//!
//! An [`Isometry`] is a determinant-one matrix with a canonical sign: positive
//! trace, or for trace zero a positive lower-left entry (then a positive
//! upper-right entry). Character computations that need the SL(2,ℝ) sign work
//! with raw [`Mat2`] values instead.
//!
//! Rotation angles are measured in the sense in which a matrix
//! `(cos t, -sin t; sin t, cos t)` has angle `2t`; that is the sense in which
//! the induced map on directions of ℝ² turns forward.

use crate::plane_geometry::{
    common_perpendicular, dist, direction, geom_tolerance, BoundaryPoint, Geodesic, HPoint, Mat2,
    Vertex,
};
use num_complex::Complex64;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;
use thiserror::Error;

/// Trace tolerance separating the three classes.
pub const CLASSIFY_TOLERANCE: f64 = 1e-9;
/// Frobenius distance from ±I below which a matrix counts as the identity.
pub const IDENTITY_TOLERANCE: f64 = 1e-8;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum IsometryError {
    #[error("matrix determinant {0} is not positive")]
    NonPositiveDeterminant(f64),
    #[error("segment lengths differ: {0} vs {1}")]
    LengthMismatch(f64, f64),
    #[error("segment has zero length")]
    DegenerateSegment,
    #[error("reflection lines coincide")]
    IdenticalLines,
    #[error("isometries are not conjugate: {0}")]
    NotConjugate(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ParabolicSense {
    /// The lifted circle map moves every direction forward.
    Plus,
    /// The lifted circle map moves every direction backward.
    Minus,
}

impl ParabolicSense {
    pub fn sign(self) -> i64 {
        match self {
            ParabolicSense::Plus => 1,
            ParabolicSense::Minus => -1,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            ParabolicSense::Plus => ParabolicSense::Minus,
            ParabolicSense::Minus => ParabolicSense::Plus,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum IsoKind {
    Identity,
    /// Rotation angle in `(0, 2π)`.
    Elliptic { angle: f64 },
    Parabolic { sense: ParabolicSense },
    /// Translation length.
    Hyperbolic { length: f64 },
}

impl IsoKind {
    pub fn label(&self) -> &'static str {
        match self {
            IsoKind::Identity => "IDENTITY",
            IsoKind::Elliptic { .. } => "ELLIPTIC",
            IsoKind::Parabolic { .. } => "PARABOLIC",
            IsoKind::Hyperbolic { .. } => "HYPERBOLIC",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct IsoClass {
    pub kind: IsoKind,
    /// Set when `||Tr| - 2|` is nonzero but below the classification
    /// tolerance, so the parabolic label was forced.
    pub near_parabolic: bool,
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum FixedData {
    Everything,
    Center(HPoint),
    Point(BoundaryPoint),
    Axis { axis: Geodesic, attracting: BoundaryPoint },
}

/// Canonical PSL(2,ℝ) element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Isometry {
    m: Mat2,
}

fn canonical_sign(m: Mat2) -> Mat2 {
    let tr = m.trace();
    let flip = if tr.abs() >= 1e-12 {
        tr < 0.0
    } else if m.c.abs() >= 1e-12 {
        m.c < 0.0
    } else {
        m.b < 0.0
    };
    if flip {
        m.neg()
    } else {
        m
    }
}

/// Map `z ↦ y z + x` sending `i` to `p`, as a determinant-one matrix.
pub(crate) fn point_frame(p: HPoint) -> Mat2 {
    let s = p.y().sqrt();
    Mat2::new(s, p.x() / s, 0.0, 1.0 / s)
}

/// Matrix turning the picture counterclockwise by `angle` about `i`.
fn ccw_rotation_at_i(angle: f64) -> Mat2 {
    let (s, c) = (angle / 2.0).sin_cos();
    Mat2::new(c, s, -s, c)
}

impl Isometry {
    pub fn identity() -> Self {
        Isometry { m: Mat2::IDENTITY }
    }

    /// Normalizes any positive-determinant matrix.
    pub fn from_mat(m: Mat2) -> Result<Self, IsometryError> {
        let det = m.det();
        if !(det > 0.0) || !det.is_finite() {
            return Err(IsometryError::NonPositiveDeterminant(det));
        }
        Ok(Isometry { m: canonical_sign(m.scale(1.0 / det.sqrt())) })
    }

    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self, IsometryError> {
        Self::from_mat(Mat2::new(a, b, c, d))
    }

    /// For products of isometries, whose determinant is one up to round-off.
    /// When cancellation in `ad - bc` swamps that, the matrix is kept as is.
    pub(crate) fn from_product(m: Mat2) -> Self {
        match Isometry::from_mat(m) {
            Ok(a) if (a.m.det() - 1.0).abs() < 1e-6 => a,
            _ => {
                assert!(m.entries().iter().all(|v| v.is_finite()), "non-finite isometry product");
                Isometry { m: canonical_sign(m) }
            }
        }
    }

    pub fn matrix(&self) -> Mat2 {
        self.m
    }

    pub fn entries(&self) -> [f64; 4] {
        self.m.entries()
    }

    pub fn trace(&self) -> f64 {
        self.m.trace()
    }

    pub fn inverse(&self) -> Self {
        Isometry { m: canonical_sign(self.m.adjugate()) }
    }

    pub fn compose(&self, other: &Isometry) -> Self {
        Isometry::from_product(self.m * other.m)
    }

    pub fn pow(&self, n: i64) -> Self {
        let base = if n < 0 { self.inverse() } else { *self };
        let mut out = Isometry::identity();
        for _ in 0..n.unsigned_abs() {
            out = out.compose(&base);
        }
        out
    }

    pub fn apply_point(&self, p: HPoint) -> HPoint {
        self.m.apply_point(p)
    }

    pub fn apply_boundary(&self, x: BoundaryPoint) -> BoundaryPoint {
        self.m.apply_boundary(x)
    }

    pub fn apply_vertex(&self, v: Vertex) -> Vertex {
        self.m.apply_vertex(v)
    }

    pub fn apply_geodesic(&self, l: &Geodesic) -> Geodesic {
        let (a, b) = l.endpoints();
        Geodesic::new(self.apply_boundary(a), self.apply_boundary(b))
            .expect("isometries keep endpoints distinct")
    }

    /// Frobenius distance to the nearer of ±I.
    pub fn identity_residual(&self) -> f64 {
        let d1 = self.m.frobenius_distance(&Mat2::IDENTITY);
        let d2 = self.m.frobenius_distance(&Mat2::IDENTITY.neg());
        d1.min(d2)
    }

    pub fn is_identity(&self) -> bool {
        self.identity_residual() < IDENTITY_TOLERANCE
    }

    /// Frobenius distance in PSL(2,ℝ), minimizing over the sign.
    pub fn distance(&self, other: &Isometry) -> f64 {
        self.m
            .frobenius_distance(&other.m)
            .min(self.m.frobenius_distance(&other.m.neg()))
    }

    pub fn classify(&self) -> IsoClass {
        let tr = self.trace().abs();
        if self.is_identity() {
            return IsoClass { kind: IsoKind::Identity, near_parabolic: false };
        }
        let gap = tr - 2.0;
        if gap.abs() < CLASSIFY_TOLERANCE {
            return IsoClass {
                kind: IsoKind::Parabolic { sense: self.parabolic_sense() },
                near_parabolic: gap != 0.0,
            };
        }
        let kind = if gap > 0.0 {
            IsoKind::Hyperbolic { length: 2.0 * (tr / 2.0).acosh() }
        } else {
            IsoKind::Elliptic { angle: self.rotation_angle() }
        };
        IsoClass { kind, near_parabolic: false }
    }

    /// Rotation angle in `(0, 2π)` for an elliptic element.
    fn rotation_angle(&self) -> f64 {
        let c = (self.trace() / 2.0).clamp(-1.0, 1.0);
        let s = self.m.c.signum() * (1.0 - c * c).sqrt();
        let half = s.atan2(c).rem_euclid(PI);
        2.0 * half
    }

    fn parabolic_sense(&self) -> ParabolicSense {
        // A - I has rank one; the sign of c - b says which way directions turn.
        let m = self.m;
        if m.c - m.b > 0.0 {
            ParabolicSense::Plus
        } else {
            ParabolicSense::Minus
        }
    }

    pub fn fixed_data(&self) -> FixedData {
        match self.classify().kind {
            IsoKind::Identity => FixedData::Everything,
            IsoKind::Elliptic { .. } => {
                let m = self.m;
                let disc = (4.0 - m.trace().powi(2)).max(0.0).sqrt();
                let z = Complex64::new(m.a - m.d, m.c.signum() * disc) / (2.0 * m.c);
                FixedData::Center(HPoint::from_complex(z).unwrap_or_else(|_| {
                    HPoint::from_complex(Complex64::new(z.re, z.im.abs().max(f64::MIN_POSITIVE)))
                        .expect("center has positive imaginary part")
                }))
            }
            IsoKind::Parabolic { .. } => {
                let m = self.m;
                let scale = m.entries().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
                if m.c.abs() <= 1e-14 * scale {
                    FixedData::Point(BoundaryPoint::Infinity)
                } else {
                    FixedData::Point(BoundaryPoint::Real((m.a - m.d) / (2.0 * m.c)))
                }
            }
            IsoKind::Hyperbolic { .. } => {
                let (x1, x2) = self.hyperbolic_fixed_points();
                let attracting = if self.is_attracting(x1) { x1 } else { x2 };
                FixedData::Axis {
                    axis: Geodesic::new(x1, x2).expect("hyperbolic fixed points are distinct"),
                    attracting,
                }
            }
        }
    }

    fn hyperbolic_fixed_points(&self) -> (BoundaryPoint, BoundaryPoint) {
        let m = self.m;
        let (qa, qb, qc) = (m.c, m.d - m.a, -m.b);
        let disc = (m.trace().powi(2) - 4.0).max(0.0).sqrt();
        let scale = m.entries().iter().fold(0.0f64, |acc, x| acc.max(x.abs()));
        if qa.abs() <= 1e-14 * scale {
            return (BoundaryPoint::Infinity, BoundaryPoint::Real(-qc / qb));
        }
        let sign = if qb >= 0.0 { 1.0 } else { -1.0 };
        let q = -0.5 * (qb + sign * disc);
        let r1 = q / qa;
        let r2 = if q == 0.0 { 0.0 } else { qc / q };
        (BoundaryPoint::Real(r1), BoundaryPoint::Real(r2))
    }

    fn is_attracting(&self, x: BoundaryPoint) -> bool {
        let m = self.m;
        match x {
            BoundaryPoint::Infinity => m.a.abs() > m.d.abs(),
            BoundaryPoint::Real(x) => (m.c * x + m.d).abs() > 1.0,
        }
    }

    /// Hyperbolic translation by `length` along `axis`, toward its larger
    /// endpoint (infinity counts as largest).
    pub fn translation_along(axis: &Geodesic, length: f64) -> Self {
        let f = axis.frame();
        let e = (length / 2.0).exp();
        Isometry::from_product(f * Mat2::new(e, 0.0, 0.0, 1.0 / e) * f.adjugate())
    }

    /// Rotation about `center` by `angle` in the positive sense.
    pub fn rotation(center: HPoint, angle: f64) -> Self {
        let f = point_frame(center);
        let (s, c) = (angle / 2.0).sin_cos();
        Isometry::from_product(f * Mat2::new(c, -s, s, c) * f.adjugate())
    }

    /// Conjugate by the reflection `z ↦ -z̄`.
    pub fn mirror(&self) -> Self {
        let m = self.m;
        Isometry::from_product(Mat2::new(m.a, -m.b, -m.c, m.d))
    }
}

impl std::ops::Mul for Isometry {
    type Output = Isometry;
    fn mul(self, o: Isometry) -> Isometry {
        self.compose(&o)
    }
}

impl fmt::Display for Isometry {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.entries();
        write!(f, "[{a}, {b}; {c}, {d}]")
    }
}

pub fn apply(a: &Isometry, p: HPoint) -> HPoint {
    a.apply_point(p)
}

pub fn classify(a: &Isometry) -> IsoClass {
    a.classify()
}

/// `g h g⁻¹ h⁻¹`.
pub fn commutator(g: &Isometry, h: &Isometry) -> Isometry {
    Isometry::from_product(mat_commutator(g.m, h.m))
}

/// `g h g⁻¹ h⁻¹` for determinant-one matrices; independent of their signs.
pub fn mat_commutator(g: Mat2, h: Mat2) -> Mat2 {
    g * h * g.adjugate() * h.adjugate()
}

/// `a g a⁻¹`.
pub fn conjugate(a: &Isometry, g: &Isometry) -> Isometry {
    Isometry::from_product(a.m * g.m * a.m.adjugate())
}

/// Map taking `i` to `p` with the upward direction turned to point at `q`.
fn segment_frame(p: HPoint, q: HPoint) -> Result<Mat2, IsometryError> {
    let dir = direction(p, q.into()).map_err(|_| IsometryError::DegenerateSegment)?;
    Ok(point_frame(p) * ccw_rotation_at_i(dir - FRAC_PI_2))
}

/// The orientation-preserving isometry carrying the directed segment
/// `p1 → q1` onto `p2 → q2`.
pub fn segment_carrier(p1: HPoint, q1: HPoint, p2: HPoint, q2: HPoint) -> Result<Isometry, IsometryError> {
    let d1 = dist(p1, q1);
    let d2 = dist(p2, q2);
    if d1 <= 0.0 || d2 <= 0.0 {
        return Err(IsometryError::DegenerateSegment);
    }
    if (d1 - d2).abs() > geom_tolerance() * d1.max(1.0) {
        return Err(IsometryError::LengthMismatch(d1, d2));
    }
    let f1 = segment_frame(p1, q1)?;
    let f2 = segment_frame(p2, q2)?;
    Ok(Isometry::from_product(f2 * f1.adjugate()))
}

/// Reflection in `l2` after reflection in `l1`.
pub fn compose_reflections(l1: &Geodesic, l2: &Geodesic) -> Result<Isometry, IsometryError> {
    if l1.approx_eq(l2, 1e-12) {
        return Err(IsometryError::IdenticalLines);
    }
    // Each reflection is z ↦ M(z̄) with M real, so the composite is M2·M1.
    let m = l2.reflection_matrix() * l1.reflection_matrix();
    Ok(Isometry::from_product(m))
}

/// Distance between two ultraparallel geodesics.
pub fn geodesic_distance(l1: &Geodesic, l2: &Geodesic) -> Option<f64> {
    let m = common_perpendicular(l1, l2).ok()?;
    let p = crate::plane_geometry::geodesic_intersection(&m, l1)?;
    let q = crate::plane_geometry::geodesic_intersection(&m, l2)?;
    Some(dist(p, q))
}

/// Square root in PSL(2,ℝ) for a hyperbolic or parabolic element with
/// positive canonical trace: the unique one translating half as far.
pub fn square_root(a: &Isometry) -> Isometry {
    let t = a.trace();
    Isometry::from_product((a.m + Mat2::IDENTITY).scale(1.0 / (t + 2.0).sqrt()))
}

fn class_signature(c: &IsoClass) -> (u8, f64, i64) {
    match c.kind {
        IsoKind::Identity => (0, 0.0, 0),
        IsoKind::Elliptic { angle } => (1, angle, 0),
        IsoKind::Parabolic { sense } => (2, 0.0, sense.sign()),
        IsoKind::Hyperbolic { length } => (3, length, 0),
    }
}

/// An isometry `a` with `a · from · a⁻¹ = to`, when the two are conjugate.
pub fn conjugator(from: &Isometry, to: &Isometry) -> Result<Isometry, IsometryError> {
    let cf = from.classify();
    let ct = to.classify();
    let (kf, pf, sf) = class_signature(&cf);
    let (kt, pt, st) = class_signature(&ct);
    if kf != kt || sf != st || (pf - pt).abs() > 1e-7 * pf.abs().max(1.0) {
        return Err(IsometryError::NotConjugate(format!("{} vs {}", cf.kind.label(), ct.kind.label())));
    }
    let frame = |g: &Isometry| -> Mat2 {
        match g.fixed_data() {
            FixedData::Everything => Mat2::IDENTITY,
            FixedData::Center(c) => point_frame(c),
            FixedData::Axis { axis, attracting } => {
                let (_, b) = axis.endpoints();
                let f = axis.frame();
                if attracting == b {
                    f
                } else {
                    f * Mat2::new(0.0, -1.0, 1.0, 0.0)
                }
            }
            FixedData::Point(x) => match x {
                BoundaryPoint::Infinity => Mat2::IDENTITY,
                BoundaryPoint::Real(x) => Mat2::new(x, -1.0, 1.0, 0.0),
            },
        }
    };
    let ff = frame(from);
    let ft = frame(to);
    let mut a = ft * ff.adjugate();
    if let IsoKind::Parabolic { .. } = cf.kind {
        let shear = |g: &Isometry, f: Mat2| -> f64 {
            let n = f.adjugate() * g.m * f;
            n.b / n.a
        };
        let lambda = shear(to, ft) / shear(from, ff);
        let s = lambda.abs().sqrt();
        a = ft * Mat2::new(s, 0.0, 0.0, 1.0 / s) * ff.adjugate();
    }
    Ok(Isometry::from_product(a))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::plane_geometry::{geodesic_intersection, interior_angle};
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn diag(l: f64) -> Isometry {
        Isometry::new(l, 0.0, 0.0, 1.0 / l).unwrap()
    }

    fn rot_form(t: f64) -> Isometry {
        Isometry::new(t.cos(), -t.sin(), t.sin(), t.cos()).unwrap()
    }

    #[test]
    fn canonical_sign_is_idempotent() {
        let a = Isometry::new(-2.0, 0.0, 0.0, -0.5).unwrap();
        assert_eq!(a.entries(), [2.0, 0.0, 0.0, 0.5]);
        assert_eq!(Isometry::from_mat(a.matrix()).unwrap(), a);
        let half_turn = Isometry::new(0.0, 1.0, -1.0, 0.0).unwrap();
        assert_eq!(half_turn.entries(), [0.0, -1.0, 1.0, 0.0]);
    }

    #[test]
    fn classify_examples() {
        assert_eq!(Isometry::identity().classify().kind, IsoKind::Identity);

        let h = diag(2.0);
        match h.classify().kind {
            IsoKind::Hyperbolic { length } => assert_abs_diff_eq!(length, 2.0 * 1.25f64.acosh(), epsilon = 1e-14),
            k => panic!("{k:?}"),
        }
        match h.fixed_data() {
            FixedData::Axis { axis, attracting } => {
                assert!(axis.approx_eq(&Geodesic::imaginary_axis(), 1e-14));
                assert_eq!(attracting, BoundaryPoint::Infinity);
            }
            f => panic!("{f:?}"),
        }

        let e = rot_form(PI / 4.0);
        match e.classify().kind {
            IsoKind::Elliptic { angle } => assert_abs_diff_eq!(angle, PI / 2.0, epsilon = 1e-14),
            k => panic!("{k:?}"),
        }
        match e.fixed_data() {
            FixedData::Center(c) => assert_abs_diff_eq!((c.z() - Complex64::i()).norm(), 0.0, epsilon = 1e-14),
            f => panic!("{f:?}"),
        }
        match rot_form(-PI / 4.0).classify().kind {
            IsoKind::Elliptic { angle } => assert_abs_diff_eq!(angle, 3.0 * PI / 2.0, epsilon = 1e-14),
            k => panic!("{k:?}"),
        }

        let p = Isometry::new(1.0, 1.0, 0.0, 1.0).unwrap();
        assert_eq!(p.classify().kind, IsoKind::Parabolic { sense: ParabolicSense::Minus });
        assert_eq!(p.fixed_data(), FixedData::Point(BoundaryPoint::Infinity));
        assert_eq!(p.inverse().classify().kind, IsoKind::Parabolic { sense: ParabolicSense::Plus });

        let near = Isometry::new(1.0 + 3e-5, 1.0, 0.0, 1.0 / (1.0 + 3e-5)).unwrap();
        assert!(near.classify().near_parabolic);
    }

    #[test]
    fn apply_examples() {
        let p = HPoint::new(0.3, 0.7);
        assert_eq!(Isometry::identity().apply_point(p), p);
        let q = diag(2.0).apply_point(HPoint::i());
        assert_abs_diff_eq!((q.z() - Complex64::new(0.0, 4.0)).norm(), 0.0, epsilon = 1e-14);
    }

    #[test]
    fn segment_carrier_examples() {
        let i = HPoint::i();
        let c = segment_carrier(i, HPoint::new(0.0, 2.0), i, HPoint::new(0.0, 2.0)).unwrap();
        assert!(c.is_identity());
        let c = segment_carrier(i, HPoint::new(0.0, 2.0), HPoint::new(0.0, 4.0), HPoint::new(0.0, 8.0)).unwrap();
        assert!(c.distance(&diag(2.0)) < 1e-12);
        assert_eq!(
            segment_carrier(i, HPoint::new(0.0, 2.0), i, HPoint::new(0.0, 3.0)),
            Err(IsometryError::LengthMismatch(2f64.ln(), 3f64.ln()))
        );
        assert_eq!(segment_carrier(i, i, i, i), Err(IsometryError::DegenerateSegment));
    }

    #[test]
    fn compose_reflections_examples() {
        let a = Geodesic::imaginary_axis();
        let b = Geodesic::from_reals(-1.0, 1.0).unwrap();
        let r = compose_reflections(&a, &b).unwrap();
        match r.classify().kind {
            IsoKind::Elliptic { angle } => assert_abs_diff_eq!(angle, PI, epsilon = 1e-12),
            k => panic!("{k:?}"),
        }

        let l1 = Geodesic::from_reals(-3.0, -2.0).unwrap();
        let l2 = Geodesic::from_reals(2.0, 3.0).unwrap();
        let r = compose_reflections(&l1, &l2).unwrap();
        let d = geodesic_distance(&l1, &l2).unwrap();
        match r.classify().kind {
            IsoKind::Hyperbolic { length } => assert_abs_diff_eq!(length, 2.0 * d, epsilon = 1e-12),
            k => panic!("{k:?}"),
        }

        let v0 = Geodesic::imaginary_axis();
        let v1 = Geodesic::new(BoundaryPoint::Real(1.0), BoundaryPoint::Infinity).unwrap();
        let r = compose_reflections(&v0, &v1).unwrap();
        assert!(matches!(r.classify().kind, IsoKind::Parabolic { .. }));
        assert_eq!(r.fixed_data(), FixedData::Point(BoundaryPoint::Infinity));

        assert_eq!(compose_reflections(&v0, &v0), Err(IsometryError::IdenticalLines));
    }

    #[test]
    fn commutator_examples() {
        let g = diag(2.0);
        assert!(commutator(&g, &g).is_identity());
        let h = conjugate(&rot_form(PI / 4.0), &g);
        let k = commutator(&g, &h);
        assert_abs_diff_eq!(mat_commutator(g.matrix(), h.matrix()).trace(), 0.734375, epsilon = 1e-12);
        assert_abs_diff_eq!(k.trace().abs(), 0.734375, epsilon = 1e-12);
        let a = Isometry::new(1.3, 0.4, -0.2, (1.0 - 0.4 * -0.2) / 1.3).unwrap();
        assert_abs_diff_eq!(conjugate(&a, &g).trace(), g.trace(), epsilon = 1e-12);
    }

    #[test]
    fn square_root_squares_back() {
        let a = Isometry::new(3.0, 1.0, 2.0, 1.0).unwrap();
        let r = square_root(&a);
        assert!((r * r).distance(&a) < 1e-12);
        let p = Isometry::new(1.0, 2.0, 0.0, 1.0).unwrap();
        let r = square_root(&p);
        assert!((r * r).distance(&p) < 1e-12);
    }

    #[test]
    fn conjugator_examples() {
        let a = Isometry::new(1.1, -0.3, 0.7, (1.0 + -0.3 * 0.7) / 1.1).unwrap();
        for g in [diag(3.0), diag(0.2), rot_form(0.4), rot_form(-1.1), Isometry::new(1.0, 2.0, 0.0, 1.0).unwrap(), Isometry::new(1.0, 0.0, -3.0, 1.0).unwrap()] {
            let target = conjugate(&a, &g);
            let c = conjugator(&g, &target).unwrap();
            assert!(conjugate(&c, &g).distance(&target) < 1e-9, "{g}");
        }
        assert!(conjugator(&diag(2.0), &diag(3.0)).is_err());
        assert!(conjugator(&rot_form(0.4), &rot_form(-0.4)).is_err());
    }

    #[test]
    fn crossing_perpendicular_feet() {
        let l = Geodesic::from_reals(-1.0, 1.0).unwrap();
        let m = Geodesic::imaginary_axis();
        let x = geodesic_intersection(&l, &m).unwrap();
        let ang = interior_angle(BoundaryPoint::Real(1.0).into(), x, BoundaryPoint::Infinity.into()).unwrap();
        assert_abs_diff_eq!(ang, FRAC_PI_2, epsilon = 1e-12);
    }

    fn arb_isometry() -> impl Strategy<Value = Isometry> {
        (0.3f64..3.0, -2.0f64..2.0, -2.0f64..2.0, any::<bool>()).prop_map(|(a, b, c, flip)| {
            let m = Mat2::new(a, b, c, (1.0 + b * c) / a);
            let m = if flip { Mat2::new(m.c, m.d, -m.a, -m.b) } else { m };
            Isometry::from_mat(m).unwrap()
        })
    }

    fn arb_point() -> impl Strategy<Value = HPoint> {
        (-3.0f64..3.0, 0.1f64..3.0).prop_map(|(x, y)| HPoint::new(x, y))
    }

    proptest! {
        #[test]
        fn isometries_preserve_distance(a in arb_isometry(), p in arb_point(), q in arb_point()) {
            let d = dist(p, q);
            let e = dist(a.apply_point(p), a.apply_point(q));
            prop_assert!((d - e).abs() < 1e-9 * d.max(1.0));
        }

        #[test]
        fn angles_are_conformal(a in arb_isometry(), p in arb_point(), q in arb_point(), r in arb_point()) {
            prop_assume!(dist(p, q) > 1e-3 && dist(q, r) > 1e-3);
            let before = interior_angle(p.into(), q, r.into()).unwrap();
            let after = interior_angle(a.apply_point(p).into(), a.apply_point(q), a.apply_point(r).into()).unwrap();
            prop_assert!((before - after).abs() < 1e-9);
        }

        #[test]
        fn fricke_identity(g in arb_isometry(), h in arb_isometry()) {
            let (x, y, z) = (g.trace(), h.trace(), (g.matrix() * h.matrix()).trace());
            let kappa = x * x + y * y + z * z - x * y * z - 2.0;
            let tr = mat_commutator(g.matrix(), h.matrix()).trace();
            prop_assert!((tr - kappa).abs() < 1e-9 * (1.0 + x * x + y * y + z * z + (x * y * z).abs()));
        }

        #[test]
        fn carrier_then_inverse_is_identity(p in arb_point(), q in arb_point(), a in arb_isometry()) {
            prop_assume!(dist(p, q) > 1e-3);
            let (p2, q2) = (a.apply_point(p), a.apply_point(q));
            let c = segment_carrier(p, q, p2, q2).unwrap();
            let back = segment_carrier(p2, q2, p, q).unwrap();
            prop_assert!((c * back).identity_residual() < 1e-8);
            prop_assert!(c.distance(&a) < 1e-8 * a.matrix().entries().iter().map(|x| x.abs()).sum::<f64>().max(1.0));
        }

        #[test]
        fn classify_is_conjugation_invariant(g in arb_isometry(), a in arb_isometry()) {
            let c1 = g.classify();
            let c2 = conjugate(&a, &g).classify();
            prop_assume!(!c1.near_parabolic && (g.trace().abs() - 2.0).abs() > 1e-6);
            let (k1, p1, s1) = class_signature(&c1);
            let (k2, p2, s2) = class_signature(&c2);
            prop_assert_eq!((k1, s1), (k2, s2));
            prop_assert!((p1 - p2).abs() < 1e-6);
        }

        #[test]
        fn fixed_data_is_fixed(g in arb_isometry()) {
            match g.fixed_data() {
                FixedData::Center(c) => prop_assert!(dist(g.apply_point(c), c) < 1e-8),
                FixedData::Axis { axis, attracting } => {
                    let (a, b) = axis.endpoints();
                    prop_assert!(g.apply_boundary(a).approx_eq(a, 1e-9));
                    prop_assert!(g.apply_boundary(b).approx_eq(b, 1e-9));
                    let on_axis = crate::plane_geometry::fermi_point(&axis, 0.0, 0.0);
                    let len = match g.classify().kind { IsoKind::Hyperbolic { length } => length, _ => unreachable!() };
                    let pushed = g.pow((30.0 / len).ceil() as i64).apply_point(on_axis);
                    prop_assert!((pushed.to_disk() - attracting.to_disk()).norm() < 1e-3);
                }
                _ => {}
            }
        }

        #[test]
        fn axes_cross_iff_commutator_trace_below_two(
            a1 in -3.0f64..3.0, w1 in 0.2f64..3.0, l1 in 0.2f64..3.0,
            a2 in -3.0f64..3.0, w2 in 0.2f64..3.0, l2 in 0.2f64..3.0,
        ) {
            let ax1 = Geodesic::from_reals(a1, a1 + w1).unwrap();
            let ax2 = Geodesic::from_reals(a2, a2 + w2).unwrap();
            let g = Isometry::translation_along(&ax1, l1);
            let h = Isometry::translation_along(&ax2, l2);
            let tr = mat_commutator(g.matrix(), h.matrix()).trace();
            prop_assume!((tr - 2.0).abs() > CLASSIFY_TOLERANCE);
            let crossing = geodesic_intersection(&ax1, &ax2).is_some();
            prop_assert_eq!(tr < 2.0, crossing);
        }
    }
}
