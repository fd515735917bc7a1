use std::f64::consts::PI;

use crate::covering_group::{commutator_lift, twist};
use crate::isometries::{commutator, FixedData, Isometry};
use crate::plane_geometry::{
    polygon_validate, wrap_angle, BoundaryPoint, Geodesic, GeodesicPolygon, HPoint, Mat2, Orientation,
    ValidityReport, Vertex,
};

/// Orientation of the vertex order `p, q, r, s, t` for which the single
/// corner of the one-holed torus satisfies `corner + twist ≡ 3π`.
pub const PENTAGON_ORIENTATION: Orientation = Orientation::Ccw;

/// A geodesic with a chosen direction and Fermi coordinates along it,
/// carried along by conjugation.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct OrientedLine {
    frame: Mat2,
}

impl OrientedLine {
    /// `l` traversed toward `forward`, which must be one of its endpoints.
    pub fn new(l: &Geodesic, forward: BoundaryPoint) -> Self {
        let (_, b) = l.endpoints();
        let f = l.frame();
        let frame = if forward == b { f } else { f * Mat2::new(0.0, -1.0, 1.0, 0.0) };
        OrientedLine { frame }
    }

    /// The axis of a hyperbolic element, traversed in its translation direction.
    pub fn axis_of(k: &Isometry) -> Option<Self> {
        match k.fixed_data() {
            FixedData::Axis { axis, attracting } => Some(OrientedLine::new(&axis, attracting)),
            _ => None,
        }
    }

    pub fn geodesic(&self) -> Geodesic {
        Geodesic::new(
            self.frame.apply_boundary(BoundaryPoint::Real(0.0)),
            self.frame.apply_boundary(BoundaryPoint::Infinity),
        )
        .expect("frame image of the imaginary axis")
    }

    /// Point at arclength `s` and signed offset `h` to the left.
    pub fn point(&self, s: f64, h: f64) -> HPoint {
        let w = num_complex::Complex64::new(-h.tanh(), 1.0 / h.cosh()) * s.exp();
        self.frame.apply_point(HPoint::from_image(w))
    }

    pub fn coords(&self, p: HPoint) -> (f64, f64) {
        let w = self.frame.adjugate().apply(p.z());
        (w.norm().ln(), (-w.re / w.im).asinh())
    }

    /// Translation by `s` along the line in its direction.
    pub fn translation(&self, s: f64) -> Isometry {
        let e = (s / 2.0).exp();
        Isometry::new(e, 0.0, 0.0, 1.0 / e)
            .map(|t| crate::isometries::conjugate(&Isometry::from_mat(self.frame).expect("frame is unimodular"), &t))
            .expect("diagonal matrix is an isometry")
    }

    /// Arclength coordinate of the point of the line nearest to the fixed
    /// set of `g`; `None` when there is no well-defined one.
    pub fn anchor(&self, g: &Isometry) -> Option<f64> {
        let to_std = self.frame.adjugate();
        match g.fixed_data() {
            FixedData::Everything => None,
            FixedData::Center(c) => Some(self.coords(c).0),
            FixedData::Point(x) => match to_std.apply_boundary(x) {
                BoundaryPoint::Real(u) if u != 0.0 => Some(u.abs().ln()),
                _ => None,
            },
            FixedData::Axis { axis, .. } => {
                let (a, b) = axis.endpoints();
                match (to_std.apply_boundary(a), to_std.apply_boundary(b)) {
                    (BoundaryPoint::Real(u), BoundaryPoint::Real(v)) if u * v != 0.0 => {
                        // Crossing or ultraparallel: both land at the geometric mean.
                        Some(0.5 * (u.abs().ln() + v.abs().ln()))
                    }
                    _ => None,
                }
            }
        }
    }
}

/// The pentagon `p, h⁻¹ghp, ghp, hp, [g⁻¹,h⁻¹]p` with its side pairings
/// `g: (t,s) → (q,r)` and `h: (p,q) → (s,r)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Pentagon {
    pub g: Isometry,
    pub h: Isometry,
    pub basepoint: HPoint,
    pub vertices: [HPoint; 5],
    pub polygon: GeodesicPolygon,
    pub report: ValidityReport,
    /// Sum of the interior angles, all of which meet at one point of the torus.
    pub corner_angle: f64,
    /// Twist of the canonical lift of `[g⁻¹,h⁻¹]` at the basepoint.
    pub twist: Option<f64>,
    /// Worst mismatch between a paired side and the image of its partner.
    pub pairing_residual: f64,
}

impl Pentagon {
    pub fn is_valid(&self) -> bool {
        self.report.is_valid()
    }

    pub fn is_valid_with(&self, orientation: Orientation) -> bool {
        self.report.is_valid() && self.report.orientation == Some(orientation)
    }

    /// `3π − corner − twist`, reduced to `(−π, π]`.
    pub fn corner_residual(&self) -> Option<f64> {
        self.twist.map(|tw| wrap_angle(3.0 * PI - self.corner_angle - tw))
    }

    pub fn boundary_element(&self) -> Isometry {
        commutator(&self.g.inverse(), &self.h.inverse())
    }
}

fn point_gap(a: HPoint, b: HPoint) -> f64 {
    crate::plane_geometry::dist(a, b)
}

pub fn build_pentagon(g: &Isometry, h: &Isometry, p: HPoint) -> Pentagon {
    let hp = h.apply_point(p);
    let ghp = g.apply_point(hp);
    let q = h.inverse().apply_point(ghp);
    let t = g.inverse().apply_point(q);
    let vertices = [p, q, ghp, hp, t];
    let polygon = GeodesicPolygon::new(vertices.iter().map(|&v| Vertex::Finite(v)).collect());
    let report = polygon_validate(&polygon).unwrap_or_else(|e| ValidityReport {
        nondegenerate: false,
        simple: false,
        orientation: None,
        interior_angles: Vec::new(),
        angle_sum: f64::NAN,
        area: f64::NAN,
        reasons: vec![e.to_string()],
    });
    let corner_angle = report.angle_sum;
    let twist = twist(&commutator_lift(&g.inverse(), &h.inverse()), p).ok();
    let [pp, qq, rr, ss, tt] = vertices;
    let pairing_residual = [
        point_gap(g.apply_point(tt), qq),
        point_gap(g.apply_point(ss), rr),
        point_gap(h.apply_point(pp), ss),
        point_gap(h.apply_point(qq), rr),
    ]
    .into_iter()
    .fold(0.0, f64::max);
    Pentagon { g: *g, h: *h, basepoint: p, vertices, polygon, report, corner_angle, twist, pairing_residual }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character_dynamics::{char_to_rep, Character};
    use crate::isometries::conjugate;
    use crate::plane_geometry::dist;

    fn rep(x: f64, y: f64, z: f64) -> (Isometry, Isometry) {
        let (g, h) = char_to_rep(Character::new(x, y, z)).unwrap();
        (Isometry::from_mat(g).unwrap(), Isometry::from_mat(h).unwrap())
    }

    #[test]
    fn basepoint_fixed_by_commutator_is_degenerate() {
        let (g, h) = rep(3.0, 3.0, (9.0 - 17f64.sqrt()) / 2.0);
        let k = commutator(&g.inverse(), &h.inverse());
        let p = match k.fixed_data() {
            FixedData::Center(c) => c,
            other => panic!("expected elliptic commutator, got {other:?}"),
        };
        let pent = build_pentagon(&g, &h, p);
        assert!(!pent.is_valid());
        assert!(!pent.report.nondegenerate);
        assert!(dist(pent.vertices[0], pent.vertices[4]) < 1e-9);
        assert!(!pent.report.reasons.is_empty());
    }

    #[test]
    fn conjugated_input_gives_congruent_pentagon() {
        let (g, h) = rep(2.5, 0.3, -1.7);
        let p = HPoint::new(0.2, 0.9);
        let a = Isometry::new(1.5, -0.4, 0.8, 0.45).unwrap();
        let p1 = build_pentagon(&g, &h, p);
        let p2 = build_pentagon(&conjugate(&a, &g), &conjugate(&a, &h), a.apply_point(p));
        for i in 0..5 {
            for j in 0..5 {
                let d = dist(p1.vertices[i], p1.vertices[j]) - dist(p2.vertices[i], p2.vertices[j]);
                assert!(d.abs() < 1e-9);
            }
        }
        assert!(p1.pairing_residual < 1e-8 && p2.pairing_residual < 1e-8);
    }

    #[test]
    fn oriented_line_round_trips_and_flips() {
        let l = Geodesic::from_reals(-2.0, 5.0).unwrap();
        let (a, b) = l.endpoints();
        let up = OrientedLine::new(&l, b);
        let down = OrientedLine::new(&l, a);
        let p = up.point(0.4, -0.3);
        let (s, h) = up.coords(p);
        assert!((s - 0.4).abs() < 1e-12 && (h + 0.3).abs() < 1e-12);
        let (s2, h2) = down.coords(p);
        assert!((s2 + 0.4).abs() < 1e-12 && (h2 - 0.3).abs() < 1e-12);
    }

    #[test]
    fn anchor_of_crossing_axis_is_the_crossing() {
        let line = OrientedLine::new(&Geodesic::imaginary_axis(), BoundaryPoint::Infinity);
        let g = Isometry::translation_along(&Geodesic::from_reals(-4.0, 1.0).unwrap(), 1.0);
        let s = line.anchor(&g).unwrap();
        assert!((s - 2.0f64.ln()).abs() < 1e-12);
    }
}
