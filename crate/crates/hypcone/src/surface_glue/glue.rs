use std::f64::consts::PI;

use num_complex::Complex64;

use super::split::{GlueCase, Split};
use super::GlueError;
use crate::covering_group::{euler_class, SurfaceRep};
use crate::domain_builder::{build_pentagon, OrientedLine, Pentagon, PENTAGON_ORIENTATION};
use crate::isometries::{commutator, conjugate, conjugator, point_frame, FixedData, Isometry};
use crate::plane_geometry::{
    collar_width, dist, from_disk, polygon_validate, BoundaryPoint, GeodesicPolygon, HPoint, Mat2, ValidityReport,
    Vertex,
};

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GlueParams {
    /// Basepoints tried per circle, horocycle or axis window.
    pub stations: usize,
    /// Halvings of the radius (doublings of the horocycle height).
    pub halvings: usize,
}

impl Default for GlueParams {
    fn default() -> Self {
        GlueParams { stations: 64, halvings: 30 }
    }
}

/// Octagon `p0 q0 r0 s0 p1 q1 r1 s1` made of two pentagons sharing the edge
/// `p0`-`p1`, with the four side pairings of the closed surface.
#[derive(Clone, Debug, PartialEq)]
pub struct GluedDomain {
    pub octagon: GeodesicPolygon,
    pub report: ValidityReport,
    /// `g0, h0` pair sides of the first pentagon, `g1, h1` of the second.
    pub pairings: [Isometry; 4],
    /// For each octagon vertex, the pentagon (0 or 1) and the vertex index in
    /// it that it came from.
    pub provenance: [(usize, usize); 8],
    pub cone_angle: f64,
    pub area: f64,
    pub euler_certificate: i64,
    pub twists: (f64, f64),
    /// Size of the single vertex class under the pairings.
    pub vertex_orbit: usize,
    pub pairing_residual: f64,
    pub pentagons: [Pentagon; 2],
    /// Distance from the basepoint to the shared fixed set, or the height
    /// of the horocycle, or the shift along the axis, depending on the case.
    pub search_radius: f64,
    pub station: usize,
}

impl GluedDomain {
    /// Closed-surface representation generated by the pairings, with relator
    /// `[g0⁻¹,h0⁻¹][g1⁻¹,h1⁻¹]`.
    pub fn surface_rep(&self) -> SurfaceRep {
        let p = &self.pairings;
        SurfaceRep::new(2, 0, vec![p[0].inverse(), p[1].inverse(), p[2].inverse(), p[3].inverse()])
            .expect("four generators")
    }
}

fn find(parent: &mut [usize], i: usize) -> usize {
    let mut r = i;
    while parent[r] != r {
        r = parent[r];
    }
    parent[i] = r;
    r
}

/// Sizes of the vertex classes generated by the identifications.
fn vertex_classes(n: usize, identified: &[(usize, usize)]) -> Vec<usize> {
    let mut parent: Vec<usize> = (0..n).collect();
    for &(a, b) in identified {
        let (ra, rb) = (find(&mut parent, a), find(&mut parent, b));
        parent[ra] = rb;
    }
    let mut sizes = vec![0; n];
    for i in 0..n {
        let r = find(&mut parent, i);
        sizes[r] += 1;
    }
    sizes.into_iter().filter(|&s| s > 0).collect()
}

/// Joins two pentagons whose boundary edges are reverses of each other.
/// Returns `None` unless both are valid with the same orientation and the
/// octagon is simple.
fn join(e0: Pentagon, e1: Pentagon, search_radius: f64, station: usize) -> Option<GluedDomain> {
    if !(e0.is_valid() && e1.is_valid()) || e0.report.orientation != e1.report.orientation {
        return None;
    }
    let [p0, q0, r0, s0, _] = e0.vertices;
    let [p1, q1, r1, s1, _] = e1.vertices;
    let octagon = GeodesicPolygon::new([p0, q0, r0, s0, p1, q1, r1, s1].iter().map(|&v| Vertex::Finite(v)).collect());
    let report = polygon_validate(&octagon).ok()?;
    if !report.is_valid() {
        return None;
    }
    // Pentagon vertex t0 is octagon vertex 4 and t1 is vertex 0.
    let identified = [(4, 1), (3, 2), (0, 3), (1, 2), (0, 5), (7, 6), (4, 7), (5, 6)];
    let classes = vertex_classes(8, &identified);
    let vertex_orbit = if classes.len() == 1 { classes[0] } else { 0 };
    let pairing_residual = e0
        .pairing_residual
        .max(e1.pairing_residual)
        .max(dist(e0.vertices[4], p1))
        .max(dist(e1.vertices[4], p0));
    let twists = (e0.twist?, e1.twist?);
    let pairings = [e0.g, e0.h, e1.g, e1.h];
    let mut glued = GluedDomain {
        cone_angle: report.angle_sum,
        area: report.area,
        octagon,
        report,
        pairings,
        provenance: [(0, 0), (0, 1), (0, 2), (0, 3), (1, 0), (1, 1), (1, 2), (1, 3)],
        euler_certificate: 0,
        twists,
        vertex_orbit,
        pairing_residual,
        pentagons: [e0, e1],
        search_radius,
        station,
    };
    glued.euler_certificate = euler_class(&glued.surface_rep()).ok()?;
    Some(glued)
}

fn close_to_four_pi(d: &GluedDomain) -> bool {
    (d.cone_angle - 4.0 * PI).abs() < 1e-6
}

/// Glue the two sides of an elliptic or parabolic split.
pub fn glue_genus2(split: &Split, params: &GlueParams) -> Result<GluedDomain, GlueError> {
    let (g0, h0) = split.rho0;
    let (g1, h1) = split.rho1;
    let k0 = commutator(&g0.inverse(), &h0.inverse());
    let attempt = |p0: HPoint, radius: f64, station: usize| {
        let p1 = k0.apply_point(p0);
        join(build_pentagon(&g0, &h0, p0), build_pentagon(&g1, &h1, p1), radius, station).filter(close_to_four_pi)
    };
    let k = params.stations;
    let mut tried = 0;
    match (split.case, k0.fixed_data()) {
        (GlueCase::Elliptic, FixedData::Center(r)) => {
            let frame = point_frame(r);
            let at = |eps: f64, angle: f64| {
                let w = Complex64::from_polar((eps / 2.0).tanh(), angle);
                HPoint::from_complex(frame.apply(from_disk(w))).expect("inside the disc")
            };
            let probe = build_pentagon(&g0, &h0, at(1.0, 0.0)).vertices;
            let mut spread = f64::INFINITY;
            for i in 0..5 {
                for j in i + 1..5 {
                    spread = spread.min(dist(probe[i], probe[j]));
                }
            }
            let mut eps = (spread / 2.0).min(1.0);
            for _ in 0..=params.halvings {
                for station in 0..k {
                    tried += 1;
                    let angle = 2.0 * PI * station as f64 / k as f64;
                    if let Some(d) = attempt(at(eps, angle), eps, station) {
                        return Ok(d);
                    }
                }
                eps /= 2.0;
            }
            Err(GlueError::SearchExhausted { tried, diagnostics: format!("circles about {:?} down to radius {eps:e}", r.z()) })
        }
        (GlueCase::Parabolic, FixedData::Point(r)) => {
            // Frame sending infinity to the cusp; the commutator is then x ↦ x + τ.
            let frame = match r {
                BoundaryPoint::Infinity => Mat2::IDENTITY,
                BoundaryPoint::Real(a) => Mat2::new(a, -1.0, 1.0, 0.0),
            };
            let std = frame.adjugate() * k0.matrix() * frame;
            let tau = (std.b / std.a).abs();
            let mut height = 1.0;
            for _ in 0..=params.halvings {
                for station in 0..k {
                    tried += 1;
                    let x = tau * (4.0 * station as f64 / k as f64 - 2.0);
                    let p0 = HPoint::from_complex(frame.apply(Complex64::new(x, height))).expect("upper half-plane");
                    if let Some(d) = attempt(p0, height, station) {
                        return Ok(d);
                    }
                }
                height *= 2.0;
            }
            Err(GlueError::SearchExhausted { tried, diagnostics: format!("horocycles about {r:?} up to height {height:e}") })
        }
        (GlueCase::Hyperbolic, _) => Err(GlueError::UnsupportedCase("HYPERBOLIC")),
        (case, fixed) => Err(GlueError::RegionMismatch(format!("{} split with fixed set {fixed:?}", case.as_str()))),
    }
}

/// Glue a good one-holed torus `(g, h)` with pentagon basepoint `p` to a
/// one-holed torus `rho_w` across a hyperbolic boundary of trace `t`.
/// `rho_w` is conjugated so its commutator cancels that of `(g, h)`, then
/// slid along the shared axis and, if needed, mirrored.
pub fn glue_hyperbolic(
    rho1: (Isometry, Isometry, HPoint),
    rho_w: (Isometry, Isometry),
    t: f64,
    params: &GlueParams,
) -> Result<GluedDomain, GlueError> {
    let (g, h, p) = rho1;
    let boundary_trace = |a: &Isometry, b: &Isometry| commutator(a, b).trace();
    for found in [boundary_trace(&g, &h), boundary_trace(&rho_w.0, &rho_w.1)] {
        if (found - t).abs() > 1e-8 * t.max(1.0) {
            return Err(GlueError::TraceMismatch { expected: t, found });
        }
    }
    let collar = collar_width(t).map_err(|_| GlueError::TraceMismatch { expected: t, found: t })?;
    let k1 = commutator(&g.inverse(), &h.inverse());
    let axis = OrientedLine::axis_of(&k1).ok_or(GlueError::TraceMismatch { expected: t, found: k1.trace() })?;
    if axis.coords(p).1.abs() > collar {
        return Err(GlueError::NoCompatibleBasepoint { stations: 0, outside_collar: 1 });
    }
    let e1 = build_pentagon(&g, &h, p);
    if !e1.is_valid_with(PENTAGON_ORIENTATION) {
        return Err(GlueError::CertificateMissing(format!("pentagon at the basepoint: {:?}", e1.report.reasons)));
    }
    let pw = k1.apply_point(p);
    let len = 2.0 * (t / 2.0).acosh();
    let target = k1.inverse();
    let k = params.stations;
    for mirror in [false, true] {
        let (a, b) = if mirror { (rho_w.0.mirror(), rho_w.1.mirror()) } else { rho_w };
        let c = conjugator(&commutator(&a.inverse(), &b.inverse()), &target)
            .map_err(|e| GlueError::CertificateMissing(e.to_string()))?;
        let (a, b) = (conjugate(&c, &a), conjugate(&c, &b));
        for station in 0..k {
            let shift = len * (2.0 * station as f64 / k as f64 - 1.0);
            let slide = axis.translation(shift);
            let (gw, hw) = (conjugate(&slide, &a), conjugate(&slide, &b));
            let ew = build_pentagon(&gw, &hw, pw);
            if let Some(d) = join(e1.clone(), ew, shift, station).filter(close_to_four_pi) {
                return Ok(d);
            }
        }
    }
    Err(GlueError::NoCompatibleBasepoint { stations: 2 * k, outside_collar: 0 })
}

/// Comparison of measured cone angles with the Euler class through
/// `|E| = |χ + Σ sᵢ|`, `θᵢ = 2π(1 + sᵢ)`.
#[derive(Clone, Debug, PartialEq)]
pub struct ConeEulerReport {
    pub chi: i64,
    pub cone_angles: Vec<f64>,
    pub orders: Vec<f64>,
    pub predicted: f64,
    pub euler: i64,
    pub consistent: bool,
}

pub fn cone_euler_check(chi: i64, cone_angles: &[f64], euler: i64) -> ConeEulerReport {
    let orders: Vec<f64> = cone_angles.iter().map(|a| a / (2.0 * PI) - 1.0).collect();
    let predicted = (chi as f64 + orders.iter().sum::<f64>()).abs();
    ConeEulerReport {
        chi,
        cone_angles: cone_angles.to_vec(),
        consistent: (predicted - euler.abs() as f64).abs() < 1e-6,
        orders,
        predicted,
        euler,
    }
}

impl GluedDomain {
    pub fn cone_euler(&self) -> ConeEulerReport {
        cone_euler_check(-2, &[self.cone_angle], self.euler_certificate)
    }

    /// `twist₀ + twist₁`, which is `2π` when the commutator lifts multiply to `z`.
    pub fn twist_sum(&self) -> f64 {
        self.twists.0 + self.twists.1
    }
}
