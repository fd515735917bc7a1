use thiserror::Error;

use crate::covering_group::{simplest_lift, Lift};
use crate::isometries::{compose_reflections, mat_commutator, square_root, FixedData, IsoKind, Isometry};
use crate::plane_geometry::{
    common_perpendicular, foot_from_ideal, geodesic_intersection, geodesic_through, polygon_validate,
    reflect_vertex, BoundaryPoint, Geodesic, GeodesicPolygon, ValidityReport, Vertex,
};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PantsError {
    #[error("boundary element {0} is elliptic or trivial")]
    EllipticBoundary(usize),
    #[error("Tr[c1,c2] = {0} is not above 2")]
    AxesNotDisjoint(f64),
    #[error("trace product {0} is above -8")]
    TraceProduct(f64),
    #[error("relator lifts to z^-1; invert the orientation")]
    WrongEulerSide,
    #[error("relator lifts to z^{0}")]
    EulerMismatch(i64),
    #[error("degenerate configuration: {0}")]
    Degenerate(String),
}

/// Two lines whose reflections compose (second after first) to a boundary
/// element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ReflectionPair {
    pub first: Geodesic,
    pub second: Geodesic,
}

impl ReflectionPair {
    pub fn compose(&self) -> Isometry {
        compose_reflections(&self.first, &self.second).expect("distinct reflection lines")
    }
}

/// One side carried onto another by a boundary element.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SidePairing {
    /// Index into `c` of the pairing element.
    pub element: usize,
    pub from: (Vertex, Vertex),
    pub to: (Vertex, Vertex),
}

#[derive(Clone, Debug, PartialEq)]
pub struct PantsDomain {
    pub c: [Isometry; 3],
    pub octagon: GeodesicPolygon,
    pub report: ValidityReport,
    pub pairings: Vec<SidePairing>,
    /// Reflection lines for `c1`, `c2`, `c3` in that order.
    pub reflections: [ReflectionPair; 3],
    pub pairing_residual: f64,
    /// Exponent of `z` in the product of the simplest lifts.
    pub euler_certificate: i64,
}

impl PantsDomain {
    /// Largest deviation of a composed reflection pair from its element.
    pub fn reflection_residual(&self) -> f64 {
        self.reflections
            .iter()
            .zip(self.c.iter())
            .map(|(r, c)| r.compose().distance(c))
            .fold(0.0, f64::max)
    }
}

enum Boundary {
    Axis(Geodesic),
    Cusp(BoundaryPoint),
}

fn boundary_of(c: &Isometry, idx: usize) -> Result<Boundary, PantsError> {
    match c.fixed_data() {
        FixedData::Axis { axis, .. } => Ok(Boundary::Axis(axis)),
        FixedData::Point(x) => Ok(Boundary::Cusp(x)),
        _ => Err(PantsError::EllipticBoundary(idx)),
    }
}

fn degenerate<E: std::fmt::Display>(e: E) -> PantsError {
    PantsError::Degenerate(e.to_string())
}

/// Where `m` meets the boundary datum: a crossing point or the cusp itself.
fn corner(m: &Geodesic, b: &Boundary) -> Result<Vertex, PantsError> {
    match b {
        Boundary::Axis(a) => geodesic_intersection(m, a)
            .map(Vertex::Finite)
            .ok_or_else(|| PantsError::Degenerate("reflection line misses the axis".into())),
        Boundary::Cusp(x) => Ok(Vertex::Ideal(*x)),
    }
}

fn vertex_gap(a: Vertex, b: Vertex) -> f64 {
    (a.to_disk() - b.to_disk()).norm()
}

fn same_vertex(a: Vertex, b: Vertex) -> bool {
    matches!((a, b), (Vertex::Ideal(_), Vertex::Ideal(_))) && vertex_gap(a, b) < 1e-9
}

/// The right-angled octagon for the pants group `⟨c1, c2⟩` with
/// `c3 = (c1 c2)⁻¹`. Cusps collapse pairs of vertices into one ideal vertex.
pub fn build_pants(c1: &Isometry, c2: &Isometry) -> Result<PantsDomain, PantsError> {
    let c3 = (*c1 * *c2).inverse();
    let cs = [*c1, *c2, c3];
    for (i, c) in cs.iter().enumerate() {
        if matches!(c.classify().kind, IsoKind::Identity | IsoKind::Elliptic { .. }) {
            return Err(PantsError::EllipticBoundary(i));
        }
    }
    let (m1, m2) = (c1.matrix(), c2.matrix());
    // Signed trace: crossing axes can give Tr[c1,c2] < -2.
    let comm = mat_commutator(m1, m2).trace();
    if !(comm > 2.0 + 1e-12) {
        return Err(PantsError::AxesNotDisjoint(comm));
    }
    let product = m1.trace() * m2.trace() * (m1 * m2).trace();
    if product > -8.0 + 1e-9 * product.abs().max(1.0) {
        return Err(PantsError::TraceProduct(product));
    }
    let lift = cs
        .iter()
        .map(|c| simplest_lift(c).expect("non-elliptic"))
        .fold(Lift::identity(), |acc, l| acc * l);
    let e = (lift.theta() / std::f64::consts::PI).round() as i64;
    match e {
        1 => {}
        -1 => return Err(PantsError::WrongEulerSide),
        other => return Err(PantsError::EulerMismatch(other)),
    }

    let b1 = boundary_of(c1, 0)?;
    let b2 = boundary_of(c2, 1)?;
    let l = match (&b1, &b2) {
        (Boundary::Axis(a1), Boundary::Axis(a2)) => common_perpendicular(a1, a2).map_err(degenerate)?,
        (Boundary::Cusp(x), Boundary::Axis(a)) | (Boundary::Axis(a), Boundary::Cusp(x)) => {
            let foot = foot_from_ideal(a, *x).ok_or_else(|| PantsError::Degenerate("cusp on axis".into()))?;
            geodesic_through(Vertex::Ideal(*x), Vertex::Finite(foot)).map_err(degenerate)?
        }
        (Boundary::Cusp(x), Boundary::Cusp(y)) => Geodesic::new(*x, *y).map_err(degenerate)?,
    };
    let line1 = square_root(c1).apply_geodesic(&l);
    let line2 = square_root(c2).inverse().apply_geodesic(&l);
    let v1 = corner(&line1, &b1)?;
    let v4 = corner(&line2, &b2)?;
    let (v2, v3) = match boundary_of(&c3, 2)? {
        Boundary::Axis(_) => {
            let a3 = common_perpendicular(&line1, &line2).map_err(degenerate)?;
            (corner(&line1, &Boundary::Axis(a3))?, corner(&line2, &Boundary::Axis(a3))?)
        }
        Boundary::Cusp(x) => (Vertex::Ideal(x), Vertex::Ideal(x)),
    };
    let r = |v: Vertex| reflect_vertex(&l, v);
    let raw = [v1, v2, v3, v4, r(v4), r(v3), r(v2), r(v1)];
    let mut vertices: Vec<Vertex> = Vec::with_capacity(8);
    for v in raw {
        if vertices.last().is_none_or(|&w| !same_vertex(v, w)) {
            vertices.push(v);
        }
    }
    if vertices.len() > 1 && same_vertex(vertices[0], *vertices.last().unwrap()) {
        vertices.pop();
    }
    let octagon = GeodesicPolygon::new(vertices);
    let report = polygon_validate(&octagon).map_err(degenerate)?;

    let pairings = vec![
        SidePairing { element: 0, from: (r(v1), r(v2)), to: (v1, v2) },
        SidePairing { element: 1, from: (v4, v3), to: (r(v4), r(v3)) },
    ];
    let pairing_residual = pairings
        .iter()
        .map(|p| {
            let c = &cs[p.element];
            vertex_gap(c.apply_vertex(p.from.0), p.to.0).max(vertex_gap(c.apply_vertex(p.from.1), p.to.1))
        })
        .fold(0.0, f64::max);
    let reflections = [
        ReflectionPair { first: l, second: line1 },
        ReflectionPair { first: line2, second: l },
        ReflectionPair { first: line1, second: line2 },
    ];
    Ok(PantsDomain { c: cs, octagon, report, pairings, reflections, pairing_residual, euler_certificate: e })
}

/// Boundary elements `(c1, c2)` of a pants group with the given boundary
/// lengths, on the Euler class `+1` side.
pub fn pants_from_lengths(l1: f64, l2: f64, l3: f64) -> Result<(Isometry, Isometry), PantsError> {
    if !(l1 > 0.0 && l2 > 0.0 && l3 > 0.0) {
        return Err(PantsError::Degenerate("lengths must be positive".into()));
    }
    let (h1, h2, h3) = (l1 / 2.0, l2 / 2.0, l3 / 2.0);
    // Distance between the first two axes in the right-angled hexagon.
    let gap = ((h3.cosh() + h1.cosh() * h2.cosh()) / (h1.sinh() * h2.sinh())).acosh();
    let a1 = Geodesic::from_reals(-1.0, 1.0).map_err(degenerate)?;
    let a2 = Geodesic::from_reals(-gap.exp(), gap.exp()).map_err(degenerate)?;
    let target = 2.0 * h3.cosh();
    let mut last = PantsError::Degenerate("no sign choice matched".into());
    for s1 in [1.0, -1.0] {
        for s2 in [1.0, -1.0] {
            let c1 = Isometry::translation_along(&a1, s1 * l1);
            let c2 = Isometry::translation_along(&a2, s2 * l2);
            if ((c1 * c2).trace() - target).abs() > 1e-8 * target {
                continue;
            }
            match build_pants(&c1, &c2) {
                Ok(_) => return Ok((c1, c2)),
                Err(e) => last = e,
            }
        }
    }
    Err(last)
}
