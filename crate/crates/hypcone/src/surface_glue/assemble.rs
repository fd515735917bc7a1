use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::GlueError;
use crate::covering_group::{euler_class, SurfaceRep};
use crate::domain_builder::{build_pants, build_pentagon, OrientedLine, PantsDomain, Pentagon};
use crate::isometries::{commutator, FixedData, IsoKind, Isometry};
use crate::plane_geometry::{BoundaryPoint, Geodesic, GeodesicPolygon, Vertex};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum PieceKind {
    Pants,
    PuncturedTorus,
}

/// A piece given by two words in the surface group: `c1, c2` for pants
/// (the third boundary is `(c1 c2)⁻¹`), `g, h` for a one-holed torus (the
/// boundary is `[g,h]⁻¹`). An optional transport word `T` replaces each
/// generator `w` by `T w T⁻¹`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Piece {
    pub kind: PieceKind,
    pub words: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub transport: Option<String>,
}

/// Edge of the dual tree: two pieces meeting along the curve `curve`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DecompEdge {
    pub pieces: [usize; 2],
    pub curve: String,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Decomposition {
    pub pieces: Vec<Piece>,
    pub edges: Vec<DecompEdge>,
}

#[derive(Clone, Debug, PartialEq)]
pub enum PieceDomain {
    Pants(PantsDomain),
    /// Pentagon for `(g, h)`, placed so its boundary edge lies on the axis of
    /// `[g, h]` rather than `[g⁻¹, h⁻¹]`.
    Torus(Pentagon),
}

#[derive(Clone, Debug, PartialEq)]
pub struct AssembledPiece {
    pub kind: PieceKind,
    pub generators: Vec<Isometry>,
    /// Boundary elements in the order of the piece's relator.
    pub boundary: Vec<Isometry>,
    pub euler: i64,
    pub polygon: GeodesicPolygon,
    pub domain: PieceDomain,
}

#[derive(Clone, Debug, PartialEq)]
pub struct EdgeCheck {
    pub curve: String,
    pub pieces: [usize; 2],
    /// Whether each piece has a side lying on the curve's axis.
    pub axis_shared: [bool; 2],
    /// Side of the axis each piece occupies (+1 left, −1 right).
    pub sides: [i8; 2],
    pub opposite_sides: bool,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Assembly {
    /// Whether the input was mirrored to bring the Euler class to `−χ`.
    pub mirrored: bool,
    pub pieces: Vec<AssembledPiece>,
    pub edges: Vec<EdgeCheck>,
    pub total_euler: i64,
    pub piece_sum: i64,
}

impl Assembly {
    pub fn is_consistent(&self) -> bool {
        self.piece_sum == self.total_euler
            && self.edges.iter().all(|e| e.axis_shared == [true, true] && e.opposite_sides)
    }
}

fn bad<E: std::fmt::Display>(e: E) -> GlueError {
    GlueError::BadDecomposition(e.to_string())
}

/// A valid pentagon for a one-holed torus with hyperbolic boundary, with
/// the basepoint on or just off the boundary axis.
fn torus_pentagon(g: &Isometry, h: &Isometry) -> Option<Pentagon> {
    let k = commutator(&g.inverse(), &h.inverse());
    let len = match k.classify().kind {
        IsoKind::Hyperbolic { length } => length,
        _ => return None,
    };
    let line = OrientedLine::axis_of(&k)?;
    let origin = line.anchor(g).or_else(|| line.anchor(h)).unwrap_or(0.0);
    let stations = 64;
    for offset in [0.0, 1e-3, -1e-3, 0.05, -0.05] {
        for i in 0..stations {
            let s = origin + len * (2.0 * i as f64 / stations as f64 - 1.0);
            let pent = build_pentagon(g, h, line.point(s, offset));
            if pent.is_valid() {
                return Some(pent);
            }
        }
    }
    None
}

fn moved(poly: &GeodesicPolygon, a: &Isometry) -> GeodesicPolygon {
    GeodesicPolygon::new(poly.vertices.iter().map(|&v| a.apply_vertex(v)).collect())
}

fn build_piece(rep: &SurfaceRep, piece: &Piece) -> Result<AssembledPiece, GlueError> {
    if piece.words.len() != 2 {
        return Err(GlueError::BadDecomposition(format!("piece needs two words, got {}", piece.words.len())));
    }
    let transport = match &piece.transport {
        Some(w) => rep.eval_word(w)?,
        None => Isometry::identity(),
    };
    let eval = |w: &str| -> Result<Isometry, GlueError> {
        Ok(crate::isometries::conjugate(&transport, &rep.eval_word(w)?))
    };
    let (a, b) = (eval(&piece.words[0])?, eval(&piece.words[1])?);
    match piece.kind {
        PieceKind::Pants => {
            let c3 = (a * b).inverse();
            let euler = euler_class(&SurfaceRep::new(0, 3, vec![a, b, c3])?)?;
            let domain = build_pants(&a, &b).map_err(bad)?;
            Ok(AssembledPiece {
                kind: piece.kind,
                generators: vec![a, b],
                boundary: vec![a, b, c3],
                euler,
                polygon: domain.octagon.clone(),
                domain: PieceDomain::Pants(domain),
            })
        }
        PieceKind::PuncturedTorus => {
            let c = commutator(&a, &b).inverse();
            let euler = euler_class(&SurfaceRep::new(1, 1, vec![a, b, c])?)?;
            let pent = torus_pentagon(&a, &b)
                .ok_or_else(|| GlueError::BadDecomposition("no valid pentagon for a torus piece".into()))?;
            // [g⁻¹,h⁻¹] = X [g,h] X⁻¹ with X = g⁻¹h⁻¹.
            let polygon = moved(&pent.polygon, &(b * a));
            Ok(AssembledPiece {
                kind: piece.kind,
                generators: vec![a, b],
                boundary: vec![c],
                euler,
                polygon,
                domain: PieceDomain::Torus(pent),
            })
        }
    }
}

/// Side of `axis` occupied by the polygon, from its vertex farthest off it;
/// `None` if no side of the polygon lies on the axis.
fn side_of(poly: &GeodesicPolygon, axis: &Geodesic, line: &OrientedLine) -> (bool, i8) {
    let on_axis = |v: Vertex| match v {
        Vertex::Finite(p) => axis.incidence_error(p) < 1e-7,
        Vertex::Ideal(x) => {
            let (a, b) = axis.endpoints();
            x.approx_eq(a, 1e-9) || x.approx_eq(b, 1e-9)
        }
    };
    let n = poly.len();
    let shared = (0..n).any(|i| on_axis(poly.vertices[i]) && on_axis(poly.vertices[(i + 1) % n]));
    let mut best = 0.0f64;
    for v in &poly.vertices {
        let off = match v {
            Vertex::Finite(p) => line.coords(*p).1,
            Vertex::Ideal(_) => continue,
        };
        if off.abs() > best.abs() {
            best = off;
        }
    }
    (shared, best.signum() as i8)
}

/// Builds the domain of every piece of an extremal representation and
/// checks the pieces against each other along the decomposition curves.
fn curve_axes(rep: &SurfaceRep, dec: &Decomposition) -> Result<Vec<(Geodesic, BoundaryPoint)>, GlueError> {
    dec.edges
        .iter()
        .map(|e| {
            if e.pieces.iter().any(|&i| i >= dec.pieces.len()) || e.pieces[0] == e.pieces[1] {
                return Err(GlueError::BadDecomposition(format!("edge {:?} does not join two pieces", e.pieces)));
            }
            match rep.eval_word(&e.curve)?.fixed_data() {
                FixedData::Axis { axis, attracting } => Ok((axis, attracting)),
                _ => Err(GlueError::EllipticDecompositionCurve(e.curve.clone())),
            }
        })
        .collect()
}

pub fn assemble_extremal(rep: &SurfaceRep, dec: &Decomposition) -> Result<Assembly, GlueError> {
    curve_axes(rep, dec)?;
    let total = euler_class(rep)?;
    let chi = rep.euler_characteristic();
    if total.abs() != chi.abs() {
        return Err(GlueError::NonExtremal { euler: total, chi });
    }
    let mirrored = total < 0;
    let rep = if mirrored {
        SurfaceRep::new(rep.genus, rep.boundary, rep.generators.iter().map(|g| g.mirror()).collect())?
    } else {
        rep.clone()
    };
    let curves = curve_axes(&rep, dec)?;
    let total = total.abs();
    let pieces: Vec<AssembledPiece> =
        dec.pieces.iter().map(|p| build_piece(&rep, p)).collect::<Result<_, _>>()?;
    let classes: Vec<i64> = pieces.iter().map(|p| p.euler).collect();
    let piece_sum: i64 = classes.iter().sum();
    if classes.iter().any(|&e| e != 1) || piece_sum != total {
        return Err(GlueError::PieceEulerMismatch { pieces: classes, total });
    }
    let edges = dec
        .edges
        .iter()
        .zip(curves)
        .map(|(e, (axis, attracting))| {
            let line = OrientedLine::new(&axis, attracting);
            let (s0, d0) = side_of(&pieces[e.pieces[0]].polygon, &axis, &line);
            let (s1, d1) = side_of(&pieces[e.pieces[1]].polygon, &axis, &line);
            EdgeCheck {
                curve: e.curve.clone(),
                pieces: e.pieces,
                axis_shared: [s0, s1],
                sides: [d0, d1],
                opposite_sides: d0 * d1 < 0,
            }
        })
        .collect();
    Ok(Assembly { mirrored, pieces, edges, total_euler: total, piece_sum })
}

/// Translates of the given polygons by all group elements of word length at
/// most `radius` in the generators and their inverses.
pub fn tiling_preview(rep: &SurfaceRep, polygons: &[GeodesicPolygon], radius: usize) -> Vec<GeodesicPolygon> {
    let letters: Vec<Isometry> = rep.generators.iter().flat_map(|g| [*g, g.inverse()]).collect();
    let key = |a: &Isometry| a.entries().map(|v| (v * 1e6).round() as i64);
    let mut seen = HashSet::new();
    seen.insert(key(&Isometry::identity()));
    let mut frontier = vec![Isometry::identity()];
    let mut elements = frontier.clone();
    for _ in 0..radius {
        let mut next = Vec::new();
        for a in &frontier {
            for l in &letters {
                let b = *a * *l;
                if seen.insert(key(&b)) {
                    next.push(b);
                }
            }
        }
        elements.extend(next.iter().copied());
        frontier = next;
    }
    elements.iter().flat_map(|a| polygons.iter().map(move |p| moved(p, a))).collect()
}
