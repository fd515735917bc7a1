//! Cone-manifold structures on closed surfaces from pieces: genus-2 gluings
//! of two pentagons along the separating curve, and assembly of extremal
//! representations from pants and one-holed tori.

mod assemble;
mod glue;
pub mod models;
mod split;

pub use assemble::{
    assemble_extremal, tiling_preview, Assembly, AssembledPiece, DecompEdge, Decomposition, EdgeCheck, Piece,
    PieceDomain, PieceKind,
};
pub use glue::{cone_euler_check, glue_genus2, glue_hyperbolic, ConeEulerReport, GlueParams, GluedDomain};
pub use split::{split_genus2, GlueCase, Genus2Rep, Split};

use thiserror::Error;

use crate::covering_group::CoveringError;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GlueError {
    #[error("relator residual {0:e} exceeds 1e-8")]
    RelatorViolation(f64),
    #[error("separating commutator is the identity")]
    IdentityCommutator,
    #[error("Euler class {0} is not ±1")]
    EulerNotOne(i64),
    #[error("commutator regions do not match the case split: {0}")]
    RegionMismatch(String),
    #[error("case {0} is glued by the hyperbolic route")]
    UnsupportedCase(&'static str),
    #[error("search exhausted after {tried} basepoints: {diagnostics}")]
    SearchExhausted { tried: usize, diagnostics: String },
    #[error("no compatible basepoint within {stations} stations ({outside_collar} outside the collar)")]
    NoCompatibleBasepoint { stations: usize, outside_collar: usize },
    #[error("certificate missing: {0}")]
    CertificateMissing(String),
    #[error("boundary trace {found} does not match {expected}")]
    TraceMismatch { expected: f64, found: f64 },
    #[error("Euler class {euler} is not ±χ = ±{chi}")]
    NonExtremal { euler: i64, chi: i64 },
    #[error("decomposition curve {0} is not hyperbolic")]
    EllipticDecompositionCurve(String),
    #[error("piece Euler classes {pieces:?} do not sum to {total}")]
    PieceEulerMismatch { pieces: Vec<i64>, total: i64 },
    #[error("malformed decomposition: {0}")]
    BadDecomposition(String),
    #[error(transparent)]
    Covering(#[from] CoveringError),
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::character_dynamics::char_to_rep;
    use crate::covering_group::{euler_class, SurfaceRep};
    use crate::domain_builder::{good_rep, pants_from_lengths, PENTAGON_ORIENTATION};
    use crate::isometries::{conjugate, conjugator, Isometry};
    use crate::plane_geometry::collar_width;
    use std::f64::consts::PI;

    fn assert_glued(d: &GluedDomain) {
        assert!((d.cone_angle - 4.0 * PI).abs() < 1e-6);
        assert!((d.area - 2.0 * PI).abs() < 1e-5);
        assert_eq!(d.vertex_orbit, 8);
        assert!(d.pairing_residual < 1e-8);
        assert!((d.twist_sum() - 2.0 * PI).abs() < 1e-6);
        assert_eq!(d.euler_certificate, 1);
        assert!(d.cone_euler().consistent);
    }

    fn fuchsian_torus(t: f64) -> (Isometry, Isometry) {
        let (a, b) = char_to_rep(models::fuchsian_torus_character(t)).unwrap();
        (Isometry::from_mat(a).unwrap(), Isometry::from_mat(b).unwrap())
    }

    #[test]
    fn elliptic_split_and_glue() {
        let rep = models::elliptic_genus2().unwrap();
        assert_eq!(rep.euler, 1);
        let s = split_genus2(&rep).unwrap();
        assert_eq!(s.case, GlueCase::Elliptic);
        assert!((s.thetas.0 + s.thetas.1 - PI).abs() < 1e-8);
        assert!(s.thetas.0 <= PI / 2.0 && s.thetas.1 >= PI / 2.0);
        assert_glued(&glue_genus2(&s, &GlueParams::default()).unwrap());
    }

    #[test]
    fn mirrored_input_splits_the_same_way() {
        let rep = models::elliptic_genus2().unwrap().mirrored();
        assert_eq!(rep.euler, -1);
        let s = split_genus2(&rep).unwrap();
        assert!(s.mirrored);
        assert_eq!(s.case, GlueCase::Elliptic);
    }

    #[test]
    fn parabolic_split_and_glue() {
        let s = split_genus2(&models::parabolic_genus2().unwrap()).unwrap();
        assert_eq!(s.case, GlueCase::Parabolic);
        let swapped = split_genus2(&models::parabolic_genus2().unwrap().swapped()).unwrap();
        assert!(swapped.swapped);
        assert_eq!(swapped.rho0, s.rho0);
        assert_glued(&glue_genus2(&s, &GlueParams::default()).unwrap());
    }

    #[test]
    fn reversed_double_is_rejected() {
        let e = models::elliptic_genus2().unwrap();
        let double = models::reversed_double(e.g0, e.h0).unwrap();
        assert_eq!(double.euler, 0);
        assert_eq!(split_genus2(&double), Err(GlueError::EulerNotOne(0)));
    }

    #[test]
    fn broken_relator_is_rejected() {
        let e = models::elliptic_genus2().unwrap();
        assert!(matches!(Genus2Rep::new(e.g0, e.h0, e.g1, e.g1), Err(GlueError::RelatorViolation(_))));
    }

    #[test]
    fn hyperbolic_glue_reaches_four_pi() {
        let t = 3.0;
        let r = good_rep(t, collar_width(t).unwrap() / 2.0, PENTAGON_ORIENTATION).unwrap();
        let d = glue_hyperbolic((r.g, r.h, r.basepoint), fuchsian_torus(t), t, &GlueParams::default()).unwrap();
        assert_glued(&d);
    }

    #[test]
    fn hyperbolic_glue_preconditions() {
        let t = 3.0;
        let w = collar_width(t).unwrap();
        let r = good_rep(t, w / 2.0, PENTAGON_ORIENTATION).unwrap();
        let params = GlueParams::default();
        assert!(matches!(
            glue_hyperbolic((r.g, r.h, r.basepoint), fuchsian_torus(4.0), t, &params),
            Err(GlueError::TraceMismatch { .. })
        ));
        let axis = crate::domain_builder::OrientedLine::axis_of(&r.pentagon.boundary_element()).unwrap();
        let far = axis.point(0.0, 2.0 * w);
        assert_eq!(
            glue_hyperbolic((r.g, r.h, far), fuchsian_torus(t), t, &params),
            Err(GlueError::NoCompatibleBasepoint { stations: 0, outside_collar: 1 })
        );
    }

    #[test]
    fn octagon_group_assembles_from_two_tori() {
        let oct = models::regular_octagon_genus2();
        assert_eq!(oct.euler, 2);
        let dec: Decomposition = serde_json::from_str(
            r#"{"pieces":[{"kind":"PUNCTURED_TORUS","words":["G0","H0"]},
                          {"kind":"PUNCTURED_TORUS","words":["G1","H1"]}],
                "edges":[{"pieces":[0,1],"curve":"G0*H0*G0^-1*H0^-1"}]}"#,
        )
        .unwrap();
        let a = assemble_extremal(&oct.surface_rep(), &dec).unwrap();
        assert_eq!((a.piece_sum, a.total_euler), (2, 2));
        assert!(a.is_consistent());
        assert_eq!(tiling_preview(&oct.surface_rep(), &[a.pieces[0].polygon.clone()], 1).len(), 9);
    }

    #[test]
    fn four_holed_sphere_assembles_from_two_pants() {
        let (c0, c1) = pants_from_lengths(1.0, 1.5, 2.0).unwrap();
        let (d1, d2) = pants_from_lengths(1.2, 0.8, 2.0).unwrap();
        let k = conjugator(&(d1 * d2), &(c0 * c1).inverse()).unwrap();
        let rep = SurfaceRep::new(0, 4, vec![c0, c1, conjugate(&k, &d1), conjugate(&k, &d2)]).unwrap();
        assert_eq!(euler_class(&rep), Ok(2));
        let dec = Decomposition {
            pieces: vec![
                Piece { kind: PieceKind::Pants, words: vec!["C0".into(), "C1".into()], transport: None },
                Piece { kind: PieceKind::Pants, words: vec!["C2".into(), "C3".into()], transport: None },
            ],
            edges: vec![DecompEdge { pieces: [0, 1], curve: "C0*C1".into() }],
        };
        let a = assemble_extremal(&rep, &dec).unwrap();
        assert!(a.is_consistent());
        assert_eq!(a.edges[0].axis_shared, [true, true]);
    }

    #[test]
    fn assembly_rejections() {
        let e = models::elliptic_genus2().unwrap().surface_rep();
        let torus = |w: [&str; 2]| Piece {
            kind: PieceKind::PuncturedTorus,
            words: w.iter().map(|s| s.to_string()).collect(),
            transport: None,
        };
        let dec = |curve: &str| Decomposition {
            pieces: vec![torus(["G0", "H0"]), torus(["G1", "H1"])],
            edges: vec![DecompEdge { pieces: [0, 1], curve: curve.into() }],
        };
        assert_eq!(
            assemble_extremal(&e, &dec("G0*H0*G0^-1*H0^-1")),
            Err(GlueError::EllipticDecompositionCurve("G0*H0*G0^-1*H0^-1".into()))
        );
        assert_eq!(assemble_extremal(&e, &dec("G0")), Err(GlueError::NonExtremal { euler: 1, chi: -2 }));
    }

    #[test]
    fn cone_angles_predict_euler_class() {
        assert!(cone_euler_check(-2, &[4.0 * PI], 1).consistent);
        assert!(cone_euler_check(-2, &[], 2).consistent);
        assert!(cone_euler_check(-1, &[], 1).consistent);
        assert!(!cone_euler_check(-2, &[4.0 * PI], 2).consistent);
    }
}
