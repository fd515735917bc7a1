//! Representations used as worked examples and test inputs.

use std::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

use super::split::Genus2Rep;
use super::GlueError;
use crate::character_dynamics::{realize_commutator, Character};
use crate::isometries::{commutator, conjugate, mat_commutator, Isometry};
use crate::plane_geometry::{Geodesic, HPoint};

fn extremal(g0: Isometry, h0: Isometry, g1: Isometry, h1: Isometry) -> Result<Genus2Rep, GlueError> {
    let rep = Genus2Rep::new(g0, h0, g1, h1)?;
    Ok(if rep.euler == -1 { rep.mirrored() } else { rep })
}

/// Second handle realizing `[g1,h1] = [g0,h0]⁻¹` from the template
/// `(3, 3, z)` whose `κ` is `−κ(g0,h0)`, so the relator lifts to `−I`.
fn opposite_handle(g0: &Isometry, h0: &Isometry) -> Result<(Isometry, Isometry), GlueError> {
    let kappa0 = mat_commutator(g0.matrix(), h0.matrix()).trace();
    // z² − 9z + 16 + κ₀ = 0, smaller root
    let disc = 17.0 - 4.0 * kappa0;
    if disc < 0.0 {
        return Err(GlueError::CertificateMissing(format!("no (3, 3, z) template for κ = {}", -kappa0)));
    }
    let z = (9.0 - disc.sqrt()) / 2.0;
    let target = commutator(g0, h0).inverse();
    realize_commutator(&target, Character::new(3.0, 3.0, z))
        .map_err(|e| GlueError::CertificateMissing(e.to_string()))
}

/// `g0 = diag(2, ½)`, `h0` its conjugate by a quarter turn about `i`
/// (`κ = 0.734375`), and a second handle cancelling the commutator.
pub fn elliptic_genus2() -> Result<Genus2Rep, GlueError> {
    let g0 = Isometry::new(2.0, 0.0, 0.0, 0.5).expect("diagonal");
    let h0 = conjugate(&Isometry::rotation(HPoint::i(), FRAC_PI_2), &g0);
    let (g1, h1) = opposite_handle(&g0, &h0)?;
    extremal(g0, h0, g1, h1)
}

/// A reducible handle with unipotent commutator against a cusped torus.
pub fn parabolic_genus2() -> Result<Genus2Rep, GlueError> {
    let g0 = Isometry::new(2.0, 1.0, 0.0, 0.5).expect("upper triangular");
    let h0 = Isometry::new(1.5, -0.7, 0.0, 1.0 / 1.5).expect("upper triangular");
    let target = commutator(&g0, &h0).inverse();
    let (g1, h1) = realize_commutator(&target, Character::new(3.0, 3.0, 3.0))
        .map_err(|e| GlueError::CertificateMissing(e.to_string()))?;
    extremal(g0, h0, g1, h1)
}

/// `(g0, h0, h0, g0)`: the two handles cancel and the Euler class is 0.
pub fn reversed_double(g0: Isometry, h0: Isometry) -> Result<Genus2Rep, GlueError> {
    Genus2Rep::new(g0, h0, h0, g0)
}

/// Character `(a, a, z)` of a Fuchsian one-holed torus whose boundary has
/// trace `t`, i.e. `κ = −t`.
pub fn fuchsian_torus_character(t: f64) -> Character {
    let a: f64 = if t <= 4.25 { 3.0 } else { (4.0 + (8.0 + 4.0 * t).sqrt()).sqrt() + 0.5 };
    let a2 = a * a;
    // z² − a² z + 2a² − 2 + t = 0, smaller root
    let disc = a2 * a2 - 4.0 * (2.0 * a2 - 2.0 + t);
    Character::new(a, a, (a2 - disc.sqrt()) / 2.0)
}

/// The standard closed genus-2 surface: side pairings of the regular
/// octagon with all angles `π/4`, labelled `a1 b1 a1⁻¹ b1⁻¹ a2 b2 a2⁻¹ b2⁻¹`.
pub fn regular_octagon_genus2() -> Genus2Rep {
    // Inradius: cosh ρ = cot(π/8) = 1 + √2.
    let rho = (1.0 + 2f64.sqrt()).acosh();
    let push = Isometry::translation_along(&Geodesic::imaginary_axis(), 2.0 * rho);
    // Rotation about i turning the disc picture by `phi` counterclockwise.
    let probe = Isometry::rotation(HPoint::i(), 0.1).apply_point(HPoint::new(0.0, 2.0)).to_disk().arg();
    let sense = if probe > 0.0 { 1.0 } else { -1.0 };
    let turn = |phi: f64| Isometry::rotation(HPoint::i(), sense * phi);
    // Carries the side centred at angle `from` onto the one at `to`.
    let pairing = |from: f64, to: f64| turn(to) * push * turn(PI - from);
    let side = |k: usize| k as f64 * FRAC_PI_4;
    let pairs = [(0, 2), (1, 3), (4, 6), (5, 7)];
    for mask in 0..16u32 {
        let gens: Vec<Isometry> = pairs
            .iter()
            .enumerate()
            .map(|(i, &(a, b))| {
                if mask & (1 << i) == 0 {
                    pairing(side(b), side(a))
                } else {
                    pairing(side(a), side(b))
                }
            })
            .collect();
        if let Ok(rep) = Genus2Rep::new(gens[0], gens[1], gens[2], gens[3]) {
            if rep.euler.abs() == 2 {
                return if rep.euler < 0 { rep.mirrored() } else { rep };
            }
        }
    }
    unreachable!("one orientation of the side pairings closes up")
}
