//! The universal cover of PSL(2,ℝ) as lifted maps of the projective circle.
//!
//! Angles on ℝP¹ are measured in radians with a full turn equal to `π`. The
//! principal lift `ĝ_A` of an isometry is the continuous lift of
//! `x ↦ angle(A·(cos x, sin x))` with `ĝ_A(0) ∈ [0, π)`; a [`Lift`] with
//! winding `k` acts as `ĝ_A + kπ`.
//!
//! `Θ` is the rotation angle of the polar decomposition, continued along the
//! lift, so `Θ(z) = π` and `Θ(L⁻¹) = -Θ(L)` hold exactly.

use crate::isometries::{commutator, IsoKind, Isometry, ParabolicSense};
use crate::plane_geometry::{direction, wrap_angle, HPoint, Mat2};
use std::f64::consts::PI;
use std::fmt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CoveringError {
    #[error("elliptic isometries have no preferred lift")]
    EllipticHasNoPreferredLift,
    #[error("basepoint is fixed by the isometry")]
    FixedBasepoint,
    #[error("boundary generator {0} is elliptic")]
    EllipticBoundary(String),
    #[error("relator is not the identity (residual {0:e})")]
    RelatorNotIdentity(f64),
    #[error("Euler class {m} exceeds |χ| = {chi}")]
    MilnorWoodViolation { m: i64, chi: i64 },
    #[error("expected {expected} generators, got {got}")]
    GeneratorCount { expected: usize, got: usize },
    #[error("unknown generator {0}")]
    UnknownGenerator(String),
    #[error("malformed word {0:?}")]
    MalformedWord(String),
}

/// Polar data of a matrix: rotation angle `φ ∈ (-π, π]` and the symmetric
/// positive factor `S` with `A = R(φ) S`.
fn polar(m: Mat2) -> (f64, Mat2) {
    let phi = (m.c - m.b).atan2(m.a + m.d);
    let (s, c) = phi.sin_cos();
    let sym = Mat2::new(c, s, -s, c) * m;
    (phi, sym)
}

/// Signed angle from `v = (cos x, sin x)` to `S v` for symmetric positive `S`;
/// always inside `(-π/2, π/2)`.
fn sym_turn(sym: &Mat2, x: f64) -> f64 {
    let (s, c) = x.sin_cos();
    let (u, v) = (sym.a * c + sym.b * s, sym.c * c + sym.d * s);
    (c * v - s * u).atan2(c * u + s * v)
}

#[derive(Clone, Copy, Debug)]
struct Principal {
    phi: f64,
    sym: Mat2,
    shift: i64,
}

impl Principal {
    fn of(a: &Isometry) -> Self {
        let (phi, sym) = polar(a.matrix());
        let shift = -((phi + sym_turn(&sym, 0.0)) / PI).floor() as i64;
        Principal { phi, sym, shift }
    }

    fn eval(&self, x: f64) -> f64 {
        x + sym_turn(&self.sym, x) + self.phi + self.shift as f64 * PI
    }
}

/// Element of the universal cover: an isometry and a winding integer.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Lift {
    pub base: Isometry,
    pub winding: i64,
}

impl Lift {
    pub fn new(base: Isometry, winding: i64) -> Self {
        Lift { base, winding }
    }

    pub fn identity() -> Self {
        Lift::new(Isometry::identity(), 0)
    }

    /// The central generator: one full turn of the fibre.
    pub fn z() -> Self {
        Lift::new(Isometry::identity(), 1)
    }

    /// The lifted circle map.
    pub fn eval(&self, x: f64) -> f64 {
        Principal::of(&self.base).eval(x) + self.winding as f64 * PI
    }

    pub fn multiply(&self, other: &Lift) -> Lift {
        let p1 = Principal::of(&self.base);
        let p2 = Principal::of(&other.base);
        let base = self.base * other.base;
        let p12 = Principal::of(&base);
        let m = ((p1.eval(p2.eval(0.0)) - p12.eval(0.0)) / PI).round() as i64;
        Lift::new(base, self.winding + other.winding + m)
    }

    pub fn inverse(&self) -> Lift {
        let inv = self.base.inverse();
        let p = Principal::of(&self.base);
        let q = Principal::of(&inv);
        let m = (p.eval(q.eval(0.0)) / PI).round() as i64;
        Lift::new(inv, -self.winding - m)
    }

    pub fn times_z(&self, n: i64) -> Lift {
        Lift::new(self.base, self.winding + n)
    }

    pub fn theta(&self) -> f64 {
        let p = Principal::of(&self.base);
        p.phi + (p.shift + self.winding) as f64 * PI
    }

    /// Translation number in ℝP¹ units, from the classification.
    pub fn translation_number(&self) -> f64 {
        match region(self) {
            RegionLabel::Central(n)
            | RegionLabel::Hyp(n)
            | RegionLabel::ParPlus(n)
            | RegionLabel::ParMinus(n) => n as f64 * PI,
            RegionLabel::Ell(_) => {
                let angle = match self.base.classify().kind {
                    IsoKind::Elliptic { angle } => angle,
                    _ => unreachable!("elliptic region has elliptic base"),
                };
                angle / 2.0 + (self.theta() / PI).floor() * PI
            }
        }
    }
}

impl std::ops::Mul for Lift {
    type Output = Lift;
    fn mul(self, o: Lift) -> Lift {
        self.multiply(&o)
    }
}

pub fn lift_multiply(l1: &Lift, l2: &Lift) -> Lift {
    l1.multiply(l2)
}

pub fn theta(l: &Lift) -> f64 {
    l.theta()
}

/// The lift with a fixed point on ℝ (translation number zero).
pub fn simplest_lift(a: &Isometry) -> Result<Lift, CoveringError> {
    if let IsoKind::Elliptic { .. } = a.classify().kind {
        return Err(CoveringError::EllipticHasNoPreferredLift);
    }
    let p = Principal::of(a);
    // Canonical trace is positive, so φ ∈ (-π/2, π/2) and this lift has Θ = φ.
    Ok(Lift::new(*a, -p.shift))
}

/// `[g̃, h̃]` for any lifts of `g` and `h`; the result does not depend on them.
pub fn commutator_lift(g: &Isometry, h: &Isometry) -> Lift {
    let gl = Lift::new(*g, 0);
    let hl = Lift::new(*h, 0);
    gl * hl * gl.inverse() * hl.inverse()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RegionLabel {
    Central(i64),
    Hyp(i64),
    ParPlus(i64),
    ParMinus(i64),
    /// No index 0: `Ell(n)` has translation number in `((n-1)π, nπ)` for
    /// `n ≥ 1` and in `(nπ, (n+1)π)` for `n ≤ -1`.
    Ell(i64),
}

impl RegionLabel {
    pub fn index(&self) -> i64 {
        match *self {
            RegionLabel::Central(n)
            | RegionLabel::Hyp(n)
            | RegionLabel::ParPlus(n)
            | RegionLabel::ParMinus(n)
            | RegionLabel::Ell(n) => n,
        }
    }
}

impl fmt::Display for RegionLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            RegionLabel::Central(n) => write!(f, "CENTRAL({n})"),
            RegionLabel::Hyp(n) => write!(f, "HYP({n})"),
            RegionLabel::ParPlus(n) => write!(f, "PAR_PLUS({n})"),
            RegionLabel::ParMinus(n) => write!(f, "PAR_MINUS({n})"),
            RegionLabel::Ell(n) => write!(f, "ELL({n})"),
        }
    }
}

pub fn region(l: &Lift) -> RegionLabel {
    let class = l.base.classify();
    let th = l.theta();
    match class.kind {
        IsoKind::Identity => RegionLabel::Central((th / PI).round() as i64),
        IsoKind::Hyperbolic { .. } | IsoKind::Parabolic { .. } => {
            let p = Principal::of(&l.base);
            let n = ((th - p.phi) / PI).round() as i64;
            match class.kind {
                IsoKind::Parabolic { sense: ParabolicSense::Plus } => RegionLabel::ParPlus(n),
                IsoKind::Parabolic { sense: ParabolicSense::Minus } => RegionLabel::ParMinus(n),
                _ => RegionLabel::Hyp(n),
            }
        }
        IsoKind::Elliptic { .. } => {
            let j = (th / PI).floor() as i64;
            RegionLabel::Ell(if j >= 0 { j + 1 } else { j })
        }
    }
}

/// Angle between the parallel transport of the displacement direction at `p`
/// and its image under the differential, with the integer branch fixed by
/// the lift's translation number.
pub fn twist(l: &Lift, p: HPoint) -> Result<f64, CoveringError> {
    let target = 2.0 * l.translation_number();
    if l.base.is_identity() {
        return Ok(target);
    }
    let q = l.base.apply_point(p);
    let out = direction(p, q.into()).map_err(|_| CoveringError::FixedBasepoint)?;
    let back = direction(q, p.into()).map_err(|_| CoveringError::FixedBasepoint)?;
    let m = l.base.matrix();
    let deriv_arg = -2.0 * (p.z() * m.c + m.d).arg();
    // Measured counterclockwise in the picture; the positive rotation sense is
    // the opposite one.
    let picture = wrap_angle(out + deriv_arg - (back + PI));
    let base = -picture;
    let k = ((target - base) / (2.0 * PI)).round();
    let mut value = base + k * 2.0 * PI;
    if value <= target - PI {
        value += 2.0 * PI;
    } else if value > target + PI {
        value -= 2.0 * PI;
    }
    Ok(value)
}

/// Images of the standard generators `G0, H0, …, C0, …` of a surface group
/// with relator `[G0,H0]⋯[G(k-1),H(k-1)] C0⋯C(n-1)`.
#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceRep {
    pub genus: usize,
    pub boundary: usize,
    pub generators: Vec<Isometry>,
}

pub fn generator_names(genus: usize, boundary: usize) -> Vec<String> {
    let mut names = Vec::with_capacity(2 * genus + boundary);
    for i in 0..genus {
        names.push(format!("G{i}"));
        names.push(format!("H{i}"));
    }
    for j in 0..boundary {
        names.push(format!("C{j}"));
    }
    names
}

impl SurfaceRep {
    pub fn new(genus: usize, boundary: usize, generators: Vec<Isometry>) -> Result<Self, CoveringError> {
        let expected = 2 * genus + boundary;
        if generators.len() != expected {
            return Err(CoveringError::GeneratorCount { expected, got: generators.len() });
        }
        Ok(SurfaceRep { genus, boundary, generators })
    }

    pub fn euler_characteristic(&self) -> i64 {
        2 - 2 * self.genus as i64 - self.boundary as i64
    }

    pub fn names(&self) -> Vec<String> {
        generator_names(self.genus, self.boundary)
    }

    pub fn g(&self, i: usize) -> Isometry {
        self.generators[2 * i]
    }

    pub fn h(&self, i: usize) -> Isometry {
        self.generators[2 * i + 1]
    }

    pub fn c(&self, j: usize) -> Isometry {
        self.generators[2 * self.genus + j]
    }

    pub fn generator(&self, name: &str) -> Option<Isometry> {
        self.names().iter().position(|n| n == name).map(|i| self.generators[i])
    }

    pub fn relator(&self) -> Isometry {
        let mut acc = Isometry::identity();
        for i in 0..self.genus {
            acc = acc * commutator(&self.g(i), &self.h(i));
        }
        for j in 0..self.boundary {
            acc = acc * self.c(j);
        }
        acc
    }

    pub fn relator_residual(&self) -> f64 {
        self.relator().identity_residual()
    }

    /// Applies `a · x · a⁻¹` to every generator.
    pub fn conjugated(&self, a: &Isometry) -> SurfaceRep {
        SurfaceRep {
            genus: self.genus,
            boundary: self.boundary,
            generators: self.generators.iter().map(|g| crate::isometries::conjugate(a, g)).collect(),
        }
    }

    /// Evaluates a word such as `G0^-1*H0*C1` (tokens joined by `*`, each
    /// optionally suffixed `^-1` or `^n`). The empty word is the identity.
    pub fn eval_word(&self, word: &str) -> Result<Isometry, CoveringError> {
        let mut acc = Isometry::identity();
        for (name, power) in parse_word(word)? {
            let g = self.generator(&name).ok_or(CoveringError::UnknownGenerator(name))?;
            acc = acc * g.pow(power);
        }
        Ok(acc)
    }
}

/// Splits a word into `(generator, exponent)` pairs.
pub fn parse_word(word: &str) -> Result<Vec<(String, i64)>, CoveringError> {
    let word = word.trim();
    if word.is_empty() || word == "1" {
        return Ok(Vec::new());
    }
    word.split('*')
        .map(|tok| {
            let tok = tok.trim();
            let (name, power) = match tok.split_once('^') {
                Some((n, p)) => {
                    let p: i64 = p.trim().parse().map_err(|_| CoveringError::MalformedWord(word.to_string()))?;
                    (n.trim(), p)
                }
                None => (tok, 1),
            };
            if name.is_empty() || !name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_') {
                return Err(CoveringError::MalformedWord(word.to_string()));
            }
            Ok((name.to_string(), power))
        })
        .collect()
}

/// The integer `m` with lifted relator `z^m`, using winding-zero lifts of the
/// handle generators and simplest lifts of the boundary generators.
pub fn euler_class(rep: &SurfaceRep) -> Result<i64, CoveringError> {
    let names = rep.names();
    let mut boundary_lifts = Vec::with_capacity(rep.boundary);
    for j in 0..rep.boundary {
        let c = rep.c(j);
        let lift = simplest_lift(&c)
            .map_err(|_| CoveringError::EllipticBoundary(names[2 * rep.genus + j].clone()))?;
        boundary_lifts.push(lift);
    }
    let mut acc = Lift::identity();
    for i in 0..rep.genus {
        acc = acc * commutator_lift(&rep.g(i), &rep.h(i));
    }
    for c in &boundary_lifts {
        acc = acc * *c;
    }
    let residual = acc.base.identity_residual();
    if residual >= crate::isometries::IDENTITY_TOLERANCE {
        return Err(CoveringError::RelatorNotIdentity(residual));
    }
    let m = (acc.theta() / PI).round() as i64;
    let chi = rep.euler_characteristic().abs();
    if m.abs() > chi {
        return Err(CoveringError::MilnorWoodViolation { m, chi });
    }
    Ok(m)
}

/// Fixed point of the lifted map of a simplest lift. Eigenvector directions
/// are tried first; otherwise bisection on a sign change over one period.
/// Used as an independent check of the closed form.
pub fn lifted_fixed_point(l: &Lift) -> Option<f64> {
    let f = |x: f64| l.eval(x) - x;
    let m = l.base.matrix();
    let (tr, det) = (m.a + m.d, m.a * m.d - m.b * m.c);
    let disc = tr * tr - 4.0 * det;
    if disc >= 0.0 {
        for lambda in [(tr + disc.sqrt()) / 2.0, (tr - disc.sqrt()) / 2.0] {
            for (vx, vy) in [(m.b, lambda - m.a), (lambda - m.d, m.c)] {
                if vx.hypot(vy) > 1e-12 {
                    let x = vy.atan2(vx).rem_euclid(PI);
                    if f(x).abs() < 1e-9 {
                        return Some(x);
                    }
                }
            }
        }
    }
    let n = 64;
    let mut prev = (0.0, f(0.0));
    for k in 1..=n {
        let x = PI * k as f64 / n as f64;
        let fx = f(x);
        if prev.1 == 0.0 {
            return Some(prev.0);
        }
        if prev.1.signum() != fx.signum() {
            let (mut lo, mut hi) = (prev.0, x);
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if f(mid).signum() == prev.1.signum() {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            return Some(0.5 * (lo + hi));
        }
        prev = (x, fx);
    }
    None
}

/// Direction angle of a boundary point on ℝP¹ as seen by the linear action:
/// the line through `(x, 1)`, or the horizontal line for infinity.
pub fn projective_angle(x: crate::plane_geometry::BoundaryPoint) -> f64 {
    match x {
        crate::plane_geometry::BoundaryPoint::Infinity => 0.0,
        crate::plane_geometry::BoundaryPoint::Real(x) => 1.0f64.atan2(x).rem_euclid(PI),
    }
}
