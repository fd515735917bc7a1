//! Characters of punctured-torus representations and the action of the
//! mapping class group on them.
//!
//! A character is `(Tr g, Tr h, Tr gh)` computed with SL(2,ℝ) signs; the
//! commutator trace is `κ(x, y, z) = x² + y² + z² - xyz - 2`.

use crate::isometries::{commutator, conjugate, conjugator, IsoKind, Isometry, IsometryError};
use crate::plane_geometry::Mat2;
use rand::Rng;
use std::collections::{HashSet, VecDeque};
use std::fmt;
use thiserror::Error;

/// Default iteration budget for [`goldman_reduce`].
pub const DEFAULT_REDUCTION_BUDGET: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CharacterError {
    #[error("reduction needs κ > 2, got {0}")]
    NotInRegime(f64),
    #[error("no decision within {0} iterations")]
    IterationBudgetExceeded(usize),
    #[error("descent stalled at {0} without a decision")]
    ReductionStalled(Character),
    #[error("character is reducible (κ = 2)")]
    ReducibleCharacter,
    #[error("character {0} is not in the real character variety")]
    NotInVariety(Character),
    #[error("level set needs t > 2, got {0}")]
    LevelNotHyperbolic(f64),
    #[error("no real point found after {0} draws")]
    EmptyAfterMaxRejects(usize),
    #[error("commutator of the template does not match the target: {0}")]
    TemplateMismatch(String),
}

impl From<IsometryError> for CharacterError {
    fn from(e: IsometryError) -> Self {
        CharacterError::TemplateMismatch(e.to_string())
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Character {
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl Character {
    pub fn new(x: f64, y: f64, z: f64) -> Self {
        Character { x, y, z }
    }

    /// Character of a pair of SL(2,ℝ) matrices.
    pub fn of_pair(g: Mat2, h: Mat2) -> Self {
        Character::new(g.trace(), h.trace(), (g * h).trace())
    }

    pub fn kappa(&self) -> f64 {
        kappa(self.x, self.y, self.z)
    }

    pub fn coords(&self) -> [f64; 3] {
        [self.x, self.y, self.z]
    }

    pub fn sum_of_squares(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Some coordinate strictly inside `(-2, 2)`.
    pub fn has_elliptic_coordinate(&self) -> bool {
        self.coords().iter().any(|c| c.abs() < 2.0)
    }

    /// In the real character variety: `κ ≥ 2` or some `|coordinate| ≥ 2`.
    pub fn in_variety(&self) -> bool {
        self.kappa() >= 2.0 || self.coords().iter().any(|c| c.abs() >= 2.0)
    }

    /// Scale for relative κ errors.
    pub fn kappa_scale(&self) -> f64 {
        1.0f64.max(self.sum_of_squares() + (self.x * self.y * self.z).abs())
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {})", self.x, self.y, self.z)
    }
}

pub fn kappa(x: f64, y: f64, z: f64) -> f64 {
    x * x + y * y + z * z - x * y * z - 2.0
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GammaMove {
    VietaX,
    VietaY,
    VietaZ,
    SignXY,
    SignYZ,
    SignZX,
    /// New coordinate `i` is old coordinate `perm[i]`.
    Perm([u8; 3]),
}

impl fmt::Display for GammaMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GammaMove::VietaX => write!(f, "VX"),
            GammaMove::VietaY => write!(f, "VY"),
            GammaMove::VietaZ => write!(f, "VZ"),
            GammaMove::SignXY => write!(f, "SXY"),
            GammaMove::SignYZ => write!(f, "SYZ"),
            GammaMove::SignZX => write!(f, "SZX"),
            GammaMove::Perm(p) => write!(f, "P{}{}{}", p[0], p[1], p[2]),
        }
    }
}

pub fn gamma_apply(c: Character, m: GammaMove) -> Character {
    let Character { x, y, z } = c;
    match m {
        GammaMove::VietaX => Character::new(y * z - x, y, z),
        GammaMove::VietaY => Character::new(x, x * z - y, z),
        GammaMove::VietaZ => Character::new(x, y, x * y - z),
        GammaMove::SignXY => Character::new(-x, -y, z),
        GammaMove::SignYZ => Character::new(x, -y, -z),
        GammaMove::SignZX => Character::new(-x, y, -z),
        GammaMove::Perm(p) => {
            let v = [x, y, z];
            Character::new(v[p[0] as usize], v[p[1] as usize], v[p[2] as usize])
        }
    }
}

pub fn replay(c: Character, moves: &[GammaMove]) -> Character {
    moves.iter().fold(c, |acc, m| gamma_apply(acc, *m))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ReductionKind {
    Pants,
    Elliptic,
}

impl ReductionKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ReductionKind::Pants => "PANTS",
            ReductionKind::Elliptic => "ELLIPTIC",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReductionOutcome {
    pub kind: ReductionKind,
    pub witness: Character,
    pub moves: Vec<GammaMove>,
}

fn all_at_most_minus_two(c: &Character) -> bool {
    c.coords().iter().all(|v| *v <= -2.0)
}

/// Double-sign moves making every coordinate negative, when the number of
/// negative coordinates is odd.
fn sign_normalize(c: Character) -> Option<Vec<GammaMove>> {
    let pos = [c.x > 0.0, c.y > 0.0, c.z > 0.0];
    match pos {
        [false, false, false] => Some(vec![]),
        [true, true, false] => Some(vec![GammaMove::SignXY]),
        [false, true, true] => Some(vec![GammaMove::SignYZ]),
        [true, false, true] => Some(vec![GammaMove::SignZX]),
        _ => None,
    }
}

fn best_vieta(c: &Character) -> (GammaMove, f64) {
    let s = c.sum_of_squares();
    [GammaMove::VietaX, GammaMove::VietaY, GammaMove::VietaZ]
        .into_iter()
        .map(|m| (m, s - gamma_apply(*c, m).sum_of_squares()))
        .fold((GammaMove::VietaX, f64::NEG_INFINITY), |best, cand| if cand.1 > best.1 { cand } else { best })
}

/// Greedy descent on `x² + y² + z²` over the Vieta moves, deciding between
/// pants-type and elliptic-type characters.
pub fn goldman_reduce(c: Character, max_iter: usize) -> Result<ReductionOutcome, CharacterError> {
    let k = c.kappa();
    if !(k > 2.0) {
        return Err(CharacterError::NotInRegime(k));
    }
    let mut cur = c;
    let mut moves = Vec::new();
    let mut kicked = false;
    for _ in 0..max_iter {
        if all_at_most_minus_two(&cur) {
            return Ok(ReductionOutcome { kind: ReductionKind::Pants, witness: cur, moves });
        }
        if cur.has_elliptic_coordinate() {
            return Ok(ReductionOutcome { kind: ReductionKind::Elliptic, witness: cur, moves });
        }
        let (m, gain) = best_vieta(&cur);
        if gain > 1e-12 {
            cur = gamma_apply(cur, m);
            moves.push(m);
            continue;
        }
        if let Some(signs) = sign_normalize(cur) {
            for s in signs {
                cur = gamma_apply(cur, s);
                moves.push(s);
            }
            return Ok(ReductionOutcome { kind: ReductionKind::Pants, witness: cur, moves });
        }
        if kicked {
            return Err(CharacterError::ReductionStalled(cur));
        }
        kicked = true;
        cur = gamma_apply(cur, GammaMove::VietaZ);
        moves.push(GammaMove::VietaZ);
    }
    Err(CharacterError::IterationBudgetExceeded(max_iter))
}

/// Breadth-first search over Vieta words up to `depth`, returning the type of
/// the first witness found. Sign moves are accounted for by parity.
pub fn orbit_oracle(c: Character, depth: usize) -> Option<ReductionKind> {
    let classify = |c: &Character| {
        if c.has_elliptic_coordinate() {
            Some(ReductionKind::Elliptic)
        } else if c.x * c.y * c.z < 0.0 {
            Some(ReductionKind::Pants)
        } else {
            None
        }
    };
    let mut queue = VecDeque::new();
    queue.push_back((c, None::<GammaMove>, 0usize));
    while let Some((cur, last, d)) = queue.pop_front() {
        if let Some(kind) = classify(&cur) {
            return Some(kind);
        }
        if d == depth {
            continue;
        }
        for m in [GammaMove::VietaX, GammaMove::VietaY, GammaMove::VietaZ] {
            if Some(m) != last {
                queue.push_back((gamma_apply(cur, m), Some(m), d + 1));
            }
        }
    }
    None
}

fn companion(x: f64, y: f64, z: f64) -> (Mat2, Mat2) {
    let xi = (z + z.signum() * (z * z - 4.0).max(0.0).sqrt()) / 2.0;
    (Mat2::new(x, -1.0, 1.0, 0.0), Mat2::new(0.0, xi, -1.0 / xi, y))
}

/// Explicit SL(2,ℝ) matrices `(g, h)` with the given character.
pub fn char_to_rep(c: Character) -> Result<(Mat2, Mat2), CharacterError> {
    let k = c.kappa();
    if (k - 2.0).abs() < 1e-9 * c.kappa_scale() {
        return Err(CharacterError::ReducibleCharacter);
    }
    if !c.in_variety() {
        return Err(CharacterError::NotInVariety(c));
    }
    let Character { x, y, z } = c;
    if z.abs() >= 2.0 {
        return Ok(companion(x, y, z));
    }
    if x.abs() >= 2.0 {
        // (a, b) with traces (z, y, x); then G = ab, H = b⁻¹.
        let (a, b) = companion(z, y, x);
        return Ok((a * b, b.adjugate()));
    }
    if y.abs() >= 2.0 {
        // (a, b) with traces (x, z, y); then G = a⁻¹, H = ab.
        let (a, b) = companion(x, z, y);
        return Ok((a.adjugate(), a * b));
    }
    // Two rotations about points at distance δ on the imaginary axis.
    let alpha = (x / 2.0).acos();
    let beta = (y / 2.0).acos();
    let num = 2.0 * alpha.cos() * beta.cos() - z;
    let den = 2.0 * alpha.sin() * beta.sin();
    let (beta, cosh_delta) = if num >= 0.0 { (beta, num / den) } else { (-beta, -num / den) };
    if cosh_delta < 1.0 {
        return Err(CharacterError::NotInVariety(c));
    }
    let delta = cosh_delta.acosh();
    let rot = |t: f64| Mat2::new(t.cos(), -t.sin(), t.sin(), t.cos());
    let e = (delta / 2.0).exp();
    let t = Mat2::new(e, 0.0, 0.0, 1.0 / e);
    Ok((rot(alpha), t * rot(beta) * t.adjugate()))
}

/// Axis-aligned sampling box.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SampleBox {
    pub x_min: f64,
    pub x_max: f64,
    pub y_min: f64,
    pub y_max: f64,
}

impl SampleBox {
    pub fn square(half_width: f64) -> Self {
        SampleBox { x_min: -half_width, x_max: half_width, y_min: -half_width, y_max: half_width }
    }
}

/// Draws `(x, y)` uniformly in the box, solves `κ = t` for `z`, and picks one
/// of the two real roots uniformly.
pub fn sample_level_set<R: Rng + ?Sized>(
    t: f64,
    bounds: SampleBox,
    rng: &mut R,
    max_rejects: usize,
) -> Result<Character, CharacterError> {
    if !(t > 2.0) {
        return Err(CharacterError::LevelNotHyperbolic(t));
    }
    for _ in 0..max_rejects {
        let x = rng.random_range(bounds.x_min..bounds.x_max);
        let y = rng.random_range(bounds.y_min..bounds.y_max);
        let upper: bool = rng.random();
        // z² - xy z + (x² + y² - 2 - t) = 0
        let b = -x * y;
        let c0 = x * x + y * y - 2.0 - t;
        let disc = b * b - 4.0 * c0;
        if disc < 0.0 {
            continue;
        }
        let sq = disc.sqrt();
        let q = -0.5 * (b + if b >= 0.0 { sq } else { -sq });
        let (r1, r2) = if q == 0.0 { (0.0, 0.0) } else { (q, c0 / q) };
        let (lo, hi) = if r1 <= r2 { (r1, r2) } else { (r2, r1) };
        return Ok(Character::new(x, y, if upper { hi } else { lo }));
    }
    Err(CharacterError::EmptyAfterMaxRejects(max_rejects))
}

/// A pair `(g, h)` with the template's character and `[g, h] = target`
/// exactly up to round-off. The template κ must match the target's class.
pub fn realize_commutator(target: &Isometry, template: Character) -> Result<(Isometry, Isometry), CharacterError> {
    let (gm, hm) = char_to_rep(template)?;
    let mut g = Isometry::from_mat(gm)?;
    let mut h = Isometry::from_mat(hm)?;
    let mut comm = commutator(&g, &h);
    let same_sense = |a: &Isometry, b: &Isometry| match (a.classify().kind, b.classify().kind) {
        (IsoKind::Elliptic { angle: x }, IsoKind::Elliptic { angle: y }) => (x - y).abs() < 1e-6,
        (IsoKind::Parabolic { sense: x }, IsoKind::Parabolic { sense: y }) => x == y,
        _ => true,
    };
    if !same_sense(&comm, target) {
        g = g.mirror();
        h = h.mirror();
        comm = commutator(&g, &h);
    }
    let a = conjugator(&comm, target)?;
    Ok((conjugate(&a, &g), conjugate(&a, &h)))
}

/// Characters reached from `c` by all Vieta words up to `depth`, deduplicated
/// after sign normalization.
pub fn vieta_orbit(c: Character, depth: usize) -> Vec<Character> {
    let key = |c: &Character| {
        let mut v = c.coords().map(|x| (x.abs() * 1e9).round() as i64);
        v.sort_unstable();
        v
    };
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut frontier = vec![c];
    seen.insert(key(&c));
    out.push(c);
    for _ in 0..depth {
        let mut next = Vec::new();
        for cur in frontier {
            for m in [GammaMove::VietaX, GammaMove::VietaY, GammaMove::VietaZ] {
                let n = gamma_apply(cur, m);
                if seen.insert(key(&n)) {
                    out.push(n);
                    next.push(n);
                }
            }
        }
        frontier = next;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::isometries::mat_commutator;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(0.0, 0.0, 0.0), -2.0);
        assert_eq!(kappa(3.0, 3.0, 3.0), -2.0);
        assert_eq!(kappa(2.5, 2.5, 3.125), 0.734375);
    }

    #[test]
    fn gamma_examples() {
        let c = gamma_apply(Character::new(3.0, 3.0, 3.0), GammaMove::VietaZ);
        assert_eq!(c, Character::new(3.0, 3.0, 6.0));
        assert_eq!(c.kappa(), -2.0);
        assert_eq!(gamma_apply(Character::new(1.0, 2.0, 3.0), GammaMove::SignXY), Character::new(-1.0, -2.0, 3.0));
        let start = Character::new(1.0, 2.0, 3.0);
        let cyc = GammaMove::Perm([1, 2, 0]);
        assert_eq!(replay(start, &[cyc, cyc, cyc]), start);
        assert_eq!(gamma_apply(start, cyc), Character::new(2.0, 3.0, 1.0));
    }

    #[test]
    fn reduce_examples() {
        let out = goldman_reduce(Character::new(-3.0, -3.0, -3.0), DEFAULT_REDUCTION_BUDGET).unwrap();
        assert_eq!(out.kind, ReductionKind::Pants);
        assert!(out.moves.is_empty());
        let out = goldman_reduce(Character::new(0.0, 0.0, 3.0), DEFAULT_REDUCTION_BUDGET).unwrap();
        assert_eq!(out.kind, ReductionKind::Elliptic);
        assert!(out.moves.is_empty());
        let out = goldman_reduce(Character::new(3.0, 3.0, 3.0), 10);
        assert_eq!(out, Err(CharacterError::NotInRegime(-2.0)));
        // a pants triple disguised by Vieta moves and signs
        let start = replay(Character::new(-3.0, -2.5, -4.0), &[GammaMove::VietaZ, GammaMove::VietaX, GammaMove::SignXY]);
        let out = goldman_reduce(start, DEFAULT_REDUCTION_BUDGET).unwrap();
        assert_eq!(out.kind, ReductionKind::Pants);
        assert!(out.witness.coords().iter().all(|c| *c <= -2.0));
        assert_eq!(replay(start, &out.moves), out.witness);
    }

    #[test]
    fn reduce_agrees_with_orbit_oracle() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let mut compared = 0;
        for _ in 0..1000 {
            let c = sample_level_set(3.0, SampleBox::square(5.0), &mut rng, 1000).unwrap();
            let out = goldman_reduce(c, DEFAULT_REDUCTION_BUDGET).unwrap();
            assert_eq!(replay(c, &out.moves), out.witness);
            if let Some(kind) = orbit_oracle(c, 12) {
                assert_eq!(kind, out.kind, "{c}");
                compared += 1;
            }
        }
        assert!(compared > 900);
    }

    #[test]
    fn char_to_rep_examples() {
        for c in [Character::new(2.5, 2.5, 3.125), Character::new(0.0, 0.0, 3.0), Character::new(3.0, 0.5, 1.0), Character::new(0.5, -3.0, 1.0), Character::new(1.5, 1.2, -1.9)] {
            let (g, h) = char_to_rep(c).unwrap();
            let got = Character::of_pair(g, h);
            assert_abs_diff_eq!(got.x, c.x, epsilon = 1e-10);
            assert_abs_diff_eq!(got.y, c.y, epsilon = 1e-10);
            assert_abs_diff_eq!(got.z, c.z, epsilon = 1e-10);
            assert_abs_diff_eq!(g.det(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(h.det(), 1.0, epsilon = 1e-12);
            assert_abs_diff_eq!(mat_commutator(g, h).trace(), c.kappa(), epsilon = 1e-9);
        }
        assert_eq!(char_to_rep(Character::new(2.0, 2.0, 2.0)), Err(CharacterError::ReducibleCharacter));
        let su2 = Character::new(0.0, 0.0, 0.0);
        assert_eq!(char_to_rep(su2), Err(CharacterError::NotInVariety(su2)));
    }

    #[test]
    fn sampler_hits_both_roots() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let (mut upper, mut lower) = (0, 0);
        for _ in 0..10_000 {
            let c = sample_level_set(3.0, SampleBox::square(5.0), &mut rng, 1000).unwrap();
            assert!((c.kappa() - 3.0).abs() < 1e-9 * c.kappa_scale());
            let mid = c.x * c.y / 2.0;
            if c.z >= mid {
                upper += 1;
            } else {
                lower += 1;
            }
        }
        assert!(upper > 1000 && lower > 1000);
        assert_eq!(
            sample_level_set(2.0, SampleBox::square(5.0), &mut rng, 10),
            Err(CharacterError::LevelNotHyperbolic(2.0))
        );
    }

    #[test]
    fn realize_commutator_matches_target() {
        let template = Character::new(3.0, 3.0, 2.625);
        let (g, h) = char_to_rep(template).unwrap();
        let comm = commutator(&Isometry::from_mat(g).unwrap(), &Isometry::from_mat(h).unwrap());
        let a = Isometry::new(1.2, 0.3, -0.4, (1.0 - 0.3 * 0.4) / 1.2).unwrap();
        let target = conjugate(&a, &comm);
        let (g2, h2) = realize_commutator(&target, template).unwrap();
        assert!(commutator(&g2, &h2).distance(&target) < 1e-9);
        let mirrored = target.mirror();
        let (g3, h3) = realize_commutator(&mirrored, template).unwrap();
        assert!(commutator(&g3, &h3).distance(&mirrored) < 1e-9);
    }

    fn arb_char() -> impl Strategy<Value = Character> {
        (-6.0f64..6.0, -6.0f64..6.0, -6.0f64..6.0).prop_map(|(x, y, z)| Character::new(x, y, z))
    }

    fn arb_move() -> impl Strategy<Value = GammaMove> {
        prop_oneof![
            Just(GammaMove::VietaX),
            Just(GammaMove::VietaY),
            Just(GammaMove::VietaZ),
            Just(GammaMove::SignXY),
            Just(GammaMove::SignYZ),
            Just(GammaMove::SignZX),
            Just(GammaMove::Perm([1, 0, 2])),
            Just(GammaMove::Perm([1, 2, 0])),
        ]
    }

    proptest! {
        #[test]
        fn moves_preserve_kappa(c in arb_char(), moves in proptest::collection::vec(arb_move(), 1..8)) {
            let mut cur = c;
            for m in moves {
                let next = gamma_apply(cur, m);
                prop_assert!((next.kappa() - cur.kappa()).abs() <= 1e-12 * next.kappa_scale().max(cur.kappa_scale()));
                cur = next;
            }
        }

        #[test]
        fn integer_moves_are_exact(x in -20i32..20, y in -20i32..20, z in -20i32..20, moves in proptest::collection::vec(arb_move(), 1..6)) {
            let c = Character::new(x as f64, y as f64, z as f64);
            let out = replay(c, &moves);
            // Exact only while every term stays an integer below 2^53.
            prop_assume!(out.kappa_scale() < 2f64.powi(52));
            prop_assert_eq!(out.kappa(), c.kappa());
        }

        #[test]
        fn char_to_rep_round_trip(c in arb_char()) {
            prop_assume!(c.in_variety() && (c.kappa() - 2.0).abs() > 1e-6);
            let (g, h) = char_to_rep(c).unwrap();
            let got = Character::of_pair(g, h);
            let scale = c.kappa_scale().sqrt();
            prop_assert!((got.x - c.x).abs() < 1e-10 * scale);
            prop_assert!((got.y - c.y).abs() < 1e-10 * scale);
            prop_assert!((got.z - c.z).abs() < 1e-10 * scale);
        }

        #[test]
        fn reduction_is_gamma_invariant(seed in 0u64..1000, moves in proptest::collection::vec(arb_move(), 20)) {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let c = sample_level_set(3.0, SampleBox::square(5.0), &mut rng, 1000).unwrap();
            // Vieta moves that would leave a moderate range are replaced by a
            // transposition so that κ stays accurate in floating point.
            let d = moves.iter().fold(c, |acc, m| {
                let next = gamma_apply(acc, *m);
                if next.coords().iter().any(|v| v.abs() > 1e3) {
                    gamma_apply(acc, GammaMove::Perm([1, 0, 2]))
                } else {
                    next
                }
            });
            let a = goldman_reduce(c, DEFAULT_REDUCTION_BUDGET).unwrap();
            let b = goldman_reduce(d, DEFAULT_REDUCTION_BUDGET).unwrap();
            prop_assert_eq!(a.kind, b.kind);
        }
    }
}
