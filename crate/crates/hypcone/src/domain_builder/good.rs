use std::collections::{HashSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::pentagon::{build_pentagon, OrientedLine, Pentagon};
use super::DomainError;
use crate::character_dynamics::Character;
use crate::isometries::{commutator, mat_commutator, segment_carrier, IsoKind, Isometry};
use crate::plane_geometry::{Geodesic, HPoint, Orientation, translation_length_for_trace};

/// A representation with an explicit valid pentagon at its basepoint.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodRep {
    pub g: Isometry,
    pub h: Isometry,
    pub basepoint: HPoint,
    /// Offset actually used after any halving.
    pub epsilon: f64,
    pub pentagon: Pentagon,
}

/// Build `(g, h)` with `Tr[g,h] = t` whose pentagon at a point near the
/// commutator axis is valid with the requested orientation.
pub fn good_rep(t: f64, epsilon: f64, orientation: Orientation) -> Result<GoodRep, DomainError> {
    let d = translation_length_for_trace(t).map_err(|_| DomainError::TraceNotHyperbolic(t))?;
    if !(epsilon > 0.0) {
        return Err(DomainError::NonPositiveEpsilon(epsilon));
    }
    let axis = Geodesic::imaginary_axis();
    let sign = match orientation {
        Orientation::Ccw => 1.0,
        Orientation::Cw => -1.0,
    };
    let mut eps = epsilon;
    const HALVINGS: usize = 40;
    for _ in 0..=HALVINGS {
        let e = sign * eps;
        let fp = |s: f64, h: f64| crate::plane_geometry::fermi_point(&axis, s, h);
        let (p, q, r, s, tt) = (fp(-d / 2.0, e), fp(-d / 4.0, 0.0), fp(0.0, -e), fp(d / 4.0, 0.0), fp(d / 2.0, e));
        if let (Ok(g), Ok(h)) = (segment_carrier(tt, s, q, r), segment_carrier(p, q, s, r)) {
            let elliptic = |a: &Isometry| matches!(a.classify().kind, IsoKind::Elliptic { .. });
            let tr = mat_commutator(g.matrix(), h.matrix()).trace();
            let pent = build_pentagon(&g, &h, p);
            if elliptic(&g) && elliptic(&h) && (tr - t).abs() < 1e-9 * t.max(1.0) && pent.is_valid_with(orientation)
            {
                return Ok(GoodRep { g, h, basepoint: p, epsilon: eps, pentagon: pent });
            }
        }
        eps /= 2.0;
    }
    Err(DomainError::EpsilonUnderflow(HALVINGS))
}

/// Orientation-preserving Nielsen transvections of a pair `(G, H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum NielsenMove {
    /// `(GH, H)`
    RightMulH,
    /// `(GH⁻¹, H)`
    RightMulHInv,
    /// `(HG, H)`
    LeftMulH,
    /// `(H⁻¹G, H)`
    LeftMulHInv,
    /// `(G, HG)`
    HRightMulG,
    /// `(G, HG⁻¹)`
    HRightMulGInv,
    /// `(G, GH)`
    HLeftMulG,
    /// `(G, G⁻¹H)`
    HLeftMulGInv,
}

pub fn nielsen_moves() -> [NielsenMove; 8] {
    use NielsenMove::*;
    [RightMulH, RightMulHInv, LeftMulH, LeftMulHInv, HRightMulG, HRightMulGInv, HLeftMulG, HLeftMulGInv]
}

/// Freely reduced word in `G`, `H`; letters are `(generator index, ±1)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BasisWord(Vec<(u8, i8)>);

impl BasisWord {
    pub fn generator(i: u8) -> Self {
        BasisWord(vec![(i, 1)])
    }

    pub fn letters(&self) -> &[(u8, i8)] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        BasisWord(self.0.iter().rev().map(|&(g, e)| (g, -e)).collect())
    }

    pub fn concat(&self, other: &BasisWord) -> Self {
        let mut out = self.0.clone();
        for &l in &other.0 {
            match out.last() {
                Some(&(g, e)) if g == l.0 && e == -l.1 => {
                    out.pop();
                }
                _ => out.push(l),
            }
        }
        BasisWord(out)
    }

    pub fn eval(&self, g: &Isometry, h: &Isometry) -> Isometry {
        self.0.iter().fold(Isometry::identity(), |acc, &(i, e)| {
            let base = if i == 0 { g } else { h };
            acc * if e > 0 { *base } else { base.inverse() }
        })
    }

    /// Render with the given generator names, e.g. `G0*H0^-1`.
    pub fn render(&self, names: [&str; 2]) -> String {
        if self.0.is_empty() {
            return "1".to_string();
        }
        self.0
            .iter()
            .map(|&(i, e)| {
                let n = names[i as usize];
                if e > 0 { n.to_string() } else { format!("{n}^-1") }
            })
            .collect::<Vec<_>>()
            .join("*")
    }
}

/// The orientation-reversing swap `(G, H) ↦ (H, G)`; its character move is
/// `(x, y, z) ↦ (y, x, z)`. Kept out of [`nielsen_moves`] on purpose.
pub fn swap_basis(words: &(BasisWord, BasisWord)) -> (BasisWord, BasisWord) {
    (words.1.clone(), words.0.clone())
}

/// Abelianized exponent sums `[[g in G', h in G'], [g in H', h in H']]`.
pub fn abelianization(words: &(BasisWord, BasisWord)) -> [[i64; 2]; 2] {
    let count = |w: &BasisWord| {
        let mut v = [0i64; 2];
        for &(i, e) in w.letters() {
            v[i as usize] += e as i64;
        }
        v
    };
    [count(&words.0), count(&words.1)]
}

pub fn apply_move(m: NielsenMove, (a, b): &(BasisWord, BasisWord)) -> (BasisWord, BasisWord) {
    use NielsenMove::*;
    match m {
        RightMulH => (a.concat(b), b.clone()),
        RightMulHInv => (a.concat(&b.inverse()), b.clone()),
        LeftMulH => (b.concat(a), b.clone()),
        LeftMulHInv => (b.inverse().concat(a), b.clone()),
        HRightMulG => (a.clone(), b.concat(a)),
        HRightMulGInv => (a.clone(), b.concat(&a.inverse())),
        HLeftMulG => (a.clone(), a.concat(b)),
        HLeftMulGInv => (a.clone(), a.inverse().concat(b)),
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SearchParams {
    pub epsilon: f64,
    pub depth: usize,
    /// Stations spread over one translation length either side of the anchor.
    pub stations: usize,
    pub orientation: Orientation,
}

impl Default for SearchParams {
    fn default() -> Self {
        SearchParams { epsilon: 0.1, depth: 12, stations: 64, orientation: super::PENTAGON_ORIENTATION }
    }
}

/// Witness that a representation has a basis and basepoint with a valid
/// pentagon.
#[derive(Clone, Debug, PartialEq)]
pub struct GoodnessCertificate {
    pub g_word: BasisWord,
    pub h_word: BasisWord,
    pub depth: usize,
    pub station: usize,
    pub offset: f64,
    pub basepoint: HPoint,
    /// Distance from the basepoint to the commutator axis.
    pub axis_distance: f64,
    pub character: Character,
    pub pentagon: Pentagon,
    /// Bases examined before success.
    pub bases_tried: usize,
}

fn key(c: &Character, g: &Isometry, h: &Isometry) -> [i64; 6] {
    let q = |v: f64| (v * 1e7).round() as i64;
    let sense = |a: &Isometry| match a.classify().kind {
        IsoKind::Elliptic { angle } => q(angle),
        _ => 0,
    };
    let [x, y, z] = c.coords();
    [q(x.abs()), q(y.abs()), q(z.abs()), (x * y * z).signum() as i64, sense(g), sense(h)]
}

/// Bases with a trace beyond this are neither tested nor expanded: their
/// matrices no longer carry enough precision for a pentagon.
const MAX_TRACE: f64 = 1e6;

/// Breadth-first search over Nielsen-equivalent bases for one admitting a
/// valid pentagon at a basepoint within `epsilon` of the commutator axis.
pub fn good_search(g: &Isometry, h: &Isometry, params: &SearchParams) -> Result<GoodnessCertificate, DomainError> {
    let eps = params.epsilon;
    let offsets = [0.25, 0.5, 0.75, 1.0 - 1e-3];
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    queue.push_back(((BasisWord::generator(0), BasisWord::generator(1)), 0usize));
    let mut tried = 0usize;
    while let Some((words, depth)) = queue.pop_front() {
        let (gw, hw) = (words.0.eval(g, h), words.1.eval(g, h));
        let ch = Character::of_pair(gw.matrix(), hw.matrix());
        if !seen.insert(key(&ch, &gw, &hw)) {
            continue;
        }
        if ch.coords().iter().any(|v| v.abs() > MAX_TRACE) {
            continue;
        }
        tried += 1;
        if let Some(cert) = try_basis(&gw, &hw, params, &offsets, eps) {
            let (station, offset, pentagon) = cert;
            let k = commutator(&gw.inverse(), &hw.inverse());
            let axis_distance = OrientedLine::axis_of(&k).map_or(f64::NAN, |l| l.coords(pentagon.basepoint).1.abs());
            return Ok(GoodnessCertificate {
                g_word: words.0,
                h_word: words.1,
                depth,
                station,
                offset,
                basepoint: pentagon.basepoint,
                axis_distance,
                character: ch,
                pentagon,
                bases_tried: tried,
            });
        }
        if depth < params.depth {
            for m in nielsen_moves() {
                queue.push_back((apply_move(m, &words), depth + 1));
            }
        }
    }
    Err(DomainError::NotFound { depth: params.depth, stations: params.stations })
}

fn try_basis(
    g: &Isometry,
    h: &Isometry,
    params: &SearchParams,
    offsets: &[f64],
    eps: f64,
) -> Option<(usize, f64, Pentagon)> {
    let k = commutator(&g.inverse(), &h.inverse());
    let len = match k.classify().kind {
        IsoKind::Hyperbolic { length } => length,
        _ => return None,
    };
    let line = OrientedLine::axis_of(&k)?;
    let origin = line.anchor(g).or_else(|| line.anchor(h)).unwrap_or(0.0);
    for station in 0..params.stations {
        // Validity is not periodic along the axis, so the window spans a
        // translation length on each side of the anchor.
        let s = origin + len * (2.0 * station as f64 / params.stations as f64 - 1.0);
        for &f in offsets {
            for sign in [1.0, -1.0] {
                let off = sign * f * eps;
                let pent = build_pentagon(g, h, line.point(s, off));
                if pent.is_valid_with(params.orientation) {
                    return Some((station, off, pent));
                }
            }
        }
    }
    None
}
