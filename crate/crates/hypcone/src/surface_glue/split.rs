use std::f64::consts::PI;

use super::GlueError;
use crate::covering_group::{commutator_lift, euler_class, region, RegionLabel, SurfaceRep};
use crate::isometries::{commutator, conjugate, mat_commutator, IsoKind, Isometry};

/// Images of `G0, H0, G1, H1` with `[G0,H0][G1,H1] = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct Genus2Rep {
    pub g0: Isometry,
    pub h0: Isometry,
    pub g1: Isometry,
    pub h1: Isometry,
    pub euler: i64,
}

impl Genus2Rep {
    pub fn new(g0: Isometry, h0: Isometry, g1: Isometry, h1: Isometry) -> Result<Self, GlueError> {
        let rep = SurfaceRep::new(2, 0, vec![g0, h0, g1, h1])?;
        let residual = rep.relator_residual();
        if residual >= 1e-8 {
            return Err(GlueError::RelatorViolation(residual));
        }
        let euler = euler_class(&rep)?;
        Ok(Genus2Rep { g0, h0, g1, h1, euler })
    }

    pub fn from_surface_rep(rep: &SurfaceRep) -> Result<Self, GlueError> {
        if rep.genus != 2 || rep.boundary != 0 {
            return Err(GlueError::BadDecomposition(format!(
                "expected a closed genus-2 surface, got genus {} with {} boundary components",
                rep.genus, rep.boundary
            )));
        }
        Genus2Rep::new(rep.g(0), rep.h(0), rep.g(1), rep.h(1))
    }

    pub fn surface_rep(&self) -> SurfaceRep {
        SurfaceRep::new(2, 0, vec![self.g0, self.h0, self.g1, self.h1]).expect("four generators")
    }

    /// Conjugate by a reflection; negates the Euler class.
    pub fn mirrored(&self) -> Self {
        Genus2Rep {
            g0: self.g0.mirror(),
            h0: self.h0.mirror(),
            g1: self.g1.mirror(),
            h1: self.h1.mirror(),
            euler: -self.euler,
        }
    }

    /// The same representation read with the handles in the other order;
    /// `[G1,H1][G0,H0] = 1` is a conjugate of the relator.
    pub fn swapped(&self) -> Self {
        Genus2Rep { g0: self.g1, h0: self.h1, g1: self.g0, h1: self.h0, euler: self.euler }
    }

    /// The loop `G0⁻¹ H0⁻¹ G1 H1` joining the two basepoint lifts.
    pub fn transport(&self) -> Isometry {
        self.g0.inverse() * self.h0.inverse() * self.g1 * self.h1
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GlueCase {
    Elliptic,
    Parabolic,
    Hyperbolic,
}

impl GlueCase {
    pub fn as_str(self) -> &'static str {
        match self {
            GlueCase::Elliptic => "ELLIPTIC",
            GlueCase::Parabolic => "PARABOLIC",
            GlueCase::Hyperbolic => "HYPERBOLIC",
        }
    }
}

/// The two one-holed torus representations on either side of the curve
/// `[G0,H0]`, the second conjugated by the transport loop.
#[derive(Clone, Debug, PartialEq)]
pub struct Split {
    /// The representation actually split: mirrored to Euler class `+1` and
    /// with handles ordered so the first side carries the smaller `Θ`.
    pub rep: Genus2Rep,
    pub rho0: (Isometry, Isometry),
    pub rho1: (Isometry, Isometry),
    pub case: GlueCase,
    pub mirrored: bool,
    pub swapped: bool,
    /// `Θ` of the two commutator lifts.
    pub thetas: (f64, f64),
    pub regions: (RegionLabel, RegionLabel),
}

pub fn split_genus2(input: &Genus2Rep) -> Result<Split, GlueError> {
    if input.euler.abs() != 1 {
        return Err(GlueError::EulerNotOne(input.euler));
    }
    let mirrored = input.euler == -1;
    let mut rep = if mirrored { input.mirrored() } else { input.clone() };
    let k0 = commutator(&rep.g0, &rep.h0);
    let case = match k0.classify().kind {
        IsoKind::Identity => return Err(GlueError::IdentityCommutator),
        IsoKind::Elliptic { .. } => GlueCase::Elliptic,
        IsoKind::Parabolic { .. } => GlueCase::Parabolic,
        IsoKind::Hyperbolic { .. } => GlueCase::Hyperbolic,
    };
    let lifts = |r: &Genus2Rep| (commutator_lift(&r.g0, &r.h0), commutator_lift(&r.g1, &r.h1));
    let (mut l0, mut l1) = lifts(&rep);
    let mut swapped = false;
    match case {
        GlueCase::Elliptic => {
            if l0.theta() > l1.theta() {
                rep = rep.swapped();
                swapped = true;
                (l0, l1) = lifts(&rep);
            }
            let ok = matches!((region(&l0), region(&l1)), (RegionLabel::Ell(1), RegionLabel::Ell(1)));
            let sum = l0.theta() + l1.theta();
            if !ok || (sum - PI).abs() > 1e-8 {
                return Err(GlueError::RegionMismatch(format!(
                    "{} and {} with Θ sum {sum}",
                    region(&l0),
                    region(&l1)
                )));
            }
        }
        GlueCase::Parabolic => {
            let tr = |r: &Genus2Rep| mat_commutator(r.g0.matrix(), r.h0.matrix()).trace();
            if tr(&rep) < 0.0 {
                rep = rep.swapped();
                swapped = true;
                (l0, l1) = lifts(&rep);
            }
            let t0 = tr(&rep);
            let t1 = mat_commutator(rep.g1.matrix(), rep.h1.matrix()).trace();
            let ok = matches!((region(&l0), region(&l1)), (RegionLabel::ParPlus(0), RegionLabel::ParMinus(1)));
            if !ok || (t0 - 2.0).abs() > 1e-6 || (t1 + 2.0).abs() > 1e-6 {
                return Err(GlueError::RegionMismatch(format!(
                    "{} (trace {t0}) and {} (trace {t1})",
                    region(&l0),
                    region(&l1)
                )));
            }
        }
        GlueCase::Hyperbolic => {}
    }
    let l = rep.transport();
    let rho0 = (rep.g0, rep.h0);
    let rho1 = (conjugate(&l, &rep.g1), conjugate(&l, &rep.h1));
    Ok(Split {
        rho0,
        rho1,
        case,
        mirrored,
        swapped,
        thetas: (l0.theta(), l1.theta()),
        regions: (region(&l0), region(&l1)),
        rep,
    })
}
