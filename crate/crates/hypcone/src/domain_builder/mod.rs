//! Fundamental domains: pentagons for one-holed tori, right-angled octagons
//! for pairs of pants, and the search for good bases and basepoints.

mod good;
mod pants;
mod pentagon;

pub use good::{
    abelianization, apply_move, good_rep, good_search, swap_basis, nielsen_moves, BasisWord, GoodRep, GoodnessCertificate, NielsenMove, SearchParams,
};
pub use pants::{build_pants, pants_from_lengths, PantsDomain, PantsError, ReflectionPair, SidePairing};
pub use pentagon::{build_pentagon, OrientedLine, Pentagon, PENTAGON_ORIENTATION};

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum DomainError {
    #[error("trace {0} is not above 2")]
    TraceNotHyperbolic(f64),
    #[error("epsilon must be positive, got {0}")]
    NonPositiveEpsilon(f64),
    #[error("no valid pentagon after {0} halvings of epsilon")]
    EpsilonUnderflow(usize),
    #[error("no certificate within depth {depth} and {stations} stations")]
    NotFound { depth: usize, stations: usize },
}
