//! Fixed loci, Gröbner-certified emptiness over F_p, freeness certificates,
//! the singular-point census with node tests, and divisor pencils.

mod census;
mod eigen;
mod emptiness;
mod freeness;
pub mod groebner;
mod pencil;
pub mod poly;

pub use census::{
    census_orbits, odp_test, singular_census, CensusMode, OdpReport, SingularCensus, SingularPoint,
};
pub use eigen::{eigenspace, eigenspaces, element_order, spectrum};
pub use emptiness::{projective_empty, projective_points, ChartCertificate, Emptiness, EmptinessCertificate};
pub use freeness::{
    embed_forms, freeness_check, SEMICONTINUITY_NOTE, freeness_over_samples, projective_class_representatives, random_parameters,
    restrict_forms, ClassCertificate, EigenCertificate, FreenessCertificate, FreenessSummary, FreenessVerdict,
};
pub use groebner::{groebner, GroebnerBasis};
pub use pencil::{divisor_incidence, pencil_family_invariance, pencil_invariance, DivisorPencil, Incidence};
pub use poly::{Mono, Poly, PolyRing};

use crate::exact::ExactError;
use crate::groups::GroupError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GeometryError {
    #[error("{0} is not a root of unity of the matrix order {1}")]
    NotRootOfUnity(String, usize),
    #[error("matrix has no finite order up to {0}")]
    InfiniteOrder(usize),
    #[error("Jacobian has rank {0} at the point, expected 3")]
    JacobianRank(usize),
    #[error("diagonal mode needs forms with square monomials only")]
    NotDiagonal,
    #[error("positive-dimensional singular locus (zero pattern {0:?})")]
    PositiveDimensional(Vec<usize>),
    #[error("quotient ring too large in chart {0}")]
    QuotientTooLarge(usize),
    #[error("expected {expected} forms, got {found}")]
    FormCount { expected: usize, found: usize },
    #[error("point set not closed under generator {0}")]
    NotClosed(usize),
    #[error("prime {prime} is not ≡ 1 mod {order}")]
    BadPrime { prime: u64, order: u32 },
    #[error(transparent)]
    Exact(#[from] ExactError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

#[cfg(test)]
mod tests;
