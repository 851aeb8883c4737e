//! Decision procedures for lifting the residue field along `π: R ↠ R/I`:
//! lifting verification, the necessary and sufficient tests, the socle case,
//! retraction and section search, and the consistency harness tying them
//! together for a flat map `T → R`.
//!
//! Verdicts are tri-state: a statement is `Proved` or `Refuted` only when a
//! finite computation certifies it, and `Unknown("inconclusive: ...")` for
//! tests that are only necessary or only sufficient.

mod harness;
mod necessary;
mod problem;
mod regular;
mod search;
mod socle;

pub use harness::{main_theorem_harness, HarnessReport};
pub use necessary::{ext2_sufficiency, poincare_factorization_test, thm_minimal_generator_test, NuIdentity, PoincareFactorization};
pub use problem::{check_lifting, periodic_candidate, LiftingProblem, LiftingReport, LiftingVerdict};
pub use regular::{cor44_hypothesis_check, mt_generates_check, regular_sequence_check, Cor44Report};
pub use search::{
    retraction_search, retraction_system, section_search, section_system, Coefficient, ConstraintSystem, Infeasibility,
    InfeasibilityCertificate, MorphismSearch, SearchConfig, SearchError,
};
pub use socle::{socle_case_decide, SocleDecision};

use crate::algebra::{AlgebraError, FlatnessError, MorphismError};
use crate::homology::{ComplexError, ResolutionError};
use crate::poly::PolyError;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LiftingError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Flatness(#[from] FlatnessError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("{0} is not in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("no candidate complex was supplied")]
    NoCandidate,
    #[error("candidate complex is not over R")]
    CandidateMismatch,
    #[error("socle case does not apply: {0}")]
    SocleInapplicable(String),
    #[error("flatness is not certified: {0}")]
    NotFlat(String),
}
