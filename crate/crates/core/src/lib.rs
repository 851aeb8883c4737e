//! Semi-fiber products of graded algebras, minimal free resolutions, and
//! decision procedures for lifting the residue field along a surjection.
//!
//! The crate is generic over an exact coefficient field ([`Scalar`]). The
//! aliases at the crate root fix the default field `GF(32003)`.

pub mod algebra;
pub mod constructions;
pub mod homology;
pub mod lifting;
pub mod linalg;
pub mod poly;
pub mod scalar;
pub mod verdict;

pub use algebra::{AlgebraElement, AlgebraError, AlgebraMorphism, ModulePresentation, MorphismError, PresentedAlgebra};
pub use constructions::{ActionTable, ConstructionError, SemiFiberPresentation};
pub use homology::{BettiTable, FreeComplex, PoincarePoly, PolyMatrix, Resolution};
pub use lifting::{LiftingError, LiftingProblem, LiftingVerdict, SearchConfig};
pub use poly::{Ideal, Monomial, MonomialOrder, Poly, PolyError, PolyRing};
pub use scalar::{Fp, Gf32003, Scalar, Q};
pub use verdict::{SearchResult, TriState};

/// Polynomials over the default field.
pub type DefaultPoly = Poly<Gf32003>;
pub type DefaultAlgebra = PresentedAlgebra<Gf32003>;
pub type DefaultMorphism = AlgebraMorphism<Gf32003>;
pub type DefaultModule = ModulePresentation<Gf32003>;
pub type DefaultComplex = FreeComplex<Gf32003>;
pub type DefaultActionTable = ActionTable<Gf32003>;

/// Algebras over the rationals.
pub type RationalAlgebra = PresentedAlgebra<Q>;
pub type RationalPoly = Poly<Q>;
