//! Free complexes over presented algebras, homology in graded slices,
//! minimal free resolutions and Betti tables.

mod complex;
mod resolution;

pub use complex::{ComplexError, FreeComplex, PolyMatrix};
pub use resolution::{
    betti_by_tensoring, minimal_free_resolution, poincare_poly, total_degree_bound, BettiJson, BettiTable,
    PoincarePoly, Resolution, ResolutionError,
};
