//! Exact multivariate polynomials over a [`Scalar`](crate::Scalar) field:
//! weighted gradings, Gröbner bases, normal forms and ideal operations.

mod groebner;
mod ideal;
mod monomial;
mod parse;
#[allow(clippy::module_inception)]
mod poly;
mod ring;

pub use groebner::{check_unit_certificate, divide, groebner_basis, is_unit_basis, reduce, unit_certificate};
pub use ideal::{elimination_kernel, exact_quotient, Ideal};
pub use monomial::{Monomial, MonomialDisplay};
pub use parse::{parse_poly, ParseError};
pub use poly::Poly;
pub use ring::{MonomialOrder, PolyRing};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PolyError {
    #[error("polynomials live in different ambient rings")]
    RingMismatch,
    #[error("{vars} variables but {weights} weights")]
    WeightCount { vars: usize, weights: usize },
    #[error("variable '{0}' must have a positive weight")]
    NonPositiveWeight(String),
    #[error("variable '{0}' declared twice")]
    DuplicateVariable(String),
    #[error("operation needs a nonzero polynomial")]
    ZeroPolynomial,
    #[error("exact division failed")]
    InexactDivision,
}
