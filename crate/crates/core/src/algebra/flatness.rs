use serde::Serialize;

use super::{AlgebraMorphism, ModulePresentation};
use crate::homology::{minimal_free_resolution, ComplexError, ResolutionError};
use crate::scalar::Scalar;
use crate::verdict::TriState;

/// Evidence that `Tor_i^T(R, k)` vanishes for `1 ≤ i ≤ range` in internal
/// degrees up to `degree`.
#[derive(Clone, Debug, Serialize)]
pub struct FlatnessCertificate {
    pub range: usize,
    pub degree: u32,
    pub verdict: TriState,
    /// `tor_dims[i - 1][j] = dim Tor_i^T(R, k)_j`.
    pub tor_dims: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FlatnessError {
    #[error("morphism must be verified and graded")]
    Unverified,
    #[error(transparent)]
    Resolution(#[from] ResolutionError),
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Resolves `k` over the source `T`, base-changes along `f: T → R` and reads
/// off the homology.
pub fn flatness_certificate<F: Scalar>(
    f: &AlgebraMorphism<F>,
    range: usize,
    degree: u32,
) -> Result<FlatnessCertificate, FlatnessError> {
    if !f.is_verified() || !f.is_graded() {
        return Err(FlatnessError::Unverified);
    }
    let t = f.source();
    let res = minimal_free_resolution(&ModulePresentation::residue_field(t), range, degree)?;
    let over_r = res.complex.base_change(f)?;
    let mut tor_dims = Vec::new();
    let mut witness = None;
    for i in 1..=range {
        let dims = over_r.homology_dims(i, degree);
        if witness.is_none() {
            if let Some(j) = dims.iter().position(|&h| h > 0) {
                witness = Some(format!("Tor_{i} has dimension {} in internal degree {j}", dims[j]));
            }
        }
        tor_dims.push(dims);
    }
    let verdict = match witness {
        Some(w) => TriState::Refuted(w),
        None if (degree as usize) < range => {
            TriState::Unknown(format!("internal degree bound {degree} is below the homological range {range}"))
        }
        None => TriState::Proved,
    };
    Ok(FlatnessCertificate { range, degree, verdict, tor_dims })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::PresentedAlgebra;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    fn incl(t: &std::sync::Arc<A>, r: &std::sync::Arc<A>) -> AlgebraMorphism<Gf32003> {
        AlgebraMorphism::by_names(t, r).unwrap().verify().unwrap()
    }

    #[test]
    fn free_extension_is_flat() {
        let t = A::parse(&[("x", 1)], &[], None).unwrap();
        let r = A::parse(&[("x", 1), ("y", 1)], &["y^2"], None).unwrap();
        assert!(flatness_certificate(&incl(&t, &r), 3, 6).unwrap().verdict.is_proved());
    }

    #[test]
    fn node_is_not_flat_over_line() {
        let t = A::parse(&[("x", 1)], &[], None).unwrap();
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let c = flatness_certificate(&incl(&t, &r), 1, 4).unwrap();
        assert!(c.verdict.is_refuted());
        assert_eq!(c.tor_dims[0][2], 1);
    }

    #[test]
    fn truncated_line_into_product() {
        let t = A::parse(&[("x", 1)], &["x^3"], None).unwrap();
        let r = A::parse(&[("x", 1), ("y", 1)], &["x^3", "y^2"], None).unwrap();
        assert!(flatness_certificate(&incl(&t, &r), 4, 8).unwrap().verdict.is_proved());
    }
}
