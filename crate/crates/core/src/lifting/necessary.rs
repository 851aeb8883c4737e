use std::sync::Arc;

use serde::Serialize;

use super::LiftingError;
use crate::algebra::{is_independent_mod_m_squared, minimal_generators, ModulePresentation, PresentedAlgebra};
use crate::homology::{minimal_free_resolution, total_degree_bound, PoincarePoly};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::verdict::TriState;

/// If `k` lifts along `R ↠ R/I`, then `I` is generated by part of a minimal
/// generating set of `m_R`. Refutes liftability when the minimal generators
/// of `I` are dependent in `m/m²`; otherwise inconclusive.
pub fn thm_minimal_generator_test<F: Scalar>(r: &PresentedAlgebra<F>, ideal: &[Poly<F>]) -> Result<TriState, LiftingError> {
    let mg = minimal_generators(r, ideal)?;
    let shown: Vec<String> = mg.generators.iter().map(|g| g.to_string()).collect();
    if is_independent_mod_m_squared(r, &mg.generators)? {
        Ok(TriState::Unknown(format!(
            "inconclusive: ({}) is part of a minimal generating set of m, which is only necessary",
            shown.join(", ")
        )))
    } else {
        Ok(TriState::Refuted(format!(
            "the minimal generators ({}) of I are dependent modulo m^2, so k is not liftable",
            shown.join(", ")
        )))
    }
}

/// `ν(m_R) = ν(m_R̄) + ν(I)`, the `t`-coefficient of the factorization for
/// `M = k`.
#[derive(Clone, Debug, Serialize)]
pub struct NuIdentity {
    pub nu_m_r: usize,
    pub nu_m_r_bar: usize,
    pub nu_i: usize,
    pub holds: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct PoincareFactorization {
    pub n: usize,
    pub degree: u32,
    /// `P^R_M`.
    pub over_r: Vec<usize>,
    /// `P^R̄_M`.
    pub over_r_bar: Vec<usize>,
    /// `P^R_R̄`.
    pub quotient_over_r: Vec<usize>,
    pub product: Vec<usize>,
    pub nu: NuIdentity,
    pub verdict: TriState,
}

/// Compares `P^R_M` with `P^R̄_M · P^R_R̄` through `t^n`. The module `M` is
/// given over `R̄` (default `k`). A mismatch refutes liftability of `M`; a
/// match is inconclusive. With `d = None` the internal degree is chosen
/// large enough to certify all three series.
pub fn poincare_factorization_test<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    ideal: &[Poly<F>],
    module: Option<&ModulePresentation<F>>,
    n: usize,
    d: Option<u32>,
) -> Result<PoincareFactorization, LiftingError> {
    let r_bar = r.quotient(ideal)?;
    let m_bar = match module {
        Some(m) => ModulePresentation::new(&r_bar, m.shifts().to_vec(), m.relations().to_vec())?,
        None => ModulePresentation::residue_field(&r_bar),
    };
    let mut cols = m_bar.relations().to_vec();
    let g = m_bar.num_generators();
    for k in 0..g {
        for f in ideal {
            let mut col = vec![Poly::zero(r.ring()); g];
            col[k] = f.clone();
            cols.push(col);
        }
    }
    let m_r = ModulePresentation::new(r, m_bar.shifts().to_vec(), cols)?;
    let quotient = ModulePresentation::cyclic(r, ideal)?;
    let degree = d.unwrap_or_else(|| {
        [total_degree_bound(&m_r), total_degree_bound(&m_bar), total_degree_bound(&quotient)]
            .into_iter()
            .map(|(s, dd)| s + n as u32 * dd)
            .max()
            .unwrap_or(0)
    });
    let series = |m: &ModulePresentation<F>| -> Result<PoincarePoly, LiftingError> {
        Ok(minimal_free_resolution(m, n, degree)?.betti.poincare(n)?)
    };
    let over_r = series(&m_r)?;
    let over_r_bar = series(&m_bar)?;
    let quotient_over_r = series(&quotient)?;
    let product = over_r_bar.convolve(&quotient_over_r);

    let nu_m_r = minimal_generators(r, &r.vars())?.nu();
    let nu_m_r_bar = minimal_generators(&r_bar, &r_bar.vars())?.nu();
    let nu_i = minimal_generators(r, ideal)?.nu();
    let nu = NuIdentity { nu_m_r, nu_m_r_bar, nu_i, holds: nu_m_r == nu_m_r_bar + nu_i };

    let verdict = match (0..=n).find(|&i| over_r.coefficients[i] != product.coefficients[i]) {
        Some(i) => TriState::Refuted(format!(
            "coefficient of t^{i}: P^R_M has {} but the product has {}",
            over_r.coefficients[i], product.coefficients[i]
        )),
        None => TriState::Unknown(format!("inconclusive: the factorization holds through t^{n}")),
    };
    Ok(PoincareFactorization {
        n,
        degree,
        over_r: over_r.coefficients,
        over_r_bar: over_r_bar.coefficients,
        quotient_over_r: quotient_over_r.coefficients,
        product: product.coefficients,
        nu,
        verdict,
    })
}

/// `β₂^R̄(k) = 0` means `Ext²_R̄(k, k) = 0`, which makes `k` liftable along
/// any surjection onto `R̄` whose kernel is generated by a regular sequence.
pub fn ext2_sufficiency<F: Scalar>(r_bar: &Arc<PresentedAlgebra<F>>, d: Option<u32>) -> Result<TriState, LiftingError> {
    let k = ModulePresentation::residue_field(r_bar);
    let degree = d.unwrap_or_else(|| {
        let (s, dd) = total_degree_bound(&k);
        s + 2 * dd
    });
    let series = minimal_free_resolution(&k, 2, degree)?.betti.poincare(2)?;
    let b2 = series.coefficients[2];
    if b2 == 0 {
        Ok(TriState::Proved)
    } else {
        Ok(TriState::Unknown(format!("inconclusive: beta_2 = {b2}, so Ext^2(k, k) does not vanish")))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn minimal_generator_test() {
        let line = A::parse(&[("x", 1)], &[], None).unwrap();
        assert!(thm_minimal_generator_test(&line, &[line.parse_element("x^2").unwrap()]).unwrap().is_refuted());
        let node = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        assert!(thm_minimal_generator_test(&node, &[node.parse_element("x - y").unwrap()]).unwrap().is_unknown());
        let cusp = A::parse(&[("x", 3), ("y", 2)], &["x^2 - y^3"], None).unwrap();
        assert!(thm_minimal_generator_test(&cusp, &[cusp.var(1)]).unwrap().is_unknown());
    }

    #[test]
    fn factorization_for_node_and_cusp() {
        let node = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let rep = poincare_factorization_test(&node, &[node.parse_element("x - y").unwrap()], None, 4, None).unwrap();
        assert_eq!(rep.over_r, vec![1, 2, 2, 2, 2]);
        assert_eq!(rep.over_r_bar, vec![1, 1, 1, 1, 1]);
        assert_eq!(rep.quotient_over_r, vec![1, 1, 0, 0, 0]);
        assert!(rep.verdict.is_unknown() && rep.nu.holds);

        let cusp = A::parse(&[("x", 3), ("y", 2)], &["x^2 - y^3"], None).unwrap();
        let rep = poincare_factorization_test(&cusp, &[cusp.var(1)], None, 4, None).unwrap();
        assert_eq!(rep.over_r, vec![1, 2, 2, 2, 2]);
        assert!(rep.verdict.is_unknown());
    }

    #[test]
    fn factorization_fails_for_square() {
        let line = A::parse(&[("x", 1)], &[], None).unwrap();
        let rep = poincare_factorization_test(&line, &[line.parse_element("x^2").unwrap()], None, 2, None).unwrap();
        assert_eq!(rep.over_r, vec![1, 1, 0]);
        assert_eq!(rep.product, vec![1, 2, 2]);
        assert!(rep.verdict.is_refuted());
        assert!(!rep.nu.holds);
    }

    #[test]
    fn ext2() {
        let line = A::parse(&[("x", 1)], &[], None).unwrap();
        assert!(ext2_sufficiency(&line, None).unwrap().is_proved());
        let dual = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        assert!(ext2_sufficiency(&dual, None).unwrap().is_unknown());
        assert!(ext2_sufficiency(&A::field(), None).unwrap().is_proved());
    }
}
