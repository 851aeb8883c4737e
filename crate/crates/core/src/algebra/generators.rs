use std::collections::BTreeMap;

use super::module::submodule_span;
use super::{AlgebraError, PresentedAlgebra};
use crate::linalg::Echelon;
use crate::poly::Poly;
use crate::scalar::Scalar;

/// A minimal homogeneous generating set of an ideal, selected from the given
/// generators.
#[derive(Clone, Debug)]
pub struct MinimalGenerators<F> {
    pub generators: Vec<Poly<F>>,
    /// `(degree, count)` of minimal generators per degree.
    pub by_degree: Vec<(u32, usize)>,
}

impl<F: Scalar> MinimalGenerators<F> {
    /// The minimal number of generators `ν`.
    pub fn nu(&self) -> usize {
        self.generators.len()
    }
}

/// Spanning vectors of `I_e` inside `A_e` for homogeneous generators.
pub fn ideal_piece<F: Scalar>(a: &PresentedAlgebra<F>, gens: &[Poly<F>], e: u32) -> Vec<Vec<F>> {
    let cols: Vec<Vec<Poly<F>>> = gens.iter().map(|g| vec![g.clone()]).collect();
    let degs: Vec<u32> = gens.iter().map(|g| g.homogeneous_degree().unwrap_or(0)).collect();
    submodule_span(a, &[0], &cols, &degs, e)
}

fn homogeneous_in_m<F: Scalar>(a: &PresentedAlgebra<F>, gens: &[Poly<F>]) -> Result<Vec<(u32, Poly<F>)>, AlgebraError> {
    let mut out = Vec::new();
    for g in gens {
        let nf = a.normal_form(g);
        if nf.is_zero() {
            continue;
        }
        if !nf.constant_term().is_zero() {
            return Err(AlgebraError::NotInMaximalIdeal(g.to_string()));
        }
        let d = nf.homogeneous_degree().ok_or_else(|| AlgebraError::NonHomogeneous(g.to_string()))?;
        out.push((d, nf));
    }
    out.sort_by_key(|(d, _)| *d);
    Ok(out)
}

/// Selects generators whose images form a basis of `I / mI` (graded
/// Nakayama). Ties are broken by input order.
pub fn minimal_generators<F: Scalar>(a: &PresentedAlgebra<F>, gens: &[Poly<F>]) -> Result<MinimalGenerators<F>, AlgebraError> {
    let sorted = homogeneous_in_m(a, gens)?;
    let mut kept: Vec<Poly<F>> = Vec::new();
    let mut by_degree: BTreeMap<u32, usize> = BTreeMap::new();
    let mut i = 0;
    while i < sorted.len() {
        let e = sorted[i].0;
        let lower: Vec<Poly<F>> = kept.clone();
        let mut span = Echelon::new(a.dim(e));
        for v in ideal_piece(a, &lower, e) {
            span.insert(&v);
        }
        while i < sorted.len() && sorted[i].0 == e {
            let g = &sorted[i].1;
            if span.insert(&a.coords_of_normal(g, e)) {
                kept.push(g.clone());
                *by_degree.entry(e).or_default() += 1;
            }
            i += 1;
        }
    }
    Ok(MinimalGenerators { generators: kept, by_degree: by_degree.into_iter().collect() })
}

/// Whether the homogeneous elements are linearly independent in `m / m²`.
pub fn is_independent_mod_m_squared<F: Scalar>(a: &PresentedAlgebra<F>, elems: &[Poly<F>]) -> Result<bool, AlgebraError> {
    let sorted = homogeneous_in_m(a, elems)?;
    if sorted.len() < elems.len() {
        // an element that is zero in A is dependent
        return Ok(false);
    }
    let mut i = 0;
    while i < sorted.len() {
        let e = sorted[i].0;
        let mut span = Echelon::new(a.dim(e));
        for v in m_squared_piece(a, e) {
            span.insert(&v);
        }
        while i < sorted.len() && sorted[i].0 == e {
            if !span.insert(&a.coords_of_normal(&sorted[i].1, e)) {
                return Ok(false);
            }
            i += 1;
        }
    }
    Ok(true)
}

/// Spanning vectors of `(m²)_e`.
pub(crate) fn m_squared_piece<F: Scalar>(a: &PresentedAlgebra<F>, e: u32) -> Vec<Vec<F>> {
    let mut out = Vec::new();
    for (i, &w) in a.weights().iter().enumerate() {
        if e <= w {
            continue;
        }
        for m in &a.basis(e - w).monomials {
            let p = Poly::monomial(a.ring(), m.clone(), F::one()).mul_term(&crate::poly::Monomial::var(a.nvars(), i), &F::one());
            out.push(a.coords(&p, e));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    fn polys(a: &A, s: &[&str]) -> Vec<Poly<Gf32003>> {
        s.iter().map(|x| a.parse_element(x).unwrap()).collect()
    }

    #[test]
    fn maximal_ideal_of_node() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        assert_eq!(minimal_generators(&r, &r.vars()).unwrap().nu(), 2);
        assert_eq!(minimal_generators(&r, &polys(&r, &["x - y"])).unwrap().nu(), 1);
    }

    #[test]
    fn redundant_power_dropped() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let mg = minimal_generators(&r, &polys(&r, &["x^3", "x^2"])).unwrap();
        assert_eq!(mg.generators, polys(&r, &["x^2"]));
    }

    #[test]
    fn outside_maximal_ideal_rejected() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        assert!(minimal_generators(&r, &polys(&r, &["1 + x"])).is_err());
    }

    #[test]
    fn independence_in_cotangent_space() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        assert!(!is_independent_mod_m_squared(&r, &polys(&r, &["x^2"])).unwrap());
        let c = A::parse(&[("x", 3), ("y", 2)], &["x^2 - y^3"], None).unwrap();
        assert!(is_independent_mod_m_squared(&c, &polys(&c, &["y"])).unwrap());
        let n = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        assert!(is_independent_mod_m_squared(&n, &polys(&n, &["x - y"])).unwrap());
        assert!(!is_independent_mod_m_squared(&n, &polys(&n, &["x", "x"])).unwrap());
    }
}
