use serde::Serialize;

use crate::algebra::{ideal_piece, PresentedAlgebra};
use crate::linalg::{Echelon, Matrix};
use crate::poly::Poly;
use crate::scalar::Scalar;
use crate::verdict::TriState;

/// Dimensions of the two summands and of `A_e` in one degree.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeSplit {
    pub degree: u32,
    pub u: usize,
    pub ideal: usize,
    pub total: usize,
}

/// Degreewise evidence for `m_A = u ⊕ I`, where `u` is the span of the
/// multiplicative closure of `u_generators` and `I` the ideal they generate.
#[derive(Clone, Debug, Serialize)]
pub struct DecompositionCertificate {
    pub u_generators: Vec<String>,
    pub i_generators: Vec<String>,
    pub checked_degree: u32,
    pub verdict: TriState,
    pub dims: Vec<DegreeSplit>,
}

enum Prepared<F> {
    Ok(Vec<(u32, Poly<F>)>),
    Bad(TriState),
}

fn prepare<F: Scalar>(a: &PresentedAlgebra<F>, gens: &[Poly<F>]) -> Prepared<F> {
    let mut out = Vec::new();
    for g in gens {
        let nf = a.normal_form(g);
        if nf.is_zero() {
            continue;
        }
        if !nf.constant_term().is_zero() {
            return Prepared::Bad(TriState::Refuted(format!("{g} is not in the maximal ideal")));
        }
        match nf.homogeneous_degree() {
            Some(e) => out.push((e, nf)),
            None => return Prepared::Bad(TriState::Unknown(format!("{g} is not homogeneous"))),
        }
    }
    Prepared::Ok(out)
}

pub fn decomposition_verify<F: Scalar>(
    a: &PresentedAlgebra<F>,
    u_gens: &[Poly<F>],
    i_gens: &[Poly<F>],
    d: u32,
) -> DecompositionCertificate {
    let mut cert = DecompositionCertificate {
        u_generators: u_gens.iter().map(|g| g.to_string()).collect(),
        i_generators: i_gens.iter().map(|g| g.to_string()).collect(),
        checked_degree: d,
        verdict: TriState::Proved,
        dims: Vec::new(),
    };
    let (u, ideal) = match (prepare(a, u_gens), prepare(a, i_gens)) {
        (Prepared::Ok(u), Prepared::Ok(i)) => (u, i),
        (Prepared::Bad(v), _) | (_, Prepared::Bad(v)) => {
            cert.verdict = v;
            return cert;
        }
    };
    let ideal_polys: Vec<Poly<F>> = ideal.iter().map(|(_, p)| p.clone()).collect();
    // u_basis[e] holds a basis of the degree-e part of the closure.
    let mut u_basis: Vec<Vec<Poly<F>>> = vec![Vec::new()];
    for e in 1..=d {
        let total = a.dim(e);
        let mut span = Echelon::new(total);
        for (ge, g) in &u {
            if *ge == e {
                span.insert(&a.coords_of_normal(g, e));
            } else if *ge < e {
                for b in &u_basis[(e - ge) as usize] {
                    span.insert(&a.coords(&(g * b), e));
                }
            }
        }
        let u_vecs: Vec<Vec<F>> = span.basis().map(|v| v.to_vec()).collect();
        u_basis.push(u_vecs.iter().map(|v| a.from_coords(e, v)).collect());

        let mut i_span = Echelon::new(total);
        i_span.insert_all(&ideal_piece(a, &ideal_polys, e));
        let i_vecs: Vec<Vec<F>> = i_span.basis().map(|v| v.to_vec()).collect();

        let mut sum = Echelon::new(total);
        sum.insert_all(&u_vecs);
        sum.insert_all(&i_vecs);
        cert.dims.push(DegreeSplit { degree: e, u: u_vecs.len(), ideal: i_vecs.len(), total });

        if sum.dim() < u_vecs.len() + i_vecs.len() {
            let mut cols = u_vecs.clone();
            cols.extend(i_vecs.iter().cloned());
            let kernel = Matrix::from_columns(total, &cols).kernel();
            let k = &kernel[0];
            let mut w = vec![F::zero(); total];
            for (c, v) in k.iter().zip(&u_vecs) {
                for (wi, vi) in w.iter_mut().zip(v) {
                    *wi = wi.clone() + c.clone() * vi.clone();
                }
            }
            cert.verdict = TriState::Refuted(format!(
                "degree {e}: {} lies in both summands",
                a.from_coords(e, &w)
            ));
            return cert;
        }
        if sum.dim() < total {
            let missing = (0..total)
                .map(|k| {
                    let mut v = vec![F::zero(); total];
                    v[k] = F::one();
                    v
                })
                .find(|v| !sum.contains(v))
                .expect("a unit vector lies outside a proper subspace");
            cert.verdict = TriState::Refuted(format!(
                "degree {e}: {} is not in the sum (dimensions {} + {} < {total})",
                a.from_coords(e, &missing),
                u_vecs.len(),
                i_vecs.len()
            ));
            return cert;
        }
    }
    cert
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn plane_splits_along_axis() {
        let a = A::parse(&[("x", 1), ("y", 1)], &[], None).unwrap();
        let c = decomposition_verify(&a, &[a.var(0)], &[a.var(1)], 8);
        assert!(c.verdict.is_proved(), "{:?}", c.verdict);
        for s in &c.dims {
            assert_eq!((s.u, s.ideal, s.total), (1, s.degree as usize, 1 + s.degree as usize));
        }
    }

    #[test]
    fn node_splits() {
        let a = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        assert!(decomposition_verify(&a, &[a.var(0)], &[a.var(1)], 8).verdict.is_proved());
    }

    #[test]
    fn overlap_is_witnessed() {
        let a = A::parse(&[("x", 1)], &[], None).unwrap();
        let c = decomposition_verify(&a, &[a.var(0)], &[a.parse_element("x^2").unwrap()], 4);
        match c.verdict {
            TriState::Refuted(w) => assert!(w.contains("degree 2") && w.contains("x^2"), "{w}"),
            v => panic!("{v:?}"),
        }
    }

    #[test]
    fn deficiency_is_witnessed() {
        let a = A::parse(&[("x", 1), ("y", 1)], &[], None).unwrap();
        let c = decomposition_verify(&a, &[a.var(0)], &[], 2);
        assert!(c.verdict.is_refuted());
    }
}
