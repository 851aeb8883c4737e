use std::sync::Arc;

use super::{decomposition_verify, join_rings, ActionTable, ConstructionError, DecompositionCertificate, Rename};
use crate::algebra::{AlgebraError, AlgebraMorphism, PresentedAlgebra};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `R ⋉_k S` presented as `k[x, y] / (J_R + J_S + (x_i y_j − a_ij))`.
#[derive(Clone, Debug)]
pub struct SemiFiberPresentation<F> {
    pub algebra: Arc<PresentedAlgebra<F>>,
    pub r_embedding: AlgebraMorphism<F>,
    pub s_embedding: AlgebraMorphism<F>,
    pub table: ActionTable<F>,
    pub certificate: DecompositionCertificate,
    pub renames: Vec<Rename>,
}

/// An element `r ⊕ y` of `R ⊕ m_S`.
#[derive(Clone, Debug)]
pub struct SemiFiberElement<F> {
    pub r: Poly<F>,
    pub y: Poly<F>,
}

impl<F: Scalar> PartialEq for SemiFiberElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.r == other.r && self.y == other.y
    }
}

impl<F: Scalar> ActionTable<F> {
    /// Normalizes `r ⊕ y`; `y` must lie in `m_S`.
    pub fn element(&self, r: &Poly<F>, y: &Poly<F>) -> Result<SemiFiberElement<F>, AlgebraError> {
        let y = self.s().normal_form(y);
        if !y.constant_term().is_zero() {
            return Err(AlgebraError::NotInMaximalIdeal(y.to_string()));
        }
        Ok(SemiFiberElement { r: self.r().normal_form(r), y })
    }

    /// `(r ⊕ y)(r' ⊕ y') = rr' ⊕ (r ∗ y' + r' ∗ y + yy')`.
    pub fn multiply(&self, a: &SemiFiberElement<F>, b: &SemiFiberElement<F>) -> SemiFiberElement<F> {
        let r = self.r().normal_form(&(&a.r * &b.r));
        let y = &(&self.act(&a.r, &b.y) + &self.act(&b.r, &a.y)) + &self.s().normal_form(&(&a.y * &b.y));
        SemiFiberElement { r, y }
    }

    pub fn add(&self, a: &SemiFiberElement<F>, b: &SemiFiberElement<F>) -> SemiFiberElement<F> {
        SemiFiberElement { r: &a.r + &b.r, y: &a.y + &b.y }
    }

    pub fn unit(&self) -> SemiFiberElement<F> {
        SemiFiberElement { r: Poly::one(self.r().ring()), y: Poly::zero(self.s().ring()) }
    }
}

impl<F: Scalar> SemiFiberPresentation<F> {
    /// The image of `r ⊕ y` in the presentation.
    pub fn embed(&self, e: &SemiFiberElement<F>) -> Poly<F> {
        self.algebra.normal_form(&(&self.r_embedding.apply(&e.r) + &self.s_embedding.apply(&e.y)))
    }

    /// The retraction `A → R` killing `m_S`.
    pub fn retraction(&self) -> Result<AlgebraMorphism<F>, ConstructionError> {
        let r = self.table.r();
        let zeros = vec![Poly::zero(r.ring()); self.table.s().nvars()];
        universal_morphism(self, &AlgebraMorphism::identity(r), zeros)
    }
}

pub fn semi_fiber_product<F: Scalar>(t: &ActionTable<F>) -> Result<SemiFiberPresentation<F>, ConstructionError> {
    let d = t.validated().ok_or(ConstructionError::NotValidated)?;
    let (r, s) = (t.r(), t.s());
    let j = join_rings(r.ring(), s.names(), s.weights());
    let mut rels: Vec<Poly<F>> = r.ideal().generators().iter().map(|g| g.rename_into(&j.ring, &j.left)).collect();
    rels.extend(s.ideal().generators().iter().map(|g| g.rename_into(&j.ring, &j.right)));
    for (i, &xi) in j.left.iter().enumerate() {
        for (jj, &yj) in j.right.iter().enumerate() {
            let prod = &Poly::var(&j.ring, xi) * &Poly::var(&j.ring, yj);
            rels.push(&prod - &t.entry(i, jj).rename_into(&j.ring, &j.right));
        }
    }
    let a = PresentedAlgebra::new(&j.ring, rels, None)?;
    for e in 0..=d {
        let expected = r.dim(e) + s.dim(e) - usize::from(e == 0);
        let found = a.dim(e);
        if found != expected {
            return Err(ConstructionError::DimensionMismatch { degree: e, expected, found });
        }
    }
    let r_embedding = AlgebraMorphism::new(r, &a, j.left.iter().map(|&i| a.var(i)).collect())?.verify()?;
    let s_embedding = AlgebraMorphism::new(s, &a, j.right.iter().map(|&i| a.var(i)).collect())?.verify()?;
    let certificate = decomposition_verify(&a, r_embedding.images(), s_embedding.images(), d);
    Ok(SemiFiberPresentation { algebra: a, r_embedding, s_embedding, table: t.clone(), certificate, renames: j.renames })
}

/// The morphism `φ(r ⊕ y) = f(r) + g(y)` determined by `f: R → T` and the
/// images `g(y_j) ∈ m_T` of the `S`-variables.
pub fn universal_morphism<F: Scalar>(
    p: &SemiFiberPresentation<F>,
    f: &AlgebraMorphism<F>,
    g: Vec<Poly<F>>,
) -> Result<AlgebraMorphism<F>, ConstructionError> {
    let (r, s) = (p.table.r(), p.table.s());
    let t = f.target();
    if !f.source().same_as(r) || !f.is_verified() {
        return Err(ConstructionError::Violation { law: "source", detail: "f must be a verified morphism out of R".into() });
    }
    if g.len() != s.nvars() {
        return Err(ConstructionError::Violation {
            law: "shape",
            detail: format!("expected {} images, got {}", s.nvars(), g.len()),
        });
    }
    let g: Vec<Poly<F>> = g.iter().map(|q| t.normal_form(q)).collect();
    for (q, name) in g.iter().zip(s.names()) {
        if !q.constant_term().is_zero() {
            return Err(ConstructionError::Violation {
                law: "multiplicativity",
                detail: format!("g({name}) = {q} is not in the maximal ideal"),
            });
        }
    }
    for rel in s.ideal().groebner() {
        let v = t.normal_form(&rel.substitute(t.ring(), &g));
        if !v.is_zero() {
            return Err(ConstructionError::Violation {
                law: "multiplicativity",
                detail: format!("relation {rel} of S maps to {v}"),
            });
        }
    }
    for i in 0..r.nvars() {
        for (jj, gj) in g.iter().enumerate() {
            let lhs = t.normal_form(&p.table.entry(i, jj).substitute(t.ring(), &g));
            let rhs = t.normal_form(&(&f.images()[i] * gj));
            if lhs != rhs {
                return Err(ConstructionError::Violation {
                    law: "R-linearity",
                    detail: format!(
                        "g({} * {}) = {lhs} but f({}) g({}) = {rhs}",
                        r.names()[i],
                        s.names()[jj],
                        r.names()[i],
                        s.names()[jj]
                    ),
                });
            }
        }
    }
    let mut images = f.images().to_vec();
    images.extend(g);
    Ok(AlgebraMorphism::new(&p.algebra, t, images)?.verify()?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructions::fiber_product;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn zero_action_gives_fiber_product() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let s = A::parse(&[("y", 1)], &["y^3"], None).unwrap();
        let t = ActionTable::zero(&r, &s).validate(5).unwrap();
        let p = semi_fiber_product(&t).unwrap();
        let expected = A::parse(&[("x", 1), ("y", 1)], &["x^2", "y^3", "x*y"], None).unwrap();
        assert!(p.algebra.same_as(&expected));
        assert!(p.algebra.same_as(&fiber_product(&r, &s).unwrap().algebra));
        assert!(p.certificate.verdict.is_proved());
    }

    #[test]
    fn trivial_s_gives_r() {
        let r = A::parse(&[("x", 1), ("y", 2)], &["x^4 - y^2"], None).unwrap();
        let p = semi_fiber_product(&ActionTable::zero(&r, &A::field()).validate(6).unwrap()).unwrap();
        assert!(p.algebra.same_as(&r));
    }

    /// `k[x, y] ≅ k[x] ⋉_k S` with `S` generated by `u_n = x^n y`.
    #[test]
    fn plane_as_semi_fiber_product() {
        let d = 6u32;
        let vars: Vec<(String, u32)> = (0..d).map(|n| (format!("u{n}"), n + 1)).collect();
        let mut rels = Vec::new();
        for a in 0..d {
            for b in a..d {
                for c in 0..d {
                    let e = a + b;
                    if c > a && c <= e / 2 && e - c < d {
                        rels.push(format!("u{a}*u{b} - u{c}*u{}", e - c));
                    }
                }
            }
        }
        let var_refs: Vec<(&str, u32)> = vars.iter().map(|(n, w)| (n.as_str(), *w)).collect();
        let rel_refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        let s = A::parse(&var_refs, &rel_refs, Some(d)).unwrap();
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let named: Vec<(String, String, Poly<Gf32003>)> = (0..d - 1)
            .map(|n| ("x".to_string(), format!("u{n}"), s.var(n as usize + 1)))
            .collect();
        let t = ActionTable::from_named(&r, &s, &named).unwrap().validate(d).unwrap();
        let p = semi_fiber_product(&t).unwrap();
        let plane = A::parse(&[("x", 1), ("y", 1)], &[], None).unwrap();
        assert_eq!(p.algebra.hilbert(d), plane.hilbert(d));
        assert!(p.certificate.verdict.is_proved());
    }

    #[test]
    fn multiplication_formula_matches_presentation() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let s = A::parse(&[("y", 1)], &["y^3"], None).unwrap();
        let f = AlgebraMorphism::parse(&r, &s, &["y"]).unwrap().verify().unwrap();
        let t = ActionTable::induced(&f).unwrap().validate(6).unwrap();
        let p = semi_fiber_product(&t).unwrap();
        let a = t.element(&r.parse_element("1 + x").unwrap(), &s.parse_element("y").unwrap()).unwrap();
        let b = t.element(&r.parse_element("x^2").unwrap(), &s.parse_element("2*y^2").unwrap()).unwrap();
        let lhs = p.embed(&t.multiply(&a, &b));
        let rhs = p.algebra.normal_form(&(&p.embed(&a) * &p.embed(&b)));
        assert_eq!(lhs, rhs);
    }

    #[test]
    fn retraction_and_universal_property() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let s = A::parse(&[("y", 1)], &[], None).unwrap();
        let t = ActionTable::zero(&r, &s).validate(4).unwrap();
        let p = semi_fiber_product(&t).unwrap();
        let pi = p.retraction().unwrap();
        assert_eq!(pi.images(), &[r.var(0), Poly::zero(r.ring())]);
        assert!(p.r_embedding.then(&pi).unwrap().is_identity());
        let id = universal_morphism(&p, &p.r_embedding, vec![p.algebra.var(1)]).unwrap();
        assert!(id.is_identity());
        let bad = universal_morphism(&p, &p.r_embedding, vec![p.algebra.var(0)]);
        assert!(matches!(bad, Err(ConstructionError::Violation { law: "R-linearity", .. })));
    }

    #[test]
    fn unvalidated_table_rejected() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        assert!(matches!(semi_fiber_product(&ActionTable::zero(&r, &r)), Err(ConstructionError::NotValidated)));
    }
}
