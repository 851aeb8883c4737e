use std::sync::{Arc, OnceLock};

use super::groebner::{groebner_basis, is_unit_basis, reduce};
use super::{Monomial, MonomialOrder, Poly, PolyError, PolyRing};
use crate::scalar::Scalar;

/// An ideal of a polynomial ring with a lazily cached reduced Gröbner basis.
#[derive(Clone, Debug)]
pub struct Ideal<F> {
    ring: Arc<PolyRing>,
    generators: Vec<Poly<F>>,
    groebner: OnceLock<Vec<Poly<F>>>,
}

impl<F: Scalar> PartialEq for Ideal<F> {
    /// Equality of ideals (not of generating sets).
    fn eq(&self, other: &Self) -> bool {
        super::poly::same_ring(&self.ring, &other.ring) && self.groebner() == other.groebner()
    }
}

impl<F: Scalar> Ideal<F> {
    /// Zero generators are dropped.
    pub fn new(ring: &Arc<PolyRing>, generators: Vec<Poly<F>>) -> Result<Self, PolyError> {
        if generators.iter().any(|g| !super::poly::same_ring(g.ring(), ring)) {
            return Err(PolyError::RingMismatch);
        }
        Ok(Ideal {
            ring: ring.clone(),
            generators: generators.into_iter().filter(|g| !g.is_zero()).collect(),
            groebner: OnceLock::new(),
        })
    }

    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Ideal { ring: ring.clone(), generators: Vec::new(), groebner: OnceLock::new() }
    }

    /// The ideal generated by all variables.
    pub fn maximal(ring: &Arc<PolyRing>) -> Self {
        let gens = (0..ring.nvars()).map(|i| Poly::var(ring, i)).collect();
        Ideal { ring: ring.clone(), generators: gens, groebner: OnceLock::new() }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    pub fn generators(&self) -> &[Poly<F>] {
        &self.generators
    }

    /// Reduced Gröbner basis; computed on first use.
    pub fn groebner(&self) -> &[Poly<F>] {
        self.groebner.get_or_init(|| groebner_basis(&self.ring, &self.generators))
    }

    /// An ideal with the same generators and a freshly computed basis.
    pub fn buchberger(&self) -> Self {
        let out = Ideal::new(&self.ring, self.generators.clone()).expect("same ring");
        out.groebner();
        out
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        reduce(p, self.groebner())
    }

    pub fn contains(&self, p: &Poly<F>) -> bool {
        self.normal_form(p).is_zero()
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> bool {
        other.generators.iter().all(|g| self.contains(g))
    }

    pub fn is_zero(&self) -> bool {
        self.groebner().is_empty()
    }

    pub fn is_unit(&self) -> bool {
        is_unit_basis(self.groebner())
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.groebner().iter().map(|g| g.leading_monomial().unwrap().clone()).collect()
    }

    pub fn is_homogeneous(&self) -> bool {
        self.groebner().iter().all(|g| g.is_homogeneous())
    }

    pub fn sum(&self, other: &Ideal<F>) -> Ideal<F> {
        let mut gens = self.generators.clone();
        gens.extend(other.generators.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    pub fn with_generators(&self, extra: &[Poly<F>]) -> Ideal<F> {
        let mut gens = self.generators.clone();
        gens.extend(extra.iter().cloned());
        Ideal::new(&self.ring, gens).expect("same ring")
    }

    /// Standard monomials of weighted degree `d`: a basis of the degree-`d`
    /// piece of `k[x]/I` when `I` is homogeneous.
    pub fn graded_piece_basis(&self, d: u32) -> Vec<Monomial> {
        let lms = self.leading_monomials();
        self.ring
            .monomials_of_degree(d)
            .into_iter()
            .filter(|m| !lms.iter().any(|l| l.divides(m)))
            .collect()
    }

    /// `(I : f) = { g : g f in I }`.
    pub fn colon(&self, f: &Poly<F>) -> Result<Ideal<F>, PolyError> {
        if f.is_zero() {
            return Err(PolyError::ZeroPolynomial);
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let meet = self.intersect(&Ideal::new(&self.ring, vec![f.clone()])?)?;
        let mut quots = Vec::new();
        for g in meet.groebner() {
            quots.push(exact_quotient(g, f).ok_or(PolyError::InexactDivision)?);
        }
        Ideal::new(&self.ring, quots)
    }

    /// `I ∩ J` by eliminating a tag variable from `t I + (1 - t) J`.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Ideal<F>, PolyError> {
        let n = self.ring.nvars();
        let mut names = vec![fresh_name(&self.ring, "_t")];
        names.extend(self.ring.names().iter().cloned());
        let mut weights = vec![1];
        weights.extend(self.ring.weights());
        let big = PolyRing::with_order(names, weights, MonomialOrder::Eliminate { block: 1 })?;
        let shift: Vec<usize> = (1..=n).collect();
        let t = Poly::var(&big, 0);
        let one_minus_t = &Poly::one(&big) - &t;
        let mut gens = Vec::new();
        for g in &self.generators {
            gens.push(&t * &g.rename_into(&big, &shift));
        }
        for g in &other.generators {
            gens.push(&one_minus_t * &g.rename_into(&big, &shift));
        }
        let gb = groebner_basis(&big, &gens);
        let kept: Vec<Poly<F>> = gb
            .iter()
            .filter_map(|g| g.restrict_to(&self.ring, &shift))
            .collect();
        Ideal::new(&self.ring, kept)
    }
}

/// `p / f` when `f` divides `p` exactly.
pub fn exact_quotient<F: Scalar>(p: &Poly<F>, f: &Poly<F>) -> Option<Poly<F>> {
    let (q, r) = super::groebner::divide(p, std::slice::from_ref(f));
    r.is_zero().then(|| q.into_iter().next().unwrap())
}

fn fresh_name(ring: &PolyRing, base: &str) -> String {
    let mut name = base.to_string();
    while ring.var_index(&name).is_some() {
        name.push('_');
    }
    name
}

/// Kernel of the ring map `source -> target/target_ideal` sending source
/// variable `i` to `images[i]`, computed by eliminating the target variables.
/// Only generators of source degree at most `max_degree` are returned when a
/// bound is given.
pub fn elimination_kernel<F: Scalar>(
    source: &Arc<PolyRing>,
    target_ideal: &Ideal<F>,
    images: &[Poly<F>],
    max_degree: Option<u32>,
) -> Result<Ideal<F>, PolyError> {
    let target = target_ideal.ring();
    if images.len() != source.nvars() {
        return Err(PolyError::WeightCount { vars: source.nvars(), weights: images.len() });
    }
    let (nt, ns) = (target.nvars(), source.nvars());
    let mut names: Vec<String> = target.names().iter().map(|s| format!("_{s}")).collect();
    names.extend(source.names().iter().cloned());
    let mut weights = target.weights().to_vec();
    weights.extend(source.weights());
    let big = PolyRing::with_order(names, weights, MonomialOrder::Eliminate { block: nt })?;
    let tmap: Vec<usize> = (0..nt).collect();
    let smap: Vec<usize> = (nt..nt + ns).collect();
    let mut gens: Vec<Poly<F>> = target_ideal.generators().iter().map(|g| g.rename_into(&big, &tmap)).collect();
    for (i, img) in images.iter().enumerate() {
        gens.push(&Poly::var(&big, nt + i) - &img.rename_into(&big, &tmap));
    }
    let gb = groebner_basis(&big, &gens);
    let kept: Vec<Poly<F>> = gb
        .iter()
        .filter_map(|g| g.restrict_to(source, &smap))
        .filter(|g| max_degree.is_none_or(|d| g.degree().unwrap_or(0) <= d))
        .collect();
    Ideal::new(source, kept)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::Gf32003;

    type P = Poly<Gf32003>;

    fn ideal(r: &Arc<PolyRing>, gens: &[&str]) -> Ideal<Gf32003> {
        Ideal::new(r, gens.iter().map(|s| parse_poly(r, s).unwrap()).collect()).unwrap()
    }

    fn p(r: &Arc<PolyRing>, s: &str) -> P {
        parse_poly(r, s).unwrap()
    }

    #[test]
    fn normal_form_examples() {
        let r = PolyRing::standard(&["x", "y"]);
        assert!(ideal(&r, &["x*y"]).normal_form(&p(&r, "x*y")).is_zero());
        assert!(ideal(&r, &["x - y", "y^2"]).normal_form(&p(&r, "x^2")).is_zero());
    }

    #[test]
    fn colon_in_quotient_of_monomial_ideal() {
        let r = PolyRing::standard(&["x", "y"]);
        let j = ideal(&r, &["x^3", "y^2"]);
        let c = j.colon(&p(&r, "x")).unwrap();
        assert_eq!(c, ideal(&r, &["x^2", "y^2"]));
    }

    #[test]
    fn colon_by_nonzerodivisor_is_trivial() {
        let r = PolyRing::standard(&["x", "y"]);
        let j = ideal(&r, &["x*y"]);
        assert_eq!(j.colon(&p(&r, "x - y")).unwrap(), j);
        assert_eq!(j.colon(&p(&r, "1")).unwrap(), j);
    }

    #[test]
    fn graded_pieces() {
        let r = PolyRing::standard(&["x", "y"]);
        assert_eq!(ideal(&r, &["x*y"]).graded_piece_basis(3).len(), 2);
        assert_eq!(Ideal::<Gf32003>::zero(&r).graded_piece_basis(2).len(), 3);
        let r1 = PolyRing::standard(&["x"]);
        assert!(ideal(&r1, &["x^2"]).graded_piece_basis(5).is_empty());
    }

    #[test]
    fn cusp_parametrization_kernel() {
        let src = PolyRing::standard(&["x", "y"]);
        let tgt = PolyRing::standard(&["t"]);
        let k = elimination_kernel(&src, &Ideal::zero(&tgt), &[p(&tgt, "t^2"), p(&tgt, "t^3")], Some(6)).unwrap();
        assert!(k.contains(&p(&src, "x^3 - y^2")));
        assert_eq!(k, ideal(&src, &["x^3 - y^2"]));
    }

    #[test]
    fn kernel_of_identity_and_zero_map() {
        let src = PolyRing::standard(&["x"]);
        let id = elimination_kernel(&src, &Ideal::<Gf32003>::zero(&src), &[p(&src, "x")], None).unwrap();
        assert!(id.is_zero());
        let zero = elimination_kernel(&src, &Ideal::<Gf32003>::zero(&src), &[P::zero(&src)], None).unwrap();
        assert_eq!(zero, ideal(&src, &["x"]));
    }
}
