//! Graded k-algebras `k[x]/J` with the distinguished rational point
//! `m = (x)`, their elements, morphisms and finitely presented modules.

mod element;
mod flatness;
mod generators;
pub(crate) mod module;
mod morphism;

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::{Arc, Mutex};

pub use element::AlgebraElement;
pub use flatness::{flatness_certificate, FlatnessCertificate, FlatnessError};
pub use generators::{ideal_piece, is_independent_mod_m_squared, minimal_generators, MinimalGenerators};
pub use module::{free_coords, free_from_coords, free_slice_dim, submodule_span, ModulePresentation};
pub use morphism::{AlgebraMorphism, MorphismError};

use crate::poly::{parse_poly, Ideal, Monomial, ParseError, Poly, PolyError, PolyRing};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AlgebraError {
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("relation {0} has a nonzero constant term; the maximal ideal (x) would not be a rational point")]
    ConstantTerm(String),
    #[error("relation {0} is not homogeneous for the declared weights")]
    NonHomogeneous(String),
    #[error("element {0} does not lie in the maximal ideal")]
    NotInMaximalIdeal(String),
    #[error("elements belong to different algebras")]
    AlgebraMismatch,
}

/// Standard monomials of one degree, with their positions.
#[derive(Debug)]
pub struct Piece {
    pub monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
}

impl Piece {
    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn position(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }
}

/// `k[x_1..x_n] / J` with homogeneous `J ⊆ (x)`. When a truncation `d` is set,
/// every monomial of weighted degree above `d` is added to `J`.
pub struct PresentedAlgebra<F> {
    ring: Arc<PolyRing>,
    relations: Vec<Poly<F>>,
    truncation: Option<u32>,
    ideal: Ideal<F>,
    pieces: Mutex<BTreeMap<u32, Arc<Piece>>>,
}

impl<F: fmt::Debug> fmt::Debug for PresentedAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresentedAlgebra")
            .field("vars", &self.ring.names())
            .field("weights", &self.ring.weights())
            .field("relations", &self.relations)
            .field("truncation", &self.truncation)
            .finish()
    }
}

impl<F: Scalar> fmt::Display for PresentedAlgebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let vars: Vec<String> = self
            .ring
            .names()
            .iter()
            .zip(self.ring.weights())
            .map(|(n, w)| if *w == 1 { n.clone() } else { format!("{n}({w})") })
            .collect();
        write!(f, "k[{}]", vars.join(", "))?;
        if !self.relations.is_empty() {
            let rels: Vec<String> = self.relations.iter().map(|r| r.to_string()).collect();
            write!(f, "/({})", rels.join(", "))?;
        }
        if let Some(d) = self.truncation {
            write!(f, " trunc {d}")?;
        }
        Ok(())
    }
}

impl<F: Scalar> PresentedAlgebra<F> {
    pub fn new(ring: &Arc<PolyRing>, relations: Vec<Poly<F>>, truncation: Option<u32>) -> Result<Arc<Self>, AlgebraError> {
        for r in &relations {
            if **r.ring() != **ring {
                return Err(PolyError::RingMismatch.into());
            }
            if !r.constant_term().is_zero() {
                return Err(AlgebraError::ConstantTerm(r.to_string()));
            }
            if !r.is_homogeneous() {
                return Err(AlgebraError::NonHomogeneous(r.to_string()));
            }
        }
        let relations: Vec<Poly<F>> = relations.into_iter().filter(|r| !r.is_zero()).collect();
        let mut gens = relations.clone();
        if let Some(d) = truncation {
            gens.extend(truncation_monomials(ring, d).into_iter().map(|m| Poly::monomial(ring, m, F::one())));
        }
        let ideal = Ideal::new(ring, gens)?;
        Ok(Arc::new(PresentedAlgebra {
            ring: ring.clone(),
            relations,
            truncation,
            ideal,
            pieces: Mutex::new(BTreeMap::new()),
        }))
    }

    /// Builds the ring and parses the relations in one step.
    pub fn parse(vars: &[(&str, u32)], relations: &[&str], truncation: Option<u32>) -> Result<Arc<Self>, AlgebraError> {
        let ring = PolyRing::new(
            vars.iter().map(|(n, _)| n.to_string()).collect(),
            vars.iter().map(|(_, w)| *w).collect(),
        )?;
        let rels = relations.iter().map(|s| parse_poly(&ring, s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(&ring, rels, truncation)
    }

    /// The residue field `k` itself.
    pub fn field() -> Arc<Self> {
        let ring = PolyRing::new(Vec::new(), Vec::new()).expect("empty ring");
        Self::new(&ring, Vec::new(), None).expect("k is valid")
    }

    /// `self / (extra)`, on the same variables.
    pub fn quotient(&self, extra: &[Poly<F>]) -> Result<Arc<Self>, AlgebraError> {
        let mut rels = self.relations.clone();
        for e in extra {
            let nf = self.normal_form(e);
            if !nf.is_zero() {
                rels.push(nf);
            }
        }
        Self::new(&self.ring, rels, self.truncation)
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// The relations as declared (without truncation monomials).
    pub fn relations(&self) -> &[Poly<F>] {
        &self.relations
    }

    pub fn truncation(&self) -> Option<u32> {
        self.truncation
    }

    /// The full defining ideal, truncation monomials included.
    pub fn ideal(&self) -> &Ideal<F> {
        &self.ideal
    }

    pub fn nvars(&self) -> usize {
        self.ring.nvars()
    }

    pub fn names(&self) -> &[String] {
        self.ring.names()
    }

    pub fn weights(&self) -> &[u32] {
        self.ring.weights()
    }

    pub fn var(&self, i: usize) -> Poly<F> {
        Poly::var(&self.ring, i)
    }

    pub fn vars(&self) -> Vec<Poly<F>> {
        (0..self.nvars()).map(|i| self.var(i)).collect()
    }

    pub fn parse_element(&self, src: &str) -> Result<Poly<F>, ParseError> {
        parse_poly(&self.ring, src).map(|p| self.normal_form(&p))
    }

    pub fn element(self: &Arc<Self>, p: &Poly<F>) -> AlgebraElement<F> {
        AlgebraElement::new(self, p)
    }

    pub fn normal_form(&self, p: &Poly<F>) -> Poly<F> {
        self.ideal.normal_form(p)
    }

    pub fn is_zero(&self, p: &Poly<F>) -> bool {
        self.ideal.contains(p)
    }

    /// Structural equality of presentations: same ring and same ideal.
    pub fn same_as(&self, other: &Self) -> bool {
        std::ptr::eq(self, other) || (*self.ring == *other.ring && self.ideal == other.ideal)
    }

    /// Largest weighted degree of a Gröbner basis element (0 for no relations).
    pub fn max_relation_degree(&self) -> u32 {
        self.ideal.groebner().iter().filter_map(|g| g.degree()).max().unwrap_or(0)
    }

    pub fn max_weight(&self) -> u32 {
        self.weights().iter().copied().max().unwrap_or(0)
    }

    /// Standard monomial basis of the degree-`d` piece.
    pub fn basis(&self, d: u32) -> Arc<Piece> {
        let mut cache = self.pieces.lock().expect("piece cache poisoned");
        cache
            .entry(d)
            .or_insert_with(|| {
                let monomials = self.ideal.graded_piece_basis(d);
                let index = monomials.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
                Arc::new(Piece { monomials, index })
            })
            .clone()
    }

    pub fn dim(&self, d: u32) -> usize {
        self.basis(d).len()
    }

    /// `dim A_0, ..., dim A_d`.
    pub fn hilbert(&self, d: u32) -> Vec<usize> {
        (0..=d).map(|e| self.dim(e)).collect()
    }

    /// Coordinates of the degree-`d` component of `p` (reduced first).
    pub fn coords(&self, p: &Poly<F>, d: u32) -> Vec<F> {
        self.coords_of_normal(&self.normal_form(p), d)
    }

    /// Like [`coords`](Self::coords) for an element already in normal form.
    pub fn coords_of_normal(&self, nf: &Poly<F>, d: u32) -> Vec<F> {
        let piece = self.basis(d);
        let mut v = vec![F::zero(); piece.len()];
        for (m, c) in nf.terms() {
            if self.ring.degree(m) == d {
                let i = piece.position(m).expect("normal form uses standard monomials");
                v[i] = c.clone();
            }
        }
        v
    }

    pub fn from_coords(&self, d: u32, v: &[F]) -> Poly<F> {
        let piece = self.basis(d);
        Poly::from_terms(
            &self.ring,
            piece.monomials.iter().zip(v).filter(|(_, c)| !c.is_zero()).map(|(m, c)| (m.clone(), c.clone())),
        )
    }

    /// True if `p` has no constant term after reduction.
    pub fn in_maximal_ideal(&self, p: &Poly<F>) -> bool {
        self.normal_form(p).constant_term().is_zero()
    }
}

/// Minimal monomials of weighted degree greater than `d`.
fn truncation_monomials(ring: &PolyRing, d: u32) -> Vec<Monomial> {
    let wmax = ring.weights().iter().copied().max().unwrap_or(0);
    let mut out = Vec::new();
    for e in d + 1..=d + wmax {
        for m in ring.monomials_of_degree(e) {
            let minimal = m.exponents().iter().enumerate().all(|(i, &x)| x == 0 || e - ring.weights()[i] <= d);
            if minimal {
                out.push(m);
            }
        }
    }
    out
}
