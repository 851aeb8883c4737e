use std::sync::Arc;

use super::PresentedAlgebra;
use crate::linalg::Matrix;
use crate::poly::{elimination_kernel, parse_poly, Ideal, ParseError, Poly, PolyError};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MorphismError {
    #[error("expected {expected} images, got {found}")]
    Count { expected: usize, found: usize },
    #[error("image of {var} must lie in the target ring")]
    RingMismatch { var: String },
    #[error("image {image} of {var} has a nonzero constant term")]
    ConstantTerm { var: String, image: String },
    #[error("relation {relation} maps to {image}, not 0")]
    RelationViolation { relation: String, image: String },
    #[error("morphism is not graded (image of {0} is not homogeneous of its weight)")]
    NotGraded(String),
    #[error("no variable named {0} in the target")]
    MissingVariable(String),
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A k-algebra map given by the images of the source variables.
#[derive(Clone, Debug)]
pub struct AlgebraMorphism<F> {
    source: Arc<PresentedAlgebra<F>>,
    target: Arc<PresentedAlgebra<F>>,
    images: Vec<Poly<F>>,
    verified: bool,
}

impl<F: Scalar> AlgebraMorphism<F> {
    /// An unverified morphism; images are reduced in the target.
    pub fn new(
        source: &Arc<PresentedAlgebra<F>>,
        target: &Arc<PresentedAlgebra<F>>,
        images: Vec<Poly<F>>,
    ) -> Result<Self, MorphismError> {
        if images.len() != source.nvars() {
            return Err(MorphismError::Count { expected: source.nvars(), found: images.len() });
        }
        for (i, img) in images.iter().enumerate() {
            if **img.ring() != **target.ring() {
                return Err(MorphismError::RingMismatch { var: source.names()[i].clone() });
            }
        }
        let images = images.iter().map(|p| target.normal_form(p)).collect();
        Ok(AlgebraMorphism { source: source.clone(), target: target.clone(), images, verified: false })
    }

    pub fn parse(
        source: &Arc<PresentedAlgebra<F>>,
        target: &Arc<PresentedAlgebra<F>>,
        images: &[&str],
    ) -> Result<Self, MorphismError> {
        let polys = images.iter().map(|s| parse_poly(target.ring(), s)).collect::<Result<Vec<_>, _>>()?;
        Self::new(source, target, polys)
    }

    pub fn identity(a: &Arc<PresentedAlgebra<F>>) -> Self {
        AlgebraMorphism { source: a.clone(), target: a.clone(), images: a.vars(), verified: true }
            .with_reduced_images()
    }

    /// Sends each source variable to the target variable of the same name.
    pub fn by_names(source: &Arc<PresentedAlgebra<F>>, target: &Arc<PresentedAlgebra<F>>) -> Result<Self, MorphismError> {
        let mut images = Vec::new();
        for n in source.names() {
            let j = target.ring().var_index(n).ok_or_else(|| MorphismError::MissingVariable(n.clone()))?;
            images.push(target.var(j));
        }
        Self::new(source, target, images)
    }

    fn with_reduced_images(mut self) -> Self {
        self.images = self.images.iter().map(|p| self.target.normal_form(p)).collect();
        self
    }

    pub fn source(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.source
    }

    pub fn target(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.target
    }

    pub fn images(&self) -> &[Poly<F>] {
        &self.images
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    /// Checks that images lie in the maximal ideal and that every relation of
    /// the source maps to zero.
    pub fn verify(mut self) -> Result<Self, MorphismError> {
        for (i, img) in self.images.iter().enumerate() {
            if !img.constant_term().is_zero() {
                return Err(MorphismError::ConstantTerm {
                    var: self.source.names()[i].clone(),
                    image: img.to_string(),
                });
            }
        }
        for g in self.source.ideal().generators() {
            let image = self.apply(g);
            if !image.is_zero() {
                return Err(MorphismError::RelationViolation { relation: g.to_string(), image: image.to_string() });
            }
        }
        self.verified = true;
        Ok(self)
    }

    /// Image of a source polynomial, reduced in the target.
    pub fn apply(&self, p: &Poly<F>) -> Poly<F> {
        self.target.normal_form(&p.substitute(self.target.ring(), &self.images))
    }

    /// `next ∘ self`.
    pub fn then(&self, next: &AlgebraMorphism<F>) -> Result<AlgebraMorphism<F>, MorphismError> {
        if !self.target.same_as(&next.source) {
            return Err(PolyError::RingMismatch.into());
        }
        let images = self.images.iter().map(|p| next.apply(p)).collect();
        let mut out = AlgebraMorphism::new(&self.source, &next.target, images)?;
        out.verified = self.verified && next.verified;
        Ok(out)
    }

    /// Pointwise equality on generators.
    pub fn agrees_with(&self, other: &AlgebraMorphism<F>) -> bool {
        self.source.same_as(&other.source) && self.target.same_as(&other.target) && self.images == other.images
    }

    pub fn is_identity(&self) -> bool {
        self.source.same_as(&self.target) && self.images == self.source.vars().iter().map(|v| self.target.normal_form(v)).collect::<Vec<_>>()
    }

    /// Every image is zero or homogeneous of the weight of its variable.
    pub fn is_graded(&self) -> bool {
        self.images
            .iter()
            .zip(self.source.weights())
            .all(|(p, &w)| p.is_zero() || p.homogeneous_degree() == Some(w))
    }

    pub fn require_graded(&self) -> Result<(), MorphismError> {
        match self.images.iter().zip(self.source.weights()).position(|(p, &w)| !(p.is_zero() || p.homogeneous_degree() == Some(w))) {
            None => Ok(()),
            Some(i) => Err(MorphismError::NotGraded(self.source.names()[i].clone())),
        }
    }

    /// Matrix of the degree-`e` component, source basis to target basis.
    /// Only meaningful for graded morphisms.
    pub fn matrix_in_degree(&self, e: u32) -> Matrix<F> {
        let src = self.source.basis(e);
        let cols: Vec<Vec<F>> = src
            .monomials
            .iter()
            .map(|m| {
                let p = Poly::monomial(self.source.ring(), m.clone(), F::one());
                self.target.coords(&self.apply(&p), e)
            })
            .collect();
        Matrix::from_columns(self.target.dim(e), &cols)
    }

    /// First degree `e ≤ d` where the graded map fails to be injective.
    pub fn injectivity_defect(&self, d: u32) -> Option<u32> {
        (0..=d).find(|&e| self.matrix_in_degree(e).rank() < self.source.dim(e))
    }

    /// First degree `e ≤ d` where the graded map fails to be surjective.
    pub fn surjectivity_defect(&self, d: u32) -> Option<u32> {
        (0..=d).find(|&e| self.matrix_in_degree(e).rank() < self.target.dim(e))
    }

    /// Kernel as an ideal of the source polynomial ring (it contains the
    /// source relations), by elimination.
    pub fn kernel(&self, max_degree: Option<u32>) -> Result<Ideal<F>, PolyError> {
        let k = elimination_kernel(self.source.ring(), self.target.ideal(), &self.images, max_degree)?;
        Ok(k.sum(self.source.ideal()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn projection_of_node_onto_line() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let t = A::parse(&[("x", 1)], &[], None).unwrap();
        let f = AlgebraMorphism::parse(&r, &t, &["x", "0"]).unwrap().verify().unwrap();
        assert!(f.is_verified() && f.is_graded());
    }

    #[test]
    fn non_morphism_rejected() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let t = A::parse(&[("x", 1)], &[], None).unwrap();
        let err = AlgebraMorphism::parse(&r, &t, &["x"]).unwrap().verify().unwrap_err();
        assert!(matches!(err, MorphismError::RelationViolation { .. }));
        let err = AlgebraMorphism::parse(&t, &t, &["x + 1"]).unwrap().verify().unwrap_err();
        assert!(matches!(err, MorphismError::ConstantTerm { .. }));
    }

    #[test]
    fn identity_and_composition() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let id = AlgebraMorphism::identity(&r).verify().unwrap();
        assert!(id.is_identity());
        let swap = AlgebraMorphism::parse(&r, &r, &["y", "x"]).unwrap().verify().unwrap();
        let twice = swap.then(&swap).unwrap();
        assert!(twice.is_identity() && twice.is_verified());
    }

    #[test]
    fn kernel_of_projection() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let t = A::parse(&[("x", 1)], &[], None).unwrap();
        let f = AlgebraMorphism::parse(&r, &t, &["x", "0"]).unwrap();
        let k = f.kernel(None).unwrap();
        assert!(k.contains(&r.var(1)));
        assert!(!k.contains(&r.var(0)));
        assert_eq!(f.injectivity_defect(3), Some(1));
        assert_eq!(f.surjectivity_defect(3), None);
    }
}
