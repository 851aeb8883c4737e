use super::{fiber_product, semi_fiber_product, ActionTable, BinaryConstruction, ConstructionError, SemiFiberPresentation};
use crate::algebra::AlgebraMorphism;
use crate::scalar::Scalar;

/// `ψ: R ⋉_k S → R ×_k S`, `ψ(ℓ ⊕ x ⊕ y) = (ℓ ⊕ x, ℓ ⊕ (y + f(x)))`, for the
/// action induced by `f: R → S`, together with its inverse.
#[derive(Clone, Debug)]
pub struct PsiIsomorphism<F> {
    pub semi_fiber: SemiFiberPresentation<F>,
    pub fiber: BinaryConstruction<F>,
    pub forward: AlgebraMorphism<F>,
    pub inverse: AlgebraMorphism<F>,
    pub checked_degree: u32,
}

/// Builds both presentations, the mutually inverse maps, and checks that
/// they compose to the identity and are bijective on pieces of degree `≤ d`.
pub fn psi_isomorphism<F: Scalar>(f: &AlgebraMorphism<F>, d: u32) -> Result<PsiIsomorphism<F>, ConstructionError> {
    let table = ActionTable::induced(f)?.validate(d)?;
    let semi = semi_fiber_product(&table)?;
    let fiber = fiber_product(f.source(), f.target())?;
    let (a, b) = (&semi.algebra, &fiber.algebra);
    let nr = f.source().nvars();
    let ns = f.target().nvars();

    let mut fwd = Vec::with_capacity(nr + ns);
    let mut inv = Vec::with_capacity(nr + ns);
    for (i, img) in f.images().iter().enumerate() {
        fwd.push(&b.var(i) + &fiber.right.apply(img));
        inv.push(&a.var(i) - &semi.s_embedding.apply(img));
    }
    for j in 0..ns {
        fwd.push(b.var(nr + j));
        inv.push(a.var(nr + j));
    }
    let forward = AlgebraMorphism::new(a, b, fwd)?.verify()?;
    let inverse = AlgebraMorphism::new(b, a, inv)?.verify()?;
    if !forward.then(&inverse)?.is_identity() || !inverse.then(&forward)?.is_identity() {
        return Err(ConstructionError::Violation { law: "inverse", detail: "ψ and its inverse do not compose to the identity".into() });
    }
    if forward.is_graded() {
        for e in 0..=d {
            if forward.matrix_in_degree(e).rank() != a.dim(e) || a.dim(e) != b.dim(e) {
                return Err(ConstructionError::NotBijective(e));
            }
        }
    }
    Ok(PsiIsomorphism { semi_fiber: semi, fiber, forward, inverse, checked_degree: d })
}
