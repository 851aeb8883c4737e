//! Semi-fiber products and their special cases (fiber products, trivial
//! extensions, tensor algebras), the `ψ` isomorphism, the universal
//! morphism, and the `m_A = u ⊕ I` decomposition check.

mod action;
mod decomposition;
mod psi;
mod semifiber;

use std::sync::Arc;

use serde::Serialize;

pub use action::{ActionError, ActionTable};
pub use decomposition::{decomposition_verify, DecompositionCertificate};
pub use psi::{psi_isomorphism, PsiIsomorphism};
pub use semifiber::{semi_fiber_product, universal_morphism, SemiFiberElement, SemiFiberPresentation};

use crate::algebra::{AlgebraError, AlgebraMorphism, ModulePresentation, MorphismError, PresentedAlgebra};
use crate::poly::{Poly, PolyRing};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ConstructionError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
    #[error("action table has not been validated")]
    NotValidated,
    #[error("degree {degree}: presentation has dimension {found}, expected {expected}")]
    DimensionMismatch { degree: u32, expected: usize, found: usize },
    #[error("{law} fails: {detail}")]
    Violation { law: &'static str, detail: String },
    #[error("not bijective in degree {0}")]
    NotBijective(u32),
}

/// A variable renamed to avoid a clash, `(original, new)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Rename {
    pub from: String,
    pub to: String,
}

/// Ring on the variables of `left` followed by those of `right`, with clashing
/// names of `right` suffixed `_2`, `_3`, ...
pub(crate) struct Joined {
    pub ring: Arc<PolyRing>,
    pub left: Vec<usize>,
    pub right: Vec<usize>,
    pub renames: Vec<Rename>,
}

pub(crate) fn join_rings(left: &PolyRing, right_names: &[String], right_weights: &[u32]) -> Joined {
    let mut names: Vec<String> = left.names().to_vec();
    let mut weights = left.weights().to_vec();
    let mut renames = Vec::new();
    for (n, &w) in right_names.iter().zip(right_weights) {
        let mut name = n.clone();
        let mut k = 2;
        while names.contains(&name) || (name != *n && right_names.contains(&name)) {
            name = format!("{n}_{k}");
            k += 1;
        }
        if name != *n {
            renames.push(Rename { from: n.clone(), to: name.clone() });
        }
        names.push(name);
        weights.push(w);
    }
    let nl = left.nvars();
    let ring = PolyRing::new(names, weights).expect("joined names are distinct");
    Joined { ring, left: (0..nl).collect(), right: (nl..nl + right_names.len()).collect(), renames }
}

/// A presentation built from two algebras, with the canonical maps into it.
#[derive(Clone, Debug)]
pub struct BinaryConstruction<F> {
    pub algebra: Arc<PresentedAlgebra<F>>,
    pub left: AlgebraMorphism<F>,
    pub right: AlgebraMorphism<F>,
    pub renames: Vec<Rename>,
}

impl<F: Scalar> BinaryConstruction<F> {
    /// Checks `m_A = u ⊕ I` with `u` generated by the left variables and `I` by
    /// the right ones.
    pub fn decomposition(&self, d: u32) -> DecompositionCertificate {
        decomposition_verify(&self.algebra, self.left.images(), self.right.images(), d)
    }
}

fn build<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    s: &Arc<PresentedAlgebra<F>>,
    extra: impl FnOnce(&Joined) -> Vec<Poly<F>>,
) -> Result<BinaryConstruction<F>, ConstructionError> {
    let j = join_rings(r.ring(), s.names(), s.weights());
    let mut rels: Vec<Poly<F>> = r.ideal().generators().iter().map(|g| g.rename_into(&j.ring, &j.left)).collect();
    rels.extend(s.ideal().generators().iter().map(|g| g.rename_into(&j.ring, &j.right)));
    rels.extend(extra(&j));
    let a = PresentedAlgebra::new(&j.ring, rels, None)?;
    let left = AlgebraMorphism::new(r, &a, j.left.iter().map(|&i| a.var(i)).collect())?.verify()?;
    let right = AlgebraMorphism::new(s, &a, j.right.iter().map(|&i| a.var(i)).collect())?.verify()?;
    Ok(BinaryConstruction { algebra: a, left, right, renames: j.renames })
}

/// `R ×_k S = k[x, y] / (J_R + J_S + (x_i y_j))`.
pub fn fiber_product<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    s: &Arc<PresentedAlgebra<F>>,
) -> Result<BinaryConstruction<F>, ConstructionError> {
    build(r, s, |j| {
        let mut out = Vec::new();
        for &a in &j.left {
            for &b in &j.right {
                out.push(&Poly::var(&j.ring, a) * &Poly::var(&j.ring, b));
            }
        }
        out
    })
}

/// `R ⊗_k T = k[x, z] / (J_R + J_T)`.
pub fn tensor_algebra<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    t: &Arc<PresentedAlgebra<F>>,
) -> Result<BinaryConstruction<F>, ConstructionError> {
    build(r, t, |_| Vec::new())
}

/// The idealization `R ⋉ M`: one new variable per generator of `M`, products
/// of new variables set to zero, and the module relations imposed.
#[derive(Clone, Debug)]
pub struct TrivialExtension<F> {
    pub algebra: Arc<PresentedAlgebra<F>>,
    pub embedding: AlgebraMorphism<F>,
    /// Indices of the module variables in the new ring.
    pub module_vars: Vec<usize>,
    pub renames: Vec<Rename>,
}

impl<F: Scalar> TrivialExtension<F> {
    pub fn module_generators(&self) -> Vec<Poly<F>> {
        self.module_vars.iter().map(|&i| self.algebra.var(i)).collect()
    }
}

pub fn trivial_extension<F: Scalar>(m: &ModulePresentation<F>) -> Result<TrivialExtension<F>, ConstructionError> {
    let r = m.algebra();
    let g = m.num_generators();
    let names: Vec<String> = if g == 1 { vec!["e".to_string()] } else { (1..=g).map(|i| format!("e{i}")).collect() };
    let lowest = m.shifts().iter().copied().min().unwrap_or(1);
    let offset = 1u32.saturating_sub(lowest);
    let weights: Vec<u32> = m.shifts().iter().map(|s| s + offset).collect();
    let j = join_rings(r.ring(), &names, &weights);
    let mut rels: Vec<Poly<F>> = r.ideal().generators().iter().map(|p| p.rename_into(&j.ring, &j.left)).collect();
    for (a, &ia) in j.right.iter().enumerate() {
        for &ib in &j.right[a..] {
            rels.push(&Poly::var(&j.ring, ia) * &Poly::var(&j.ring, ib));
        }
    }
    for col in m.relations() {
        let mut acc = Poly::zero(&j.ring);
        for (p, &iv) in col.iter().zip(&j.right) {
            acc = &acc + &(&p.rename_into(&j.ring, &j.left) * &Poly::var(&j.ring, iv));
        }
        rels.push(acc);
    }
    let a = PresentedAlgebra::new(&j.ring, rels, None)?;
    let embedding = AlgebraMorphism::new(r, &a, j.left.iter().map(|&i| a.var(i)).collect())?.verify()?;
    Ok(TrivialExtension { algebra: a, embedding, module_vars: j.right, renames: j.renames })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn fiber_product_of_lines_is_node() {
        let x = A::parse(&[("x", 1)], &[], None).unwrap();
        let y = A::parse(&[("y", 1)], &[], None).unwrap();
        let fp = fiber_product(&x, &y).unwrap();
        let node = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        assert!(fp.algebra.same_as(&node));
        assert!(fp.renames.is_empty());
    }

    #[test]
    fn fiber_product_with_field_and_clash() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let fp = fiber_product(&r, &A::field()).unwrap();
        assert!(fp.algebra.same_as(&r));
        let clash = fiber_product(&r, &r).unwrap();
        assert_eq!(clash.renames, vec![Rename { from: "x".into(), to: "x_2".into() }]);
        assert_eq!(clash.algebra.hilbert(3), vec![1, 2, 0, 0]);
    }

    #[test]
    fn truncated_fiber_product_dimensions() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let s = A::parse(&[("y", 1)], &["y^3"], None).unwrap();
        let fp = fiber_product(&r, &s).unwrap();
        assert_eq!(fp.algebra.hilbert(3), vec![1, 2, 1, 0]);
    }

    #[test]
    fn trivial_extensions() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let m = ModulePresentation::residue_field(&r);
        let te = trivial_extension(&m).unwrap();
        let expected = A::parse(&[("x", 1), ("e", 1)], &["e^2", "x*e"], None).unwrap();
        assert!(te.algebra.same_as(&expected));
        let zero = ModulePresentation::free(&r, vec![]);
        assert!(trivial_extension(&zero).unwrap().algebra.same_as(&r));
        let k = A::field();
        let dual = trivial_extension(&ModulePresentation::residue_field(&k)).unwrap();
        assert_eq!(dual.algebra.hilbert(2), vec![1, 1, 0]);
    }

    #[test]
    fn tensor_of_lines_decomposes() {
        let x = A::parse(&[("x", 1)], &[], None).unwrap();
        let y = A::parse(&[("y", 1)], &[], None).unwrap();
        let t = tensor_algebra(&x, &y).unwrap();
        assert_eq!(t.algebra.hilbert(3), vec![1, 2, 3, 4]);
        assert!(t.decomposition(6).verdict.is_proved());
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let s = A::parse(&[("y", 1)], &["y^2"], None).unwrap();
        let expected = A::parse(&[("x", 1), ("y", 1)], &["x^2", "y^2"], None).unwrap();
        assert!(tensor_algebra(&r, &s).unwrap().algebra.same_as(&expected));
    }
}
