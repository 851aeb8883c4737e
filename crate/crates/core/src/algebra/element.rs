use std::fmt;
use std::sync::Arc;

use super::{AlgebraError, PresentedAlgebra};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// An element of a presented algebra, stored in normal form.
#[derive(Clone, Debug)]
pub struct AlgebraElement<F> {
    algebra: Arc<PresentedAlgebra<F>>,
    value: Poly<F>,
}

impl<F: Scalar> PartialEq for AlgebraElement<F> {
    fn eq(&self, other: &Self) -> bool {
        self.algebra.same_as(&other.algebra) && self.value == other.value
    }
}

impl<F: Scalar> fmt::Display for AlgebraElement<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

impl<F: Scalar> AlgebraElement<F> {
    pub fn new(algebra: &Arc<PresentedAlgebra<F>>, p: &Poly<F>) -> Self {
        AlgebraElement { algebra: algebra.clone(), value: algebra.normal_form(p) }
    }

    /// `ℓ + x`; `x` must have no constant term.
    pub fn from_parts(algebra: &Arc<PresentedAlgebra<F>>, scalar: F, m_part: &Poly<F>) -> Result<Self, AlgebraError> {
        if !m_part.constant_term().is_zero() {
            return Err(AlgebraError::NotInMaximalIdeal(m_part.to_string()));
        }
        let p = &Poly::constant(algebra.ring(), scalar) + m_part;
        Ok(Self::new(algebra, &p))
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.algebra
    }

    pub fn value(&self) -> &Poly<F> {
        &self.value
    }

    pub fn is_zero(&self) -> bool {
        self.value.is_zero()
    }

    /// The unique splitting `r = ℓ + x` with `ℓ ∈ k` and `x ∈ m`.
    pub fn decompose(&self) -> (F, Poly<F>) {
        let l = self.value.constant_term();
        let x = &self.value - &Poly::constant(self.algebra.ring(), l.clone());
        (l, x)
    }

    pub fn scalar_part(&self) -> F {
        self.value.constant_term()
    }

    pub fn m_part(&self) -> Poly<F> {
        self.decompose().1
    }

    fn check_same(&self, other: &Self) -> Result<(), AlgebraError> {
        if self.algebra.same_as(&other.algebra) {
            Ok(())
        } else {
            Err(AlgebraError::AlgebraMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(Self::new(&self.algebra, &(&self.value + &other.value)))
    }

    /// Plain multiplication followed by reduction.
    pub fn mul(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        Ok(Self::new(&self.algebra, &(&self.value * &other.value)))
    }

    /// Multiplication through the splitting:
    /// `(ℓ + x)(ℓ' + x') = ℓℓ' + (ℓx' + ℓ'x + xx')`.
    pub fn product_decomposed(&self, other: &Self) -> Result<Self, AlgebraError> {
        self.check_same(other)?;
        let (l, x) = self.decompose();
        let (l2, x2) = other.decompose();
        let m_part = &(&x2.scale(&l) + &x.scale(&l2)) + &self.algebra.normal_form(&(&x * &x2));
        Self::from_parts(&self.algebra, l * l2, &m_part)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;
    use num_traits::Zero;

    type A = PresentedAlgebra<Gf32003>;

    fn node() -> Arc<A> {
        A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap()
    }

    #[test]
    fn decompose_reads_constant_term() {
        let r = node();
        let e = r.element(&r.parse_element("3 + x + 2*y^2").unwrap());
        let (l, x) = e.decompose();
        assert_eq!(l, Gf32003::from_i64(3));
        assert_eq!(x, r.parse_element("x + 2*y^2").unwrap());
        let (l, x) = r.element(&r.parse_element("x*y").unwrap()).decompose();
        assert!(l.is_zero() && x.is_zero());
    }

    #[test]
    fn decomposed_product_matches_direct() {
        let r = node();
        let a = r.element(&r.parse_element("1 + x").unwrap());
        let b = r.element(&r.parse_element("1 + y").unwrap());
        let p = a.product_decomposed(&b).unwrap();
        assert_eq!(p.value(), &r.parse_element("1 + x + y").unwrap());
        assert_eq!(p, a.mul(&b).unwrap());
    }

    #[test]
    fn dual_numbers_square_to_zero() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let x = r.element(&r.var(0));
        assert!(x.product_decomposed(&x).unwrap().is_zero());
    }

    #[test]
    fn m_part_must_vanish_at_origin() {
        let r = node();
        let one = Poly::one(r.ring());
        assert!(AlgebraElement::from_parts(&r, Gf32003::from_i64(1), &one).is_err());
    }
}
