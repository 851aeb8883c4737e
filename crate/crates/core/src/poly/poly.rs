use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use super::{Monomial, MonomialDisplay, PolyError, PolyRing};
use crate::scalar::Scalar;

/// A polynomial in normal (sorted, zero-free) form.
///
/// Terms are kept in ascending monomial order so the leading term is the last
/// entry.
#[derive(Clone, Debug)]
pub struct Poly<F> {
    ring: Arc<PolyRing>,
    terms: Vec<(Monomial, F)>,
}

impl<F: Scalar> PartialEq for Poly<F> {
    fn eq(&self, other: &Self) -> bool {
        same_ring(&self.ring, &other.ring) && self.terms == other.terms
    }
}

impl<F: Scalar> Eq for Poly<F> {}

pub(crate) fn same_ring(a: &Arc<PolyRing>, b: &Arc<PolyRing>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl<F: Scalar> Poly<F> {
    pub fn zero(ring: &Arc<PolyRing>) -> Self {
        Poly { ring: ring.clone(), terms: Vec::new() }
    }

    pub fn one(ring: &Arc<PolyRing>) -> Self {
        Self::constant(ring, F::one())
    }

    pub fn constant(ring: &Arc<PolyRing>, c: F) -> Self {
        Self::monomial(ring, Monomial::one(ring.nvars()), c)
    }

    pub fn var(ring: &Arc<PolyRing>, i: usize) -> Self {
        Self::monomial(ring, Monomial::var(ring.nvars(), i), F::one())
    }

    pub fn monomial(ring: &Arc<PolyRing>, m: Monomial, c: F) -> Self {
        debug_assert_eq!(m.nvars(), ring.nvars());
        if c.is_zero() {
            Self::zero(ring)
        } else {
            Poly { ring: ring.clone(), terms: vec![(m, c)] }
        }
    }

    /// Builds a polynomial from arbitrary (unsorted, possibly repeated) terms.
    pub fn from_terms(ring: &Arc<PolyRing>, terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut acc: HashMap<Monomial, F> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.nvars(), ring.nvars());
            let e = acc.entry(m).or_insert_with(F::zero);
            *e = e.clone() + c;
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| ring.cmp(&a.0, &b.0));
        Poly { ring: ring.clone(), terms }
    }

    pub(crate) fn from_sorted_unchecked(ring: &Arc<PolyRing>, terms: Vec<(Monomial, F)>) -> Self {
        Poly { ring: ring.clone(), terms }
    }

    pub fn ring(&self) -> &Arc<PolyRing> {
        &self.ring
    }

    /// Terms in ascending order.
    pub fn terms(&self) -> &[(Monomial, F)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn leading_term(&self) -> Option<&(Monomial, F)> {
        self.terms.last()
    }

    pub fn leading_monomial(&self) -> Option<&Monomial> {
        self.terms.last().map(|t| &t.0)
    }

    pub fn leading_coeff(&self) -> Option<&F> {
        self.terms.last().map(|t| &t.1)
    }

    pub fn coeff(&self, m: &Monomial) -> F {
        self.terms
            .binary_search_by(|t| self.ring.cmp(&t.0, m))
            .map(|i| self.terms[i].1.clone())
            .unwrap_or_else(|_| F::zero())
    }

    pub fn constant_term(&self) -> F {
        match self.terms.first() {
            Some((m, c)) if m.is_one() => c.clone(),
            _ => F::zero(),
        }
    }

    pub fn is_constant(&self) -> bool {
        self.terms.iter().all(|(m, _)| m.is_one())
    }

    /// Largest weighted degree of a term, `None` for zero.
    pub fn degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).max()
    }

    /// Smallest weighted degree of a term, `None` for zero.
    pub fn low_degree(&self) -> Option<u32> {
        self.terms.iter().map(|(m, _)| self.ring.degree(m)).min()
    }

    /// The common weighted degree of all terms, if any. Zero has none.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let d = self.ring.degree(&self.terms.first()?.0);
        self.terms.iter().all(|(m, _)| self.ring.degree(m) == d).then_some(d)
    }

    pub fn is_homogeneous(&self) -> bool {
        self.is_zero() || self.homogeneous_degree().is_some()
    }

    /// Degree-`d` part.
    pub fn component(&self, d: u32) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| self.ring.degree(m) == d).cloned().collect(),
        }
    }

    /// Drops all terms of degree above `d`.
    pub fn truncate(&self, d: u32) -> Self {
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().filter(|(m, _)| self.ring.degree(m) <= d).cloned().collect(),
        }
    }

    /// Variables occurring in some term.
    pub fn support_vars(&self) -> Vec<usize> {
        let mut used = vec![false; self.ring.nvars()];
        for (m, _) in &self.terms {
            for (i, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    used[i] = true;
                }
            }
        }
        used.iter().enumerate().filter(|(_, &u)| u).map(|(i, _)| i).collect()
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(m, a)| (m.clone(), a.clone() * c.clone())).collect(),
        }
    }

    /// Multiplies by `c * m`. Monomial multiplication preserves the order, so
    /// no re-sorting is needed.
    pub fn mul_term(&self, m: &Monomial, c: &F) -> Self {
        if c.is_zero() {
            return Self::zero(&self.ring);
        }
        Poly {
            ring: self.ring.clone(),
            terms: self.terms.iter().map(|(t, a)| (t.mul(m), a.clone() * c.clone())).collect(),
        }
    }

    pub fn make_monic(&self) -> Self {
        match self.leading_coeff() {
            Some(c) => self.scale(&c.inv().expect("nonzero leading coefficient")),
            None => self.clone(),
        }
    }

    /// `self + c * m * other`, merging sorted term lists.
    pub fn add_scaled(&self, other: &Self, m: &Monomial, c: &F) -> Self {
        let ring = &self.ring;
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let mut a = self.terms.iter().peekable();
        let mut b = other.terms.iter().map(|(t, x)| (t.mul(m), x.clone() * c.clone())).peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => break,
                (Some(_), None) => out.push(a.next().unwrap().clone()),
                (None, Some(_)) => out.push(b.next().unwrap()),
                (Some(x), Some(y)) => match ring.cmp(&x.0, &y.0) {
                    Ordering::Less => out.push(a.next().unwrap().clone()),
                    Ordering::Greater => out.push(b.next().unwrap()),
                    Ordering::Equal => {
                        let (m, c1) = a.next().unwrap().clone();
                        let (_, c2) = b.next().unwrap();
                        let s = c1 + c2;
                        if !s.is_zero() {
                            out.push((m, s));
                        }
                    }
                },
            }
        }
        Poly { ring: ring.clone(), terms: out }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &Monomial::one(self.ring.nvars()), &F::one()))
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        Ok(self.add_scaled(other, &Monomial::one(self.ring.nvars()), &-F::one()))
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self, PolyError> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (m, c) = &other.terms[0];
            return Ok(self.mul_term(m, c));
        }
        let mut acc: HashMap<Monomial, F> = HashMap::with_capacity(self.terms.len() * other.terms.len());
        for (m1, c1) in &self.terms {
            for (m2, c2) in &other.terms {
                let e = acc.entry(m1.mul(m2)).or_insert_with(F::zero);
                *e = e.clone() + c1.clone() * c2.clone();
            }
        }
        let mut terms: Vec<(Monomial, F)> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| self.ring.cmp(&a.0, &b.0));
        Ok(Poly { ring: self.ring.clone(), terms })
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    fn check_ring(&self, other: &Self) -> Result<(), PolyError> {
        if same_ring(&self.ring, &other.ring) {
            Ok(())
        } else {
            Err(PolyError::RingMismatch)
        }
    }

    /// Substitutes `images[i]` for the `i`-th variable. The images share a
    /// (possibly different) target ring.
    pub fn substitute(&self, target: &Arc<PolyRing>, images: &[Poly<F>]) -> Poly<F> {
        assert_eq!(images.len(), self.ring.nvars(), "one image per variable");
        let mut powers: Vec<Vec<Poly<F>>> = images.iter().map(|g| vec![Poly::one(target), g.clone()]).collect();
        let mut acc = Poly::zero(target);
        for (m, c) in &self.terms {
            let mut t = Poly::constant(target, c.clone());
            for (i, &e) in m.exponents().iter().enumerate() {
                if e == 0 {
                    continue;
                }
                while powers[i].len() <= e as usize {
                    let next = &powers[i][powers[i].len() - 1] * &images[i];
                    powers[i].push(next);
                }
                t = &t * &powers[i][e as usize];
            }
            acc = &acc + &t;
        }
        acc
    }

    /// Re-expresses the polynomial in `target`, sending variable `i` to
    /// variable `var_map[i]`.
    pub fn rename_into(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Poly<F> {
        let n = target.nvars();
        Poly::from_terms(
            target,
            self.terms.iter().map(|(m, c)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (Monomial::from_exponents(e), c.clone())
            }),
        )
    }

    /// Inverse of [`rename_into`](Self::rename_into): pulls a polynomial back
    /// along `var_map`, failing if a variable outside the image occurs.
    pub fn restrict_to(&self, target: &Arc<PolyRing>, var_map: &[usize]) -> Option<Poly<F>> {
        let mut terms = Vec::with_capacity(self.terms.len());
        for (m, c) in &self.terms {
            let mut e = vec![0u16; target.nvars()];
            let mut used = 0u32;
            for (i, &v) in var_map.iter().enumerate() {
                e[i] = m.exponents()[v];
                used += e[i] as u32;
            }
            if used != m.total() {
                return None;
            }
            terms.push((Monomial::from_exponents(e), c.clone()));
        }
        Some(Poly::from_terms(target, terms))
    }

    pub fn display(&self) -> String {
        self.to_string()
    }
}

impl<F: Scalar> fmt::Display for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (k, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative_display();
            let abs = if neg { -c.clone() } else { c.clone() };
            if k == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let md = MonomialDisplay { monomial: m, names: self.ring.names() };
            if m.is_one() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{md}")?;
            } else if abs.is_compound() {
                write!(f, "({abs})*{md}")?;
            } else {
                write!(f, "{abs}*{md}")?;
            }
        }
        Ok(())
    }
}

impl<F: Scalar> Add for &Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: &Poly<F>) -> Poly<F> {
        self.try_add(rhs).expect("polynomials over different rings")
    }
}

impl<F: Scalar> Sub for &Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: &Poly<F>) -> Poly<F> {
        self.try_sub(rhs).expect("polynomials over different rings")
    }
}

impl<F: Scalar> Mul for &Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: &Poly<F>) -> Poly<F> {
        self.try_mul(rhs).expect("polynomials over different rings")
    }
}

impl<F: Scalar> Neg for &Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        self.scale(&-F::one())
    }
}

impl<F: Scalar> Add for Poly<F> {
    type Output = Poly<F>;
    fn add(self, rhs: Poly<F>) -> Poly<F> {
        &self + &rhs
    }
}

impl<F: Scalar> Sub for Poly<F> {
    type Output = Poly<F>;
    fn sub(self, rhs: Poly<F>) -> Poly<F> {
        &self - &rhs
    }
}

impl<F: Scalar> Mul for Poly<F> {
    type Output = Poly<F>;
    fn mul(self, rhs: Poly<F>) -> Poly<F> {
        &self * &rhs
    }
}

impl<F: Scalar> Neg for Poly<F> {
    type Output = Poly<F>;
    fn neg(self) -> Poly<F> {
        -&self
    }
}
