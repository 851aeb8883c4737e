#![allow(dead_code)]

use std::sync::Arc;

use proptest::prelude::*;
use semifiber::linalg::Matrix;
use semifiber::{DefaultAlgebra, DefaultPoly, Gf32003, Monomial, Poly, PolyRing, Scalar};

pub type A = DefaultAlgebra;

/// Small graded algebras used across the property tests.
pub fn fixtures() -> Vec<(&'static str, Arc<A>)> {
    vec![
        ("line", A::parse(&[("x", 1)], &[], None).unwrap()),
        ("dual", A::parse(&[("x", 1)], &["x^2"], None).unwrap()),
        ("node", A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap()),
        ("cusp", A::parse(&[("x", 3), ("y", 2)], &["x^2 - y^3"], None).unwrap()),
        ("box", A::parse(&[("x", 1), ("y", 1)], &["x^3", "y^2"], None).unwrap()),
        ("three", A::parse(&[("x", 1), ("y", 1), ("z", 1)], &["x*y - z^2", "x*z"], None).unwrap()),
        ("truncated", A::parse(&[("x", 1), ("y", 1)], &["x^2 - y^2"], Some(4)).unwrap()),
    ]
}

pub fn fixture(name: &str) -> Arc<A> {
    fixtures().into_iter().find(|(n, _)| *n == name).unwrap().1
}

/// A polynomial with up to `terms` terms of total exponent at most `max_exp`.
pub fn poly_strategy(ring: Arc<PolyRing>, terms: usize, max_exp: u16) -> impl Strategy<Value = DefaultPoly> {
    let n = ring.nvars();
    proptest::collection::vec((proptest::collection::vec(0..=max_exp, n), -20i64..20), 0..=terms).prop_map(
        move |raw| {
            Poly::from_terms(
                &ring,
                raw.into_iter().map(|(e, c)| (Monomial::from_exponents(e), Gf32003::from_i64(c))),
            )
        },
    )
}

/// Polynomials without constant term.
pub fn m_strategy(ring: Arc<PolyRing>, terms: usize, max_exp: u16) -> impl Strategy<Value = DefaultPoly> {
    poly_strategy(ring, terms, max_exp).prop_map(|p| {
        let c = p.constant_term();
        &p - &Poly::constant(p.ring(), c)
    })
}

/// Coordinates of `p` on the list of monomials `basis` (all of one degree).
pub fn monomial_coords(p: &DefaultPoly, basis: &[Monomial]) -> Vec<Gf32003> {
    basis.iter().map(|m| p.coeff(m)).collect()
}

/// `dim_k (k[x]/J)_e` by counting monomials and subtracting the rank of all
/// degree-`e` multiples of the relations, with no Gröbner basis involved.
pub fn dim_by_rank(a: &A, e: u32) -> usize {
    let ring = a.ring();
    let monos = ring.monomials_of_degree(e);
    let mut cols = Vec::new();
    for g in a.relations() {
        for c in 0..=e {
            let gc = g.component(c);
            if gc.is_zero() {
                continue;
            }
            for m in ring.monomials_of_degree(e - c) {
                let prod = gc.mul_term(&m, &Gf32003::from_i64(1));
                cols.push(monomial_coords(&prod, &monos));
            }
        }
    }
    let killed = if a.truncation().is_some_and(|t| e > t) { monos.len() } else { 0 };
    if killed > 0 {
        return 0;
    }
    monos.len() - Matrix::from_columns(monos.len(), &cols).rank()
}
