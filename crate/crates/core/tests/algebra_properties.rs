mod common;

use common::{fixture, fixtures, m_strategy, poly_strategy, A};
use num_traits::Zero;
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semifiber::algebra::{flatness_certificate, minimal_generators, AlgebraElement};
use semifiber::linalg::Matrix;
use semifiber::{AlgebraMorphism, DefaultPoly, Gf32003, Monomial, Poly, Scalar};

fn random_element(a: &std::sync::Arc<A>, rng: &mut ChaCha8Rng) -> AlgebraElement<Gf32003> {
    let ring = a.ring();
    let terms = (0..rng.gen_range(0..5)).map(|_| {
        let e: Vec<u16> = (0..ring.nvars()).map(|_| rng.gen_range(0..4)).collect();
        (Monomial::from_exponents(e), Gf32003::from_i64(rng.gen_range(-50..50)))
    });
    AlgebraElement::new(a, &Poly::from_terms(ring, terms))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn decompose_is_a_bijection(p in poly_strategy(fixture("node").ring().clone(), 6, 4)) {
        let a = fixture("node");
        let el = AlgebraElement::new(&a, &p);
        let (l, x) = el.decompose();
        prop_assert!(x.constant_term().is_zero());
        let back = AlgebraElement::from_parts(&a, l.clone(), &x).unwrap();
        prop_assert_eq!(back.value(), el.value());
        // the splitting of ℓ + x returns ℓ and x
        let (l2, x2) = back.decompose();
        prop_assert_eq!(l2, l);
        prop_assert_eq!(x2, x);
    }

    #[test]
    fn m_part_really_lies_in_m(p in m_strategy(fixture("cusp").ring().clone(), 5, 3)) {
        let a = fixture("cusp");
        let el = AlgebraElement::new(&a, &p);
        prop_assert!(el.scalar_part().is_zero());
    }
}

#[test]
fn decomposed_product_agrees_with_direct_product() {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for (name, a) in fixtures() {
        for _ in 0..1000 {
            let u = random_element(&a, &mut rng);
            let v = random_element(&a, &mut rng);
            let direct = AlgebraElement::new(&a, &(u.value() * v.value()));
            assert_eq!(u.product_decomposed(&v).unwrap(), direct, "{name}: ({u}) * ({v})");
        }
    }
}

/// `dim_k (I / mI)` by direct linear algebra on degree pieces: `I_e` is the
/// span of all monomial multiples of the generators, `(mI)_e` the span of
/// multiples by monomials of positive degree.
fn nu_oracle(a: &A, gens: &[DefaultPoly], top: u32) -> usize {
    let mut total = 0;
    for e in 0..=top {
        let mut all = Vec::new();
        let mut deep = Vec::new();
        for g in gens {
            let dg = g.homogeneous_degree().unwrap();
            if dg > e {
                continue;
            }
            for m in a.ring().monomials_of_degree(e - dg) {
                let v = a.coords(&g.mul_term(&m, &Gf32003::new(1)), e);
                if !m.is_one() {
                    deep.push(v.clone());
                }
                all.push(v);
            }
        }
        let rank = |cols: &[Vec<Gf32003>]| Matrix::from_columns(a.dim(e), cols).rank();
        total += rank(&all) - rank(&deep);
    }
    total
}

#[test]
fn minimal_generator_count_matches_oracle() {
    let cases: Vec<(&str, Vec<&str>)> = vec![
        ("node", vec!["x", "y", "x + y", "x^2"]),
        ("node", vec!["x^2", "y^2", "x^2 + y^2", "x^3"]),
        ("cusp", vec!["y", "x", "y^2", "x*y"]),
        ("box", vec!["x^2", "x*y", "x^2*y", "y"]),
        ("three", vec!["x", "z^2", "x*y", "y*z"]),
        ("line", vec!["x^3", "x^4", "x^5"]),
    ];
    for (name, gens) in cases {
        let a = fixture(name);
        let gens: Vec<DefaultPoly> = gens.iter().map(|g| a.parse_element(g).unwrap()).collect();
        let mg = minimal_generators(&a, &gens).unwrap();
        assert_eq!(mg.nu(), nu_oracle(&a, &gens, 8), "{name}: {gens:?}");
    }
}

#[test]
fn composition_of_verified_morphisms_verifies() {
    let node = fixture("node");
    let line = fixture("line");
    let dual = fixture("dual");
    let f = AlgebraMorphism::parse(&node, &line, &["x", "0"]).unwrap().verify().unwrap();
    let g = AlgebraMorphism::parse(&line, &dual, &["x"]).unwrap().verify().unwrap();
    let h = AlgebraMorphism::parse(&line, &node, &["x + y"]).unwrap().verify().unwrap();
    for (p, q) in [(&f, &g), (&h, &f), (&f, &h)] {
        let c = p.then(q).unwrap();
        assert!(c.is_verified());
        assert!(c.clone().verify().is_ok());
    }
}

#[test]
fn identity_is_flat_for_every_fixture() {
    for (name, a) in fixtures() {
        let id = AlgebraMorphism::identity(&a).verify().unwrap();
        let cert = flatness_certificate(&id, 3, 6).unwrap();
        assert!(cert.verdict.is_proved(), "{name}: {}", cert.verdict);
    }
}
