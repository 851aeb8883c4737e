mod common;

use std::sync::Arc;

use common::{fixtures, A};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use semifiber::homology::{betti_by_tensoring, minimal_free_resolution};
use semifiber::{AlgebraMorphism, DefaultComplex, DefaultPoly, FreeComplex, Gf32003, ModulePresentation, Poly, PolyMatrix, Scalar};

fn random_homogeneous(a: &Arc<A>, e: u32, rng: &mut ChaCha8Rng) -> DefaultPoly {
    let basis = a.basis(e);
    let terms = basis.monomials.iter().map(|m| (m.clone(), Gf32003::from_i64(rng.gen_range(-3..4))));
    Poly::from_terms(a.ring(), terms)
}

/// A random small complex with `∂² = 0` by construction: a Koszul complex on
/// two homogeneous elements, or a periodic complex `f, g, f` with `fg = 0`
/// when the algebra provides such a pair.
fn random_complex(a: &Arc<A>, zero_pair: Option<(&DefaultPoly, &DefaultPoly)>, rng: &mut ChaCha8Rng) -> DefaultComplex {
    let degree = |rng: &mut ChaCha8Rng| rng.gen_range(1..=2);
    if let (Some((f, g)), true) = (zero_pair, rng.gen_bool(0.4)) {
        let h = random_homogeneous(a, rng.gen_range(0..=1), rng);
        let h = if h.is_zero() { Poly::one(a.ring()) } else { h };
        let fh = f * &h;
        let rows = |p: &DefaultPoly| PolyMatrix::from_rows(vec![vec![p.clone()]]);
        if !a.normal_form(&fh).is_zero() {
            return FreeComplex::from_differentials(a, vec![0], vec![rows(&fh), rows(g), rows(&fh)]).unwrap();
        }
    }
    loop {
        let (df, dg) = (degree(rng), degree(rng));
        let f = random_homogeneous(a, df, rng);
        let g = random_homogeneous(a, dg, rng);
        if a.normal_form(&f).is_zero() || a.normal_form(&g).is_zero() {
            continue;
        }
        let d1 = PolyMatrix::from_rows(vec![vec![f.clone(), g.clone()]]);
        let minus_f = &Poly::zero(a.ring()) - &f;
        let d2 = PolyMatrix::from_rows(vec![vec![g.clone()], vec![minus_f]]);
        return FreeComplex::new(a, vec![vec![0], vec![df, dg], vec![df + dg]], vec![d1, d2]).unwrap();
    }
}

#[test]
fn flat_base_change_detects_acyclicity() {
    // T = k[x] ⊆ R, both R free over T
    let pairs = [
        (A::parse(&[("x", 1)], &[], None).unwrap(), A::parse(&[("x", 1), ("y", 1)], &["y^2"], None).unwrap()),
        (A::parse(&[("x", 1)], &["x^3"], None).unwrap(), A::parse(&[("x", 1), ("y", 1)], &["x^3", "y^2"], None).unwrap()),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(17);
    let d = 7;
    for (t, r) in pairs {
        let phi = AlgebraMorphism::by_names(&t, &r).unwrap().verify().unwrap();
        assert!(semifiber::algebra::flatness_certificate(&phi, 2, d).unwrap().verdict.is_proved());
        let r_bar = r.quotient(phi.images()).unwrap();
        let q = AlgebraMorphism::new(&r, &r_bar, r_bar.vars()).unwrap().verify().unwrap();
        let y = r.var(1);
        let mut vanished = 0;
        for _ in 0..100 {
            let f = random_complex(&r, Some((&y, &y)), &mut rng).verify().unwrap();
            let reduced = f.base_change(&q).unwrap();
            for n in 1..f.top() {
                if reduced.homology_dims(n, d).iter().all(|&h| h == 0) {
                    vanished += 1;
                    assert!(f.homology_dims(n, d).iter().all(|&h| h == 0));
                }
            }
        }
        assert!(vanished > 0, "the property was never exercised");
    }
}

#[test]
fn base_change_preserves_complexes() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (name, a) in fixtures() {
        if a.nvars() == 0 {
            continue;
        }
        for _ in 0..20 {
            let c = random_complex(&a, None, &mut rng).verify().unwrap();
            let kill = random_homogeneous(&a, 1.max(a.weights()[0]), &mut rng);
            let b = a.quotient(&[kill]).unwrap();
            let q = AlgebraMorphism::new(&a, &b, b.vars()).unwrap().verify().unwrap();
            let reduced = c.base_change(&q).unwrap();
            assert!(reduced.verify().is_ok(), "{name}");
        }
    }
}

#[test]
fn betti_numbers_vanish_below_the_diagonal_and_agree_with_tor() {
    for (name, a) in fixtures() {
        let mut modules = vec![ModulePresentation::residue_field(&a)];
        if a.nvars() > 0 {
            modules.push(ModulePresentation::cyclic(&a, &[a.var(0)]).unwrap());
        }
        for m in modules {
            let (n, d) = (3, 7);
            let res = minimal_free_resolution(&m, n, d).unwrap();
            for (i, j, b) in res.betti.entries() {
                assert!(b == 0 || j as usize >= i, "{name}: beta_{i},{j} = {b}");
            }
            let tor = betti_by_tensoring(&res.complex, n, d).unwrap();
            for i in 0..=n {
                for j in 0..=d {
                    let direct = res.betti.get(i, j);
                    assert_eq!(tor.get(&(i, j)).copied().unwrap_or(0), direct, "{name}: Tor_{i} in degree {j}");
                }
            }
        }
    }
}
