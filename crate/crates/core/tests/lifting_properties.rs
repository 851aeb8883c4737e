mod common;

use std::sync::Arc;

use common::A;
use semifiber::constructions::{decomposition_verify, fiber_product, semi_fiber_product, ActionTable};
use semifiber::lifting::{
    check_lifting, periodic_candidate, poincare_factorization_test, retraction_search, retraction_system,
    section_search, section_system, socle_case_decide, thm_minimal_generator_test, LiftingProblem, SearchConfig,
};
use semifiber::{AlgebraMorphism, DefaultComplex, DefaultPoly, FreeComplex, TriState};

struct Fixture {
    name: &'static str,
    r: Arc<A>,
    ideal: Vec<DefaultPoly>,
    candidate: Option<DefaultComplex>,
}

fn fixture(name: &'static str, vars: &[(&str, u32)], rels: &[&str], ideal: &[&str], cand: Option<(&[&str], usize)>) -> Fixture {
    let r = A::parse(vars, rels, None).unwrap();
    let ideal = ideal.iter().map(|g| r.parse_element(g).unwrap()).collect();
    let candidate = cand.map(|(entries, len)| {
        if len == 0 {
            FreeComplex::new(&r, vec![vec![0]], Vec::new()).unwrap()
        } else {
            let e: Vec<DefaultPoly> = entries.iter().map(|g| r.parse_element(g).unwrap()).collect();
            periodic_candidate(&r, &e, len).unwrap()
        }
    });
    Fixture { name, r, ideal, candidate }
}

fn corpus() -> Vec<Fixture> {
    vec![
        fixture("node", &[("x", 1), ("y", 1)], &["x*y"], &["x - y"], Some((&["x", "y"], 5))),
        fixture("node/(x)", &[("x", 1), ("y", 1)], &["x*y"], &["x"], Some((&["y"], 1))),
        fixture("box", &[("x", 1), ("y", 1)], &["x^3", "y^2"], &["x"], Some((&["y"], 5))),
        fixture("socle line", &[("x", 1), ("y", 1)], &["x*y", "y^2"], &["y"], Some((&["x"], 1))),
        fixture("dual", &[("x", 1)], &["x^2"], &["x"], Some((&[], 0))),
        fixture("cusp", &[("x", 3), ("y", 2)], &["x^2 - y^3"], &["y"], None),
        fixture("square", &[("x", 1)], &[], &["x^2"], Some((&["x^2"], 1))),
        fixture("dependent", &[("x", 1), ("y", 1)], &["x^3", "x*y", "y^2"], &["x^2"], None),
    ]
}

/// `Some(true)` for evidence that `k` lifts, `Some(false)` against.
fn polarity(v: &TriState) -> Option<bool> {
    match v {
        TriState::Proved => Some(true),
        TriState::Refuted(_) => Some(false),
        TriState::Unknown(_) => None,
    }
}

#[test]
fn verdicts_never_contradict_each_other() {
    let (n, d) = (4, 9);
    for fx in corpus() {
        let mut evidence: Vec<(&str, bool)> = Vec::new();
        if let Some(b) = polarity(&thm_minimal_generator_test(&fx.r, &fx.ideal).unwrap()) {
            evidence.push(("minimal generators", b));
        }
        if let Some(b) = polarity(&poincare_factorization_test(&fx.r, &fx.ideal, None, 3, None).unwrap().verdict) {
            evidence.push(("poincare", b));
        }
        if let Ok(dec) = socle_case_decide(&fx.r, &fx.ideal, d, &SearchConfig::default()) {
            if let Some(b) = polarity(&dec.verdict) {
                evidence.push(("socle", b));
            }
        }
        if let Some(l) = &fx.candidate {
            let p = LiftingProblem::new(&fx.r, &fx.ideal, n, d).unwrap().with_candidate(l.clone());
            if check_lifting(&p).unwrap().verdict.is_verified() {
                evidence.push(("lifting", true));
            }
        }
        let pos = evidence.iter().any(|(_, b)| *b);
        let neg = evidence.iter().any(|(_, b)| !*b);
        assert!(!(pos && neg), "{}: {evidence:?}", fx.name);
    }
}

#[test]
fn lemma_factorization_holds_whenever_a_lifting_is_verified() {
    let (n, d) = (4, 9);
    let mut verified = Vec::new();
    for fx in corpus() {
        let Some(l) = &fx.candidate else { continue };
        let p = LiftingProblem::new(&fx.r, &fx.ideal, n, d).unwrap().with_candidate(l.clone());
        let rep = check_lifting(&p).unwrap();
        if !rep.verdict.is_verified() {
            continue;
        }
        verified.push(fx.name);
        let f = poincare_factorization_test(&fx.r, &fx.ideal, None, n, None).unwrap();
        assert_eq!(f.over_r, f.product, "{}", fx.name);
        assert!(f.nu.holds, "{}", fx.name);
    }
    assert_eq!(verified, vec!["node", "node/(x)", "box", "socle line", "dual"]);
}

#[test]
fn the_square_candidate_is_rejected() {
    let fx = corpus().into_iter().find(|f| f.name == "square").unwrap();
    let p = LiftingProblem::new(&fx.r, &fx.ideal, 2, 6).unwrap().with_candidate(fx.candidate.unwrap());
    assert!(!check_lifting(&p).unwrap().verdict.is_verified());
}

#[test]
fn found_retractions_give_decompositions() {
    let cases: [(&[(&str, u32)], &[&str], &[(&str, u32)], &[&str]); 3] = [
        (&[("x", 1)], &["x^3"], &[("x", 1), ("y", 1)], &["x^3", "y^2"]),
        (&[("x", 1)], &[], &[("x", 1), ("y", 1)], &["x*y"]),
        (&[("y", 1)], &["y^2"], &[("x", 1), ("y", 1)], &["x^2", "y^2"]),
    ];
    for (tv, tr, rv, rr) in cases {
        let t = A::parse(tv, tr, None).unwrap();
        let r = A::parse(rv, rr, None).unwrap();
        let incl = AlgebraMorphism::by_names(&t, &r).unwrap().verify().unwrap();
        let res = retraction_search(&incl, 6, &SearchConfig::default()).unwrap();
        let rho = res.found().expect("a retraction");
        let kernel = rho.kernel(Some(6)).unwrap();
        let gens: Vec<DefaultPoly> =
            kernel.generators().iter().map(|g| r.normal_form(g)).filter(|g| !g.is_zero()).collect();
        let cert = decomposition_verify(&r, incl.images(), &gens, 6);
        assert!(cert.verdict.is_proved(), "{}", cert.verdict);
    }
}

#[test]
fn semi_fiber_products_have_retractions() {
    let line = A::parse(&[("x", 1)], &[], None).unwrap();
    let cube = A::parse(&[("y", 1)], &["y^3"], None).unwrap();
    let dual = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
    let f = AlgebraMorphism::parse(&line, &cube, &["y"]).unwrap().verify().unwrap();
    let tables = [
        ActionTable::zero(&dual, &cube).validate(4).unwrap(),
        ActionTable::induced(&f).unwrap().validate(4).unwrap(),
    ];
    for t in tables {
        let p = semi_fiber_product(&t).unwrap();
        let found = retraction_search(&p.r_embedding, 6, &SearchConfig::default()).unwrap();
        assert!(found.found().unwrap().is_verified());
    }
}

#[test]
fn node_is_the_fiber_product_of_its_branches() {
    let x = A::parse(&[("x", 1)], &[], None).unwrap();
    let y = A::parse(&[("y", 1)], &[], None).unwrap();
    let fp = fiber_product(&x, &y).unwrap();
    let node = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
    assert!(fp.algebra.same_as(&node));
    for incl in [&fp.left, &fp.right] {
        let res = retraction_search(incl, 6, &SearchConfig::default()).unwrap();
        let rho = res.found().expect("both branches are retracts");
        assert!(incl.then(rho).unwrap().is_identity());
    }
    assert!(fp.decomposition(6).verdict.is_proved());
    // S = k[y] with its retraction: the action induced by the composite
    // k[x] → node → k[y] is zero, so the semi-fiber product is the fiber product
    let to_s = AlgebraMorphism::parse(&x, &y, &["0"]).unwrap().verify().unwrap();
    let t = ActionTable::induced(&to_s).unwrap().validate(6).unwrap();
    assert!(t.is_zero());
    assert!(semi_fiber_product(&t).unwrap().algebra.same_as(&node));
}

#[test]
fn infeasibility_certificates_replay() {
    let t = A::parse(&[("y", 2)], &[], None).unwrap();
    let cusp = A::parse(&[("x", 3), ("y", 2)], &["x^2 - y^3"], None).unwrap();
    let incl = AlgebraMorphism::by_names(&t, &cusp).unwrap().verify().unwrap();
    let res = retraction_search(&incl, 12, &SearchConfig::default()).unwrap();
    let cert = res.certificate().expect("no retraction of the cusp");
    assert!(cert.replay());
    assert_eq!(retraction_system(&incl, 12).equations, cert.system.equations);

    let node = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
    let rbar = node.quotient(&[node.parse_element("x - y").unwrap()]).unwrap();
    let pi = AlgebraMorphism::new(&node, &rbar, rbar.vars()).unwrap().verify().unwrap();
    let res = section_search(&pi, 6, &SearchConfig::default()).unwrap();
    let cert = res.certificate().expect("no section onto the dual numbers");
    assert!(cert.replay());
    assert_eq!(section_system(&pi, 6).equations, cert.system.equations);

    // a tampered proof must not replay
    let mut bad = cert.clone();
    bad.system.equations.pop();
    assert!(!bad.replay());
}
