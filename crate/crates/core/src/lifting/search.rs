//! Search for retractions and sections by solving for the coefficients of
//! the unknown map, truncated at a degree bound.
//!
//! Every image `ρ(x_i)` is written as a general element of `m_Y` of degree
//! at most `d`, with one unknown per standard monomial. Because the target is
//! graded, the conditions "relations of the source map to zero" and
//! "the composite is the identity" only involve those unknowns in degrees
//! `≤ d`, so they are necessary conditions on any true solution. An
//! inconsistent system therefore proves that no morphism exists.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use serde::Serialize;
use serde_json::json;

use crate::algebra::{AlgebraMorphism, MorphismError, PresentedAlgebra};
use crate::poly::{check_unit_certificate, groebner_basis, is_unit_basis, unit_certificate, Monomial, MonomialDisplay, Poly, PolyRing};
use crate::scalar::Scalar;
use crate::verdict::SearchResult;

/// Limits for the solver.
#[derive(Clone, Debug)]
pub struct SearchConfig {
    /// Largest number of unknowns enumerated exhaustively over a finite field.
    pub unknown_budget: usize,
    /// Values `nth_element(0..trial_values)` tried per unknown by the greedy pass.
    pub trial_values: u64,
    /// Cap on the number of points visited by exhaustive enumeration.
    pub max_points: u64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        SearchConfig { unknown_budget: 8, trial_values: 4, max_points: 1 << 20 }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SearchError {
    #[error("morphism must be verified")]
    Unverified,
    #[error("morphism must be graded for truncated search")]
    NotGraded,
    #[error("inclusion is not injective in degree {0}")]
    NotInjective(u32),
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// The unknown coefficient of `monomial` in the image of `variable`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Coefficient {
    pub name: String,
    pub variable: String,
    pub monomial: String,
    pub degree: u32,
}

/// Polynomial equations in the unknown coefficients.
#[derive(Clone, Debug)]
pub struct ConstraintSystem<F> {
    pub coefficients: Vec<Coefficient>,
    pub ring: Arc<PolyRing>,
    pub equations: Vec<Poly<F>>,
    /// Where each equation comes from.
    pub origins: Vec<String>,
    pub degree: u32,
}

#[derive(Clone, Debug)]
pub enum Infeasibility<F> {
    /// `Σ cofactors[i] · equations[i] = 1`.
    Cofactors(Vec<Poly<F>>),
    /// Every point of `k^n` over the finite field violates some equation.
    Exhaustive { field_order: u64, unknowns: Vec<usize> },
}

/// Replayable evidence that a constraint system has no solution.
#[derive(Clone, Debug)]
pub struct InfeasibilityCertificate<F> {
    pub system: ConstraintSystem<F>,
    pub proof: Infeasibility<F>,
}

impl<F: Scalar> InfeasibilityCertificate<F> {
    /// Rechecks the proof from the recorded system alone.
    pub fn replay(&self) -> bool {
        let sys = &self.system;
        match &self.proof {
            Infeasibility::Cofactors(h) => check_unit_certificate(&sys.ring, &sys.equations, h),
            Infeasibility::Exhaustive { field_order, unknowns } => {
                if F::order() != Some(*field_order) {
                    return false;
                }
                let mut vals = vec![F::zero(); sys.ring.nvars()];
                !enumerate(*field_order, unknowns, &mut vals, &mut |v| sys.equations.iter().all(|e| eval_at(e, v).is_zero()))
            }
        }
    }

    pub fn to_json(&self) -> serde_json::Value {
        let sys = &self.system;
        let equations: Vec<_> = sys
            .equations
            .iter()
            .zip(&sys.origins)
            .map(|(e, o)| json!({ "origin": o, "equation": e.to_string() }))
            .collect();
        let proof = match &self.proof {
            Infeasibility::Cofactors(h) => json!({
                "kind": "unit-ideal",
                "cofactors": h.iter().map(|p| p.to_string()).collect::<Vec<_>>(),
            }),
            Infeasibility::Exhaustive { field_order, unknowns } => json!({
                "kind": "exhaustive",
                "field_order": field_order,
                "unknowns": unknowns.iter().map(|&i| sys.coefficients[i].name.clone()).collect::<Vec<_>>(),
            }),
        };
        json!({
            "degree": sys.degree,
            "unknowns": sys.coefficients,
            "equations": equations,
            "proof": proof,
        })
    }
}

pub type MorphismSearch<F> = SearchResult<AlgebraMorphism<F>, InfeasibilityCertificate<F>>;

fn eval_at<F: Scalar>(p: &Poly<F>, vals: &[F]) -> F {
    let mut acc = F::zero();
    for (m, c) in p.terms() {
        let mut t = c.clone();
        for (v, &e) in vals.iter().zip(m.exponents()) {
            for _ in 0..e {
                t = t * v.clone();
            }
        }
        acc = acc + t;
    }
    acc
}

/// Calls `f` on every assignment of the listed unknowns; stops early and
/// returns `true` as soon as `f` does.
fn enumerate<F: Scalar>(q: u64, unknowns: &[usize], vals: &mut Vec<F>, f: &mut dyn FnMut(&[F]) -> bool) -> bool {
    match unknowns.split_first() {
        None => f(vals),
        Some((&k, rest)) => {
            for i in 0..q {
                vals[k] = F::nth_element(i);
                if enumerate(q, rest, vals, f) {
                    return true;
                }
            }
            vals[k] = F::zero();
            false
        }
    }
}

type PMap<F> = BTreeMap<Monomial, Poly<F>>;

/// Truncated arithmetic on elements of `Y` with coefficients in the unknowns.
struct Builder<F> {
    y: Arc<PresentedAlgebra<F>>,
    d: u32,
    ring: Arc<PolyRing>,
    coefficients: Vec<Coefficient>,
    images: Vec<PMap<F>>,
    nf: HashMap<Monomial, Vec<(Monomial, F)>>,
}

impl<F: Scalar> Builder<F> {
    /// Unknowns are ordered by internal degree, then source variable, then
    /// monomial.
    fn new(x: &PresentedAlgebra<F>, y: &Arc<PresentedAlgebra<F>>, d: u32) -> Self {
        let mut slots: Vec<(u32, usize, Monomial)> = Vec::new();
        for e in 1..=d {
            let basis = y.basis(e);
            for i in 0..x.nvars() {
                for m in &basis.monomials {
                    slots.push((e, i, m.clone()));
                }
            }
        }
        let coefficients: Vec<Coefficient> = slots
            .iter()
            .map(|(e, i, m)| {
                let mono = MonomialDisplay::new(m, y.names()).to_string();
                Coefficient {
                    name: format!("c[{};{}]", x.names()[*i], mono),
                    variable: x.names()[*i].clone(),
                    monomial: mono,
                    degree: *e,
                }
            })
            .collect();
        let ring = PolyRing::new(coefficients.iter().map(|c| c.name.clone()).collect(), vec![1; coefficients.len()])
            .expect("coefficient names are distinct");
        let mut images = vec![PMap::new(); x.nvars()];
        for (k, (_, i, m)) in slots.into_iter().enumerate() {
            images[i].insert(m, Poly::var(&ring, k));
        }
        Builder { y: y.clone(), d, ring, coefficients, images, nf: HashMap::new() }
    }

    fn normal_monomial(&mut self, m: &Monomial) -> Vec<(Monomial, F)> {
        if let Some(v) = self.nf.get(m) {
            return v.clone();
        }
        let p = self.y.normal_form(&Poly::monomial(self.y.ring(), m.clone(), F::one()));
        let v = p.terms().to_vec();
        self.nf.insert(m.clone(), v.clone());
        v
    }

    fn add_into(&mut self, out: &mut PMap<F>, m: &Monomial, p: &Poly<F>) {
        if self.y.ring().degree(m) > self.d {
            return;
        }
        for (n, c) in self.normal_monomial(m) {
            let entry = out.entry(n).or_insert_with(|| Poly::zero(&self.ring));
            *entry = &*entry + &p.scale(&c);
        }
    }

    fn constant(&mut self, q: &Poly<F>) -> PMap<F> {
        let mut out = PMap::new();
        for (m, c) in q.terms() {
            let p = Poly::constant(&self.ring, c.clone());
            self.add_into(&mut out, m, &p);
        }
        out
    }

    fn mul(&mut self, a: &PMap<F>, b: &PMap<F>) -> PMap<F> {
        let mut out = PMap::new();
        for (ma, pa) in a {
            for (mb, pb) in b {
                let m = ma.mul(mb);
                if self.y.ring().degree(&m) <= self.d {
                    let p = pa * pb;
                    self.add_into(&mut out, &m, &p);
                }
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    /// `ρ(p)` for a polynomial `p` in the source variables.
    fn eval(&mut self, p: &Poly<F>) -> PMap<F> {
        let one = Monomial::one(self.y.nvars());
        let mut out = PMap::new();
        for (m, c) in p.terms() {
            let mut acc: PMap<F> = PMap::from([(one.clone(), Poly::constant(&self.ring, c.clone()))]);
            for (i, &e) in m.exponents().iter().enumerate() {
                for _ in 0..e {
                    let img = self.images[i].clone();
                    acc = self.mul(&acc, &img);
                }
            }
            for (n, q) in acc {
                let entry = out.entry(n).or_insert_with(|| Poly::zero(&self.ring));
                *entry = &*entry + &q;
            }
        }
        out.retain(|_, p| !p.is_zero());
        out
    }

    fn equations_from(&self, m: &PMap<F>, label: &str, names: &[String], eqs: &mut Vec<Poly<F>>, origins: &mut Vec<String>) {
        for (mono, p) in m {
            if !p.is_zero() {
                eqs.push(p.clone());
                origins.push(format!("{label}, coefficient of {}", MonomialDisplay::new(mono, names)));
            }
        }
    }

    fn images_at(&self, vals: &[F]) -> Vec<Poly<F>> {
        self.images
            .iter()
            .map(|img| {
                let terms = img.iter().map(|(m, p)| (m.clone(), eval_at(p, vals)));
                Poly::from_terms(self.y.ring(), terms)
            })
            .collect()
    }
}

fn sub<F: Scalar>(a: &PMap<F>, b: &PMap<F>) -> PMap<F> {
    let mut out = a.clone();
    for (m, p) in b {
        match out.get_mut(m) {
            Some(q) => *q = &*q - p,
            None => {
                out.insert(m.clone(), -p.clone());
            }
        }
    }
    out.retain(|_, p| !p.is_zero());
    out
}

/// Which identity the unknown map must satisfy.
enum Goal<'a, F> {
    /// Unknown `ρ: R → T` with `ρ ∘ incl = id_T`.
    Retraction(&'a AlgebraMorphism<F>),
    /// Unknown `σ: R̄ → R` with `π ∘ σ = id_R̄`.
    Section(&'a AlgebraMorphism<F>),
}

fn build<F: Scalar>(goal: &Goal<'_, F>, d: u32) -> (Builder<F>, ConstraintSystem<F>) {
    let (x, y) = match goal {
        Goal::Retraction(incl) => (incl.target().clone(), incl.source().clone()),
        Goal::Section(pi) => (pi.target().clone(), pi.source().clone()),
    };
    let mut b = Builder::new(&x, &y, d);
    let mut eqs = Vec::new();
    let mut origins = Vec::new();
    for g in x.ideal().generators() {
        let v = b.eval(g);
        b.equations_from(&v, &format!("relation {g}"), y.names(), &mut eqs, &mut origins);
    }
    match goal {
        Goal::Retraction(incl) => {
            for (t, img) in incl.images().iter().enumerate() {
                let lhs = b.eval(img);
                let rhs = b.constant(&y.var(t));
                let diff = sub(&lhs, &rhs);
                b.equations_from(&diff, &format!("composite on {}", y.names()[t]), y.names(), &mut eqs, &mut origins);
            }
        }
        Goal::Section(pi) => {
            // π is graded, so π(ρ(z)) in degrees ≤ d only sees ρ(z) in degrees ≤ d.
            let rbar = pi.target();
            for z in 0..x.nvars() {
                let mut acc: PMap<F> = PMap::new();
                for (m, p) in b.images[z].clone() {
                    let image = pi.apply(&Poly::monomial(y.ring(), m, F::one()));
                    for (n, c) in image.terms() {
                        let entry = acc.entry(n.clone()).or_insert_with(|| Poly::zero(&b.ring));
                        *entry = &*entry + &p.scale(c);
                    }
                }
                let target: PMap<F> = rbar
                    .normal_form(&rbar.var(z))
                    .terms()
                    .iter()
                    .map(|(m, c)| (m.clone(), Poly::constant(&b.ring, c.clone())))
                    .collect();
                let diff = sub(&acc, &target);
                b.equations_from(&diff, &format!("composite on {}", rbar.names()[z]), rbar.names(), &mut eqs, &mut origins);
            }
        }
    }
    let system = ConstraintSystem { coefficients: b.coefficients.clone(), ring: b.ring.clone(), equations: eqs, origins, degree: d };
    (b, system)
}

fn substitute_value<F: Scalar>(ring: &Arc<PolyRing>, eqs: &[Poly<F>], k: usize, v: &F) -> Vec<Poly<F>> {
    let images: Vec<Poly<F>> = (0..ring.nvars())
        .map(|i| if i == k { Poly::constant(ring, v.clone()) } else { Poly::var(ring, i) })
        .collect();
    eqs.iter().map(|e| e.substitute(ring, &images)).filter(|e| !e.is_zero()).collect()
}

fn solve<F: Scalar>(
    goal: Goal<'_, F>,
    d: u32,
    config: &SearchConfig,
    accept: &dyn Fn(Vec<Poly<F>>) -> Option<AlgebraMorphism<F>>,
) -> MorphismSearch<F> {
    let (b, system) = build(&goal, d);
    let ring = system.ring.clone();
    if let Some(h) = unit_certificate(&ring, &system.equations) {
        return SearchResult::NoneExists(InfeasibilityCertificate { system, proof: Infeasibility::Cofactors(h) });
    }

    // Greedy pass in the fixed unknown order.
    let n = ring.nvars();
    let mut vals = vec![F::zero(); n];
    let mut eqs: Vec<Poly<F>> = system.equations.clone();
    let mut greedy_ok = true;
    for k in 0..n {
        if !eqs.iter().any(|e| e.support_vars().contains(&k)) {
            continue;
        }
        let mut chosen = None;
        for t in 0..config.trial_values {
            let v = F::nth_element(t);
            let next = substitute_value(&ring, &eqs, k, &v);
            if !is_unit_basis(&groebner_basis(&ring, &next)) {
                chosen = Some((v, next));
                break;
            }
        }
        match chosen {
            Some((v, next)) => {
                vals[k] = v;
                eqs = next;
            }
            None => {
                greedy_ok = false;
                break;
            }
        }
    }
    if greedy_ok && eqs.is_empty() {
        return match accept(b.images_at(&vals)) {
            Some(m) => SearchResult::Found(m),
            None => SearchResult::Unknown {
                reason: format!("a solution of the degree-{d} truncation does not extend to an exact morphism"),
                bound: d,
            },
        };
    }

    // Exhaustive enumeration over a small finite field.
    let involved: Vec<usize> = (0..n).filter(|&k| system.equations.iter().any(|e| e.support_vars().contains(&k))).collect();
    if let Some(q) = F::order() {
        let points = (q as f64).powi(involved.len() as i32);
        if involved.len() <= config.unknown_budget && points <= config.max_points as f64 {
            let mut point = vec![F::zero(); n];
            let mut found = None;
            enumerate(q, &involved, &mut point, &mut |v| {
                if system.equations.iter().all(|e| eval_at(e, v).is_zero()) {
                    found = Some(v.to_vec());
                    true
                } else {
                    false
                }
            });
            return match found {
                Some(v) => match accept(b.images_at(&v)) {
                    Some(m) => SearchResult::Found(m),
                    None => SearchResult::Unknown {
                        reason: format!("a solution of the degree-{d} truncation does not extend to an exact morphism"),
                        bound: d,
                    },
                },
                None => SearchResult::NoneExists(InfeasibilityCertificate {
                    system,
                    proof: Infeasibility::Exhaustive { field_order: q, unknowns: involved },
                }),
            };
        }
    }
    SearchResult::Unknown {
        reason: format!(
            "the degree-{d} system is consistent but no rational point was found ({} unknowns, budget {})",
            involved.len(),
            config.unknown_budget
        ),
        bound: d,
    }
}

/// The constraint system for a retraction of `incl: T → R`.
pub fn retraction_system<F: Scalar>(incl: &AlgebraMorphism<F>, d: u32) -> ConstraintSystem<F> {
    build(&Goal::Retraction(incl), d).1
}

/// The constraint system for a section of `π: R → R̄`.
pub fn section_system<F: Scalar>(pi: &AlgebraMorphism<F>, d: u32) -> ConstraintSystem<F> {
    build(&Goal::Section(pi), d).1
}

/// Looks for `ρ: R → T` with `ρ ∘ incl = id_T`.
pub fn retraction_search<F: Scalar>(
    incl: &AlgebraMorphism<F>,
    d: u32,
    config: &SearchConfig,
) -> Result<MorphismSearch<F>, SearchError> {
    if !incl.is_verified() {
        return Err(SearchError::Unverified);
    }
    if incl.is_graded() {
        if let Some(e) = incl.injectivity_defect(d) {
            return Err(SearchError::NotInjective(e));
        }
    }
    let (t, r) = (incl.source().clone(), incl.target().clone());
    let accept = |images: Vec<Poly<F>>| {
        let rho = AlgebraMorphism::new(&r, &t, images).ok()?.verify().ok()?;
        incl.then(&rho).ok()?.is_identity().then_some(rho)
    };
    Ok(solve(Goal::Retraction(incl), d, config, &accept))
}

/// Looks for `σ: R̄ → R` with `π ∘ σ = id_R̄`.
pub fn section_search<F: Scalar>(
    pi: &AlgebraMorphism<F>,
    d: u32,
    config: &SearchConfig,
) -> Result<MorphismSearch<F>, SearchError> {
    if !pi.is_verified() {
        return Err(SearchError::Unverified);
    }
    if !pi.is_graded() {
        return Err(SearchError::NotGraded);
    }
    let (r, rbar) = (pi.source().clone(), pi.target().clone());
    let accept = |images: Vec<Poly<F>>| {
        let sigma = AlgebraMorphism::new(&rbar, &r, images).ok()?.verify().ok()?;
        sigma.then(pi).ok()?.is_identity().then_some(sigma)
    };
    Ok(solve(Goal::Section(pi), d, config, &accept))
}
