//! One function per procedure. Each reads its parameters, calls into the
//! library and packs the outcome into a [`TaskReport`].

use std::collections::BTreeMap;
use std::sync::Arc;

use serde_json::{json, Value};

use semifiber::algebra::{flatness_certificate, minimal_generators};
use semifiber::constructions::{fiber_product, psi_isomorphism, semi_fiber_product, tensor_algebra, trivial_extension};
use semifiber::homology::{minimal_free_resolution, total_degree_bound};
use semifiber::lifting::{
    check_lifting, cor44_hypothesis_check, ext2_sufficiency, main_theorem_harness, mt_generates_check, periodic_candidate,
    poincare_factorization_test, regular_sequence_check, retraction_search, section_search, socle_case_decide,
    thm_minimal_generator_test, MorphismSearch,
};
use semifiber::{
    AlgebraMorphism, LiftingProblem, ModulePresentation, Poly, PolyRing, PresentedAlgebra, Scalar, SearchConfig,
    SearchResult, TriState,
};

use crate::manifest::{Manifest, ManifestError, Pos, RawText, TaskBlock};
use crate::report::{Options, TaskReport};
use crate::workspace::{parse_in, Workspace};

const DEFAULT_HDEG: u32 = 4;
const DEFAULT_BOUND: u32 = 8;
const DEFAULT_TDEG: u32 = 8;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum TaskError {
    /// Bad parameters, or a procedure precondition that does not hold.
    #[error("{pos}: {message}")]
    Input { pos: Pos, message: String },
    /// A certificate failed to replay or results contradict each other.
    #[error("{pos}: internal invariant failure: {message}")]
    Internal { pos: Pos, message: String },
}

impl From<ManifestError> for TaskError {
    fn from(e: ManifestError) -> Self {
        match e {
            ManifestError::Syntax { pos, message } | ManifestError::Semantic { pos, message } => {
                TaskError::Input { pos, message }
            }
        }
    }
}

type Res<T> = Result<T, TaskError>;

struct Ctx<'a, F> {
    m: &'a Manifest,
    ws: &'a Workspace<F>,
    task: &'a TaskBlock,
    opts: &'a Options,
    inputs: BTreeMap<String, String>,
}

fn labels(ps: &[Poly<impl Scalar>]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn join(ps: &[Poly<impl Scalar>]) -> String {
    labels(ps).join(", ")
}

fn row(v: &[usize]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(" ")
}

fn tri_summary(t: &TriState) -> Vec<String> {
    t.detail().map(|d| vec![d.to_string()]).unwrap_or_default()
}

impl<'a, F: Scalar> Ctx<'a, F> {
    fn pos(&self) -> Pos {
        self.task.procedure.pos
    }

    fn input<E: std::fmt::Display>(&self) -> impl Fn(E) -> TaskError + '_ {
        move |e| TaskError::Input { pos: self.pos(), message: e.to_string() }
    }

    fn internal(&self, message: impl Into<String>) -> TaskError {
        TaskError::Internal { pos: self.pos(), message: message.into() }
    }

    fn raw(&self, key: &str) -> Option<&'a RawText> {
        self.task.get(key)
    }

    fn record(&mut self, key: &str, value: impl Into<String>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    fn named_algebra(&mut self, key: &str) -> Arc<PresentedAlgebra<F>> {
        let name = match self.raw(key) {
            Some(v) => v.text.clone(),
            None => self.m.algebras[0].name.value.clone(),
        };
        self.record(key, name.clone());
        self.ws.algebra(&name).expect("validated").clone()
    }

    fn algebra(&mut self) -> Arc<PresentedAlgebra<F>> {
        self.named_algebra("algebra")
    }

    /// Task key, then command-line flag, then `default`.
    fn number(&mut self, key: &str, flag: Option<u32>, default: Option<u32>) -> Option<u32> {
        let v = self.raw(key).map(|r| r.text.parse().expect("validated")).or(flag).or(default);
        if let Some(v) = v {
            self.record(key, v.to_string());
        }
        v
    }

    fn hdeg(&mut self) -> usize {
        self.number("hdeg", self.opts.hdeg, Some(DEFAULT_HDEG)).unwrap() as usize
    }

    fn tdeg_or(&mut self, default: u32) -> u32 {
        self.number("tdeg", self.opts.tdeg, Some(default)).unwrap()
    }

    fn bound(&mut self) -> u32 {
        self.number("bound", self.opts.bound, Some(DEFAULT_BOUND)).unwrap()
    }

    fn poly(&mut self, a: &PresentedAlgebra<F>, key: &str) -> Res<Poly<F>> {
        let raw = self.raw(key).expect("required key");
        self.record(key, raw.text.clone());
        Ok(parse_in(a.ring(), raw)?)
    }

    fn polys_of(&self, ring: &Arc<PolyRing>, raw: &RawText) -> Res<Vec<Poly<F>>> {
        raw.split_list().iter().map(|t| parse_in(ring, t).map_err(TaskError::from)).collect()
    }

    fn polys(&mut self, a: &PresentedAlgebra<F>, key: &str) -> Res<Vec<Poly<F>>> {
        let raw = self.raw(key).expect("required key");
        self.record(key, raw.text.clone());
        self.polys_of(a.ring(), raw)
    }

    /// `module = k` (the default) or `module = cyclic(f, ...)`.
    fn module(&mut self, a: &Arc<PresentedAlgebra<F>>) -> Res<ModulePresentation<F>> {
        let Some(raw) = self.raw("module") else {
            self.record("module", "k");
            return Ok(ModulePresentation::residue_field(a));
        };
        self.record("module", raw.text.clone());
        if raw.text == "k" {
            return Ok(ModulePresentation::residue_field(a));
        }
        match raw.call_args("cyclic") {
            Some(args) => {
                let gens = args.iter().map(|t| parse_in(a.ring(), t)).collect::<Result<Vec<Poly<F>>, _>>()?;
                ModulePresentation::cyclic(a, &gens).map_err(self.input())
            }
            None => Err(TaskError::Input { pos: raw.pos(), message: format!("expected `k` or `cyclic(...)`, found `{}`", raw.text) }),
        }
    }

    /// `source = T` into `algebra`, sending variables to `images` or to the
    /// variables of the same name.
    fn morphism(&mut self) -> Res<AlgebraMorphism<F>> {
        let target = self.algebra();
        let source = self.named_algebra("source");
        let f = match self.raw("images") {
            Some(raw) => {
                self.record("images", raw.text.clone());
                let images = self.polys_of(target.ring(), raw)?;
                AlgebraMorphism::new(&source, &target, images).map_err(self.input())?
            }
            None => AlgebraMorphism::by_names(&source, &target).map_err(self.input())?,
        };
        f.verify().map_err(self.input())
    }

    fn report(self, verdict: &str, certificate: Value, certified_bounds: Value, result: Value, summary: Vec<String>) -> TaskReport {
        TaskReport {
            procedure: self.task.procedure.value.clone(),
            inputs: self.inputs,
            verdict: verdict.to_string(),
            certificate,
            certified_bounds,
            result,
            summary,
        }
    }
}

/// Certified internal degree `s + n·D` for resolving `m` to length `n`.
fn certified_degree<F: Scalar>(m: &ModulePresentation<F>, n: usize) -> u32 {
    let (s, d) = total_degree_bound(m);
    s + n as u32 * d
}

fn search_outcome<F: Scalar>(
    ctx: &Ctx<'_, F>,
    found: &MorphismSearch<F>,
) -> Res<(Value, Value, Vec<String>)> {
    Ok(match found {
        SearchResult::Found(m) => {
            let images = labels(m.images());
            let summary = m
                .source()
                .names()
                .iter()
                .zip(&images)
                .map(|(n, i)| format!("{n} -> {i}"))
                .collect();
            (Value::Null, json!({ "images": images }), summary)
        }
        SearchResult::NoneExists(cert) => {
            if !cert.replay() {
                return Err(ctx.internal("the infeasibility certificate does not replay"));
            }
            let mut c = cert.to_json();
            c["replayed"] = json!(true);
            let summary = vec![format!(
                "no solution in degrees <= {}: {} unknowns, {} equations, certificate replayed",
                cert.system.degree,
                cert.system.coefficients.len(),
                cert.system.equations.len()
            )];
            (c, Value::Null, summary)
        }
        SearchResult::Unknown { reason, bound } => {
            (Value::Null, json!({ "reason": reason, "bound": bound }), vec![format!("{reason} (bound {bound})")])
        }
    })
}

fn to_json<T: serde::Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("report types serialize")
}

fn betti<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let m = ctx.module(&a)?;
    let n = ctx.hdeg();
    let d = ctx.tdeg_or(certified_degree(&m, n));
    let res = minimal_free_resolution(&m, n, d).map_err(ctx.input())?;
    if res.complex.clone().verify().is_err() {
        return Err(ctx.internal("the computed resolution is not a complex"));
    }
    let table = &res.betti;
    let totals = table.totals();
    let mut summary = vec![format!("totals: {}", row(&totals))];
    summary.extend(table.render().lines().map(|l| l.to_string()));
    let bounds = json!({
        "hdeg": table.certified_i(),
        "tdeg": table.certified_j(),
        "totals_through": table.totals_certified_i(),
    });
    let result = json!({ "table": table.to_json(), "totals": totals });
    Ok(ctx.report("Completed", Value::Null, bounds, result, summary))
}

fn hilbert<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let d = ctx.tdeg_or(DEFAULT_TDEG);
    let h = a.hilbert(d);
    let summary = vec![format!("hilbert: {}", row(&h))];
    Ok(ctx.report("Completed", Value::Null, json!({ "tdeg": d }), json!({ "hilbert": h }), summary))
}

fn poincare<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let ideal = ctx.polys(&a, "ideal")?;
    let n = ctx.hdeg();
    let d = ctx.number("tdeg", ctx.opts.tdeg, None);
    let module = match ctx.raw("module") {
        Some(_) => {
            let r_bar = a.quotient(&ideal).map_err(ctx.input())?;
            Some(ctx.module(&r_bar)?)
        }
        None => {
            ctx.record("module", "k");
            None
        }
    };
    let rep = poincare_factorization_test(&a, &ideal, module.as_ref(), n, d).map_err(ctx.input())?;
    let summary = vec![
        format!("P^R_M: {}", row(&rep.over_r)),
        format!("P^Rbar_M: {}", row(&rep.over_r_bar)),
        format!("P^R_Rbar: {}", row(&rep.quotient_over_r)),
        format!("product: {}", row(&rep.product)),
        format!("nu(m_R) = {}, nu(m_Rbar) = {}, nu(I) = {}", rep.nu.nu_m_r, rep.nu.nu_m_r_bar, rep.nu.nu_i),
    ];
    let bounds = json!({ "hdeg": rep.n, "tdeg": rep.degree });
    let mut summary = summary;
    summary.extend(tri_summary(&rep.verdict));
    Ok(ctx.report(rep.verdict.label(), Value::Null, bounds, to_json(&rep), summary))
}

fn thm_test<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let ideal = ctx.polys(&a, "ideal")?;
    let v = thm_minimal_generator_test(&a, &ideal).map_err(ctx.input())?;
    let mg = minimal_generators(&a, &ideal).map_err(ctx.input())?;
    let result = json!({ "minimal_generators": labels(&mg.generators), "detail": v.detail() });
    Ok(ctx.report(v.label(), Value::Null, Value::Null, result, tri_summary(&v)))
}

fn ext2<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let ideal = match ctx.raw("ideal") {
        Some(_) => ctx.polys(&a, "ideal")?,
        None => Vec::new(),
    };
    let d = ctx.number("tdeg", ctx.opts.tdeg, None);
    let r_bar = a.quotient(&ideal).map_err(ctx.input())?;
    let v = ext2_sufficiency(&r_bar, d).map_err(ctx.input())?;
    let result = json!({ "algebra": r_bar.to_string(), "detail": v.detail() });
    Ok(ctx.report(v.label(), Value::Null, Value::Null, result, tri_summary(&v)))
}

fn regular<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let elems = ctx.polys(&a, "elements")?;
    let v = regular_sequence_check(&a, &elems).map_err(ctx.input())?;
    let result = json!({ "detail": v.detail() });
    Ok(ctx.report(v.label(), Value::Null, Value::Null, result, tri_summary(&v)))
}

fn cor44<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let x = ctx.poly(&a, "element")?;
    let n = ctx.number("n", None, None).expect("required key");
    let rep = cor44_hypothesis_check(&a, &x, n).map_err(ctx.input())?;
    let mut summary = vec![
        format!("(0 : x) = ({})", rep.annihilator_x.join(", ")),
        format!("(0 : x^{n}) = ({})", rep.annihilator_xn.join(", ")),
    ];
    summary.extend(tri_summary(&rep.verdict));
    Ok(ctx.report(rep.verdict.label(), Value::Null, Value::Null, to_json(&rep), summary))
}

fn check_lift<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let ideal = ctx.polys(&a, "ideal")?;
    let n = ctx.hdeg();
    let raw = ctx.raw("candidate").expect("required key");
    ctx.record("candidate", raw.text.clone());
    let Some(args) = raw.call_args("periodic") else {
        return Err(TaskError::Input { pos: raw.pos(), message: format!("expected `periodic(...)`, found `{}`", raw.text) });
    };
    if args.is_empty() {
        return Err(TaskError::Input { pos: raw.pos(), message: "`periodic` needs at least one entry".into() });
    }
    let entries = args.iter().map(|t| parse_in(a.ring(), t)).collect::<Result<Vec<Poly<F>>, _>>()?;
    let length = ctx.number("length", None, Some(n as u32 + 1)).unwrap() as usize;
    let r_bar = a.quotient(&ideal).map_err(ctx.input())?;
    let d = ctx.tdeg_or(certified_degree(&ModulePresentation::residue_field(&r_bar), n));
    let candidate = periodic_candidate(&a, &entries, length).map_err(ctx.input())?;
    let problem = LiftingProblem::new(&a, &ideal, n, d).map_err(ctx.input())?.with_candidate(candidate);
    let rep = check_lifting(&problem).map_err(ctx.input())?;
    let mut summary = vec![
        format!("candidate ranks: {}", row(&rep.candidate_ranks)),
        format!("resolution ranks: {}", row(&rep.expected_ranks)),
    ];
    if let semifiber::LiftingVerdict::Rejected(s) | semifiber::LiftingVerdict::Unknown(s) = &rep.verdict {
        summary.push(s.clone());
    }
    let bounds = json!({ "hdeg": rep.checked_range, "tdeg": rep.degree });
    Ok(ctx.report(rep.verdict.label(), Value::Null, bounds, to_json(&rep), summary))
}

fn socle<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let ideal = ctx.polys(&a, "ideal")?;
    let d = ctx.bound();
    let dec = socle_case_decide(&a, &ideal, d, &SearchConfig::default()).map_err(ctx.input())?;
    let verdict = match &dec.verdict {
        TriState::Proved => "Liftable",
        TriState::Refuted(_) => "NotLiftable",
        TriState::Unknown(_) => "Unknown",
    };
    let mut summary = tri_summary(&dec.verdict);
    if let Some(s) = &dec.section {
        let names = dec.r_bar.names();
        summary.extend(names.iter().zip(s.images()).map(|(n, i)| format!("section: {n} -> {i}")));
    }
    if let Some(c) = &dec.decomposition {
        summary.push(format!("decomposition through degree {}: {}", c.checked_degree, c.verdict.label()));
    }
    let result = json!({
        "detail": dec.verdict.detail(),
        "quotient": dec.r_bar.to_string(),
        "section_images": dec.section_images,
        "trivial_extension_matches": dec.trivial_extension_matches,
    });
    let certificate = dec.decomposition.as_ref().map_or(Value::Null, to_json);
    Ok(ctx.report(verdict, certificate, json!({ "bound": d }), result, summary))
}

fn section<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let ideal = ctx.polys(&a, "ideal")?;
    let d = ctx.bound();
    let r_bar = a.quotient(&ideal).map_err(ctx.input())?;
    let pi = AlgebraMorphism::new(&a, &r_bar, r_bar.vars()).map_err(ctx.input())?.verify().map_err(ctx.input())?;
    let found = section_search(&pi, d, &SearchConfig::default()).map_err(ctx.input())?;
    let (cert, result, summary) = search_outcome(&ctx, &found)?;
    Ok(ctx.report(found.label(), cert, json!({ "bound": d }), result, summary))
}

fn retraction<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let incl = match ctx.raw("sub") {
        Some(raw) => {
            let r = ctx.algebra();
            ctx.record("sub", raw.text.clone());
            let mut names = Vec::new();
            let mut weights = Vec::new();
            for t in raw.split_list() {
                let Some(i) = r.ring().var_index(&t.text) else {
                    return Err(TaskError::Input { pos: t.pos(), message: format!("`{}` is not a variable", t.text) });
                };
                names.push(t.text.clone());
                weights.push(r.weights()[i]);
            }
            let ring = PolyRing::new(names, weights).map_err(ctx.input())?;
            let t = PresentedAlgebra::new(&ring, Vec::new(), None).map_err(ctx.input())?;
            AlgebraMorphism::by_names(&t, &r).map_err(ctx.input())?.verify().map_err(ctx.input())?
        }
        None => ctx.morphism()?,
    };
    let d = ctx.bound();
    let found = retraction_search(&incl, d, &SearchConfig::default()).map_err(ctx.input())?;
    let (cert, result, summary) = search_outcome(&ctx, &found)?;
    Ok(ctx.report(found.label(), cert, json!({ "bound": d }), result, summary))
}

fn flatness<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let f = ctx.morphism()?;
    let n = ctx.hdeg();
    let d = ctx.tdeg_or(certified_degree(&ModulePresentation::residue_field(f.source()), n));
    let cert = flatness_certificate(&f, n, d).map_err(ctx.input())?;
    let bounds = json!({ "hdeg": cert.range, "tdeg": cert.degree });
    let summary = tri_summary(&cert.verdict);
    Ok(ctx.report(cert.verdict.label(), to_json(&cert), bounds, Value::Null, summary))
}

fn mt_generates<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let f = ctx.morphism()?;
    let v = mt_generates_check(&f).map_err(ctx.input())?;
    Ok(ctx.report(v.label(), Value::Null, Value::Null, json!({ "detail": v.detail() }), tri_summary(&v)))
}

fn harness<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let f = ctx.morphism()?;
    let n = ctx.hdeg();
    let d = ctx.bound();
    let rep = main_theorem_harness(&f, d, n, &SearchConfig::default()).map_err(ctx.input())?;
    if !rep.consistent {
        return Err(ctx.internal(format!(
            "definitive verdicts disagree: (i) {}, (ii) {}, (iii) {}",
            rep.liftable, rep.retraction, rep.decomposition
        )));
    }
    let summary = vec![
        format!("flatness: {}", rep.flatness),
        format!("(i) k liftable: {}", rep.liftable),
        format!("(ii) retraction: {}", rep.retraction),
        format!("(iii) decomposition: {}", rep.decomposition),
    ];
    let certificate = rep.decomposition_certificate.as_ref().map_or(Value::Null, to_json);
    Ok(ctx.report(rep.conclusion.label(), certificate, json!({ "hdeg": n, "bound": d }), to_json(&rep), summary))
}

fn semifiber_task<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let raw = ctx.raw("action").expect("required key");
    ctx.record("action", raw.text.clone());
    let table = ctx.ws.action(&raw.text).expect("validated").clone();
    let d = ctx.bound();
    let table = table.validate(d).map_err(ctx.input())?;
    let p = semi_fiber_product(&table).map_err(ctx.input())?;
    let h = p.algebra.hilbert(d);
    let summary = vec![
        format!("presentation: {}", p.algebra),
        format!("hilbert: {}", row(&h)),
        format!("decomposition through degree {}: {}", p.certificate.checked_degree, p.certificate.verdict.label()),
    ];
    let result = json!({
        "presentation": p.algebra.to_string(),
        "relations": labels(p.algebra.relations()),
        "hilbert": h,
        "renames": p.renames,
    });
    Ok(ctx.report(p.certificate.verdict.label(), to_json(&p.certificate), json!({ "bound": d }), result, summary))
}

fn binary<F: Scalar>(mut ctx: Ctx<'_, F>, fiber: bool) -> Res<TaskReport> {
    let left = ctx.named_algebra("left");
    let right = ctx.named_algebra("right");
    let d = ctx.tdeg_or(DEFAULT_TDEG);
    let c = if fiber { fiber_product(&left, &right) } else { tensor_algebra(&left, &right) }.map_err(ctx.input())?;
    let h = c.algebra.hilbert(d);
    let mut summary = vec![format!("presentation: {}", c.algebra), format!("hilbert: {}", row(&h))];
    let mut certificate = Value::Null;
    if fiber {
        let cert = c.decomposition(d);
        summary.push(format!("decomposition through degree {d}: {}", cert.verdict.label()));
        certificate = to_json(&cert);
    }
    let result = json!({
        "presentation": c.algebra.to_string(),
        "relations": labels(c.algebra.relations()),
        "hilbert": h,
        "renames": c.renames,
    });
    Ok(ctx.report("Completed", certificate, json!({ "tdeg": d }), result, summary))
}

fn trivial_ext<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let m = ctx.module(&a)?;
    let d = ctx.tdeg_or(DEFAULT_TDEG);
    let te = trivial_extension(&m).map_err(ctx.input())?;
    let h = te.algebra.hilbert(d);
    let summary = vec![format!("presentation: {}", te.algebra), format!("hilbert: {}", row(&h))];
    let result = json!({
        "presentation": te.algebra.to_string(),
        "relations": labels(te.algebra.relations()),
        "module_generators": labels(&te.module_generators()),
        "hilbert": h,
        "renames": te.renames,
    });
    Ok(ctx.report("Completed", Value::Null, json!({ "tdeg": d }), result, summary))
}

fn psi<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let f = ctx.morphism()?;
    let d = ctx.bound();
    let iso = psi_isomorphism(&f, d).map_err(ctx.input())?;
    let summary = vec![
        format!("semi-fiber product: {}", iso.semi_fiber.algebra),
        format!("fiber product: {}", iso.fiber.algebra),
        format!("psi: {}", join(iso.forward.images())),
        format!("inverse: {}", join(iso.inverse.images())),
    ];
    let result = json!({
        "semi_fiber": iso.semi_fiber.algebra.to_string(),
        "fiber": iso.fiber.algebra.to_string(),
        "forward": labels(iso.forward.images()),
        "inverse": labels(iso.inverse.images()),
    });
    Ok(ctx.report("Proved", Value::Null, json!({ "bound": iso.checked_degree }), result, summary))
}

fn decompose<F: Scalar>(mut ctx: Ctx<'_, F>) -> Res<TaskReport> {
    let a = ctx.algebra();
    let p = ctx.poly(&a, "element")?;
    let (scalar, m_part) = a.element(&p).decompose();
    let summary = vec![format!("{} = {} + ({})", a.normal_form(&p), scalar, m_part)];
    let result = json!({
        "normal_form": a.normal_form(&p).to_string(),
        "scalar": scalar.to_string(),
        "maximal_ideal_part": m_part.to_string(),
    });
    Ok(ctx.report("Completed", Value::Null, Value::Null, result, summary))
}

/// Runs one task. The manifest must be validated and `ws` built from it.
pub fn run_task<F: Scalar>(m: &Manifest, ws: &Workspace<F>, task: &TaskBlock, opts: &Options) -> Result<TaskReport, TaskError> {
    let ctx = Ctx { m, ws, task, opts, inputs: BTreeMap::new() };
    match task.procedure.value.as_str() {
        "betti" => betti(ctx),
        "hilbert" => hilbert(ctx),
        "poincare" => poincare(ctx),
        "thm_test" => thm_test(ctx),
        "ext2" => ext2(ctx),
        "regular" => regular(ctx),
        "cor44" => cor44(ctx),
        "check_lift" => check_lift(ctx),
        "socle" => socle(ctx),
        "section" => section(ctx),
        "retraction" => retraction(ctx),
        "flatness" => flatness(ctx),
        "mt_generates" => mt_generates(ctx),
        "harness" => harness(ctx),
        "semifiber" => semifiber_task(ctx),
        "fiber_product" => binary(ctx, true),
        "tensor" => binary(ctx, false),
        "trivial_extension" => trivial_ext(ctx),
        "psi" => psi(ctx),
        "decompose" => decompose(ctx),
        other => Err(TaskError::Input { pos: task.procedure.pos, message: format!("unknown procedure `{other}`") }),
    }
}
