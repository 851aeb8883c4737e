use std::sync::Arc;

use serde::Serialize;

use super::search::{section_search, SearchConfig};
use super::{thm_minimal_generator_test, LiftingError};
use crate::algebra::{is_independent_mod_m_squared, minimal_generators, AlgebraMorphism, ModulePresentation, PresentedAlgebra};
use crate::constructions::{decomposition_verify, trivial_extension, DecompositionCertificate};
use crate::poly::{Ideal, MonomialOrder, Poly, PolyRing};
use crate::scalar::Scalar;
use crate::verdict::TriState;

/// Outcome of the socle case `m_R · I = 0`, where liftability of `k`, the
/// existence of a section, and `R ≅ R̄ ⋉ I` are equivalent.
#[derive(Clone, Debug, Serialize)]
pub struct SocleDecision<F> {
    /// `Proved` means liftable.
    pub verdict: TriState,
    #[serde(skip)]
    pub r_bar: Arc<PresentedAlgebra<F>>,
    #[serde(skip)]
    pub section: Option<AlgebraMorphism<F>>,
    pub section_images: Vec<String>,
    /// `m_R = σ(m_R̄) ⊕ I`.
    pub decomposition: Option<DecompositionCertificate>,
    /// Hilbert functions of `R` and `R̄ ⋉ I` agree through the bound.
    pub trivial_extension_matches: Option<bool>,
}

/// Writes every variable of `R̄` in terms of a complement of the generators
/// of `I` in `m/m²`, using an elimination order on the other variables.
fn complement_section<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    r_bar: &Arc<PresentedAlgebra<F>>,
    gens: &[Poly<F>],
) -> Option<Vec<Poly<F>>> {
    let mut order: Vec<usize> = (0..r.nvars()).collect();
    order.sort_by_key(|&i| (r.weights()[i], i));
    let mut chosen: Vec<usize> = Vec::new();
    for i in order {
        let mut trial: Vec<Poly<F>> = gens.to_vec();
        trial.extend(chosen.iter().map(|&j| r.var(j)));
        trial.push(r.var(i));
        if is_independent_mod_m_squared(r, &trial).ok()? {
            chosen.push(i);
        }
    }
    let others: Vec<usize> = (0..r.nvars()).filter(|i| !chosen.contains(i)).collect();
    let perm: Vec<usize> = others.iter().chain(&chosen).copied().collect();
    let mut var_map = vec![0; r.nvars()];
    for (pos, &i) in perm.iter().enumerate() {
        var_map[i] = pos;
    }
    let names = perm.iter().map(|&i| r.names()[i].clone()).collect();
    let weights = perm.iter().map(|&i| r.weights()[i]).collect();
    let ring = PolyRing::with_order(names, weights, MonomialOrder::Eliminate { block: others.len() }).ok()?;
    let ideal = Ideal::new(&ring, r_bar.ideal().generators().iter().map(|g| g.rename_into(&ring, &var_map)).collect()).ok()?;
    let back: Vec<usize> = perm.clone();
    let mut images = Vec::with_capacity(r.nvars());
    for i in 0..r.nvars() {
        let nf = ideal.normal_form(&Poly::var(&ring, var_map[i]));
        if nf.support_vars().iter().any(|&v| v < others.len()) {
            return None;
        }
        images.push(r.normal_form(&nf.rename_into(r.ring(), &back)));
    }
    Some(images)
}

pub fn socle_case_decide<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    ideal: &[Poly<F>],
    d: u32,
    config: &SearchConfig,
) -> Result<SocleDecision<F>, LiftingError> {
    for g in ideal {
        for x in r.vars() {
            let v = r.normal_form(&(&x * g));
            if !v.is_zero() {
                return Err(LiftingError::SocleInapplicable(format!("m*I contains ({x})*({g}) = {v}, which is nonzero")));
            }
        }
    }
    let r_bar = r.quotient(ideal)?;
    let mut out = SocleDecision {
        verdict: thm_minimal_generator_test(r, ideal)?,
        r_bar: r_bar.clone(),
        section: None,
        section_images: Vec::new(),
        decomposition: None,
        trivial_extension_matches: None,
    };
    if out.verdict.is_refuted() {
        return Ok(out);
    }
    let pi = AlgebraMorphism::new(r, &r_bar, r_bar.vars())?.verify()?;
    let mg = minimal_generators(r, ideal)?;
    let from_complement = complement_section(r, &r_bar, &mg.generators).and_then(|images| {
        let s = AlgebraMorphism::new(&r_bar, r, images).ok()?.verify().ok()?;
        s.then(&pi).ok()?.is_identity().then_some(s)
    });
    let section = match from_complement {
        Some(s) => s,
        None => match section_search(&pi, d, config)? {
            crate::verdict::SearchResult::Found(s) => s,
            other => {
                out.verdict = TriState::Unknown(format!("no section was constructed ({})", other.label()));
                return Ok(out);
            }
        },
    };
    out.section_images = section.images().iter().map(|p| p.to_string()).collect();
    out.decomposition = Some(decomposition_verify(r, section.images(), &mg.generators, d));

    let shifts: Vec<u32> = mg.generators.iter().map(|g| g.homogeneous_degree().unwrap_or(1)).collect();
    let mut cols = Vec::new();
    for k in 0..shifts.len() {
        for x in r_bar.vars() {
            let mut col = vec![Poly::zero(r_bar.ring()); shifts.len()];
            col[k] = x;
            cols.push(col);
        }
    }
    let module = ModulePresentation::new(&r_bar, shifts, cols)?;
    let te = trivial_extension(&module).map_err(|e| LiftingError::SocleInapplicable(e.to_string()))?;
    out.trivial_extension_matches = Some(te.algebra.hilbert(d) == r.hilbert(d));

    let decomposed = out.decomposition.as_ref().is_some_and(|c| c.verdict.is_proved());
    out.verdict = if decomposed && out.trivial_extension_matches == Some(true) {
        TriState::Proved
    } else {
        TriState::Unknown("a section exists but the decomposition check did not pass".into())
    };
    out.section = Some(section);
    Ok(out)
}
