use serde::Serialize;

use super::LiftingError;
use crate::algebra::{AlgebraMorphism, PresentedAlgebra};
use crate::poly::{Ideal, Poly};
use crate::scalar::Scalar;
use crate::verdict::TriState;

/// Generators of `(J : f)` that are not already in `J`, as strings.
fn new_colon_elements<F: Scalar>(j: &Ideal<F>, f: &Poly<F>) -> Result<Vec<Poly<F>>, LiftingError> {
    let c = j.colon(f)?;
    Ok(c.groebner().iter().map(|g| j.normal_form(g)).filter(|g| !g.is_zero()).collect())
}

/// Checks that `elems` is a regular sequence by testing `(J_i : x_{i+1}) = J_i`
/// with `J_i = J + (x_1, ..., x_i)`. The colon ideals are computed exactly;
/// a degree truncation of `R`, which exists only to make the presentation
/// artinian, is ignored so that it does not turn every element into a zero
/// divisor.
pub fn regular_sequence_check<F: Scalar>(r: &PresentedAlgebra<F>, elems: &[Poly<F>]) -> Result<TriState, LiftingError> {
    let mut j = Ideal::new(r.ring(), r.relations().to_vec())?;
    for (i, x) in elems.iter().enumerate() {
        if !x.constant_term().is_zero() {
            return Err(LiftingError::NotInMaximalIdeal(x.to_string()));
        }
        if !x.is_homogeneous() {
            return Ok(TriState::Unknown(format!("{x} is not homogeneous")));
        }
        if j.contains(x) {
            return Ok(TriState::Refuted(format!("element {} ({x}) is zero modulo the previous ones", i + 1)));
        }
        if let Some(w) = new_colon_elements(&j, x)?.first() {
            let context = if i == 0 { String::new() } else { " modulo the previous elements".into() };
            return Ok(TriState::Refuted(format!("({w})*({x}) = 0{context}")));
        }
        j = j.with_generators(std::slice::from_ref(x));
    }
    Ok(TriState::Proved)
}

#[derive(Clone, Debug, Serialize)]
pub struct Cor44Report {
    pub verdict: TriState,
    /// Generators of `(0 : x)` and `(0 : x^n)` in `R`.
    pub annihilator_x: Vec<String>,
    pub annihilator_xn: Vec<String>,
}

/// Checks `(0 : x) = x^n R ≠ 0` and `(0 : x^n) = x R`, the exactness that
/// makes `R` flat over `k[x]/(x^{n+1})`.
pub fn cor44_hypothesis_check<F: Scalar>(r: &PresentedAlgebra<F>, x: &Poly<F>, n: u32) -> Result<Cor44Report, LiftingError> {
    if !r.in_maximal_ideal(x) {
        return Err(LiftingError::NotInMaximalIdeal(x.to_string()));
    }
    let j = r.ideal();
    let xn = x.pow(n);
    let ann_x = j.colon(x)?;
    let ann_xn = j.colon(&xn)?;
    let show = |i: &Ideal<F>| -> Vec<String> {
        i.groebner().iter().map(|g| j.normal_form(g)).filter(|g| !g.is_zero()).map(|g| g.to_string()).collect()
    };
    let mut report = Cor44Report { verdict: TriState::Proved, annihilator_x: show(&ann_x), annihilator_xn: show(&ann_xn) };
    let fmt = |v: &[String]| if v.is_empty() { "0".to_string() } else { format!("({})", v.join(", ")) };
    if j.contains(&xn) {
        report.verdict = TriState::Refuted(format!("x^{n} = 0 in R"));
    } else if ann_x != j.with_generators(std::slice::from_ref(&xn)) {
        report.verdict = TriState::Refuted(format!("(0 : {x}) = {} is not ({xn})", fmt(&report.annihilator_x)));
    } else if ann_xn != j.with_generators(std::slice::from_ref(x)) {
        report.verdict = TriState::Refuted(format!("(0 : {xn}) = {} is not ({x})", fmt(&report.annihilator_xn)));
    }
    Ok(report)
}

/// `m_T R = m_R`: every variable of `R` lies in the ideal generated by the
/// images of the variables of `T`.
pub fn mt_generates_check<F: Scalar>(phi: &AlgebraMorphism<F>) -> Result<TriState, LiftingError> {
    if !phi.is_verified() {
        return Err(crate::algebra::MorphismError::RelationViolation {
            relation: "unverified".into(),
            image: String::new(),
        }
        .into());
    }
    let r = phi.target();
    let ext = r.ideal().with_generators(phi.images());
    for (i, v) in r.vars().iter().enumerate() {
        if !ext.contains(v) {
            return Ok(TriState::Refuted(format!("{} is not in m_T R", r.names()[i])));
        }
    }
    Ok(TriState::Proved)
}
