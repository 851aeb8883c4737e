use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::LiftingError;
use crate::algebra::{AlgebraMorphism, ModulePresentation, PresentedAlgebra};
use crate::homology::{minimal_free_resolution, ComplexError, FreeComplex, PolyMatrix, Resolution};
use crate::poly::Poly;
use crate::scalar::Scalar;

/// `R`, an ideal `I ⊆ m_R`, `R̄ = R/I`, the quotient map, and the minimal
/// resolution `F` of `k` over `R̄` computed to homological degree `n` and
/// internal degree `d`.
#[derive(Clone, Debug)]
pub struct LiftingProblem<F> {
    pub r: Arc<PresentedAlgebra<F>>,
    pub ideal: Vec<Poly<F>>,
    pub r_bar: Arc<PresentedAlgebra<F>>,
    pub pi: AlgebraMorphism<F>,
    pub resolution: Resolution<F>,
    pub candidate: Option<FreeComplex<F>>,
    pub n: usize,
    pub d: u32,
}

impl<F: Scalar> LiftingProblem<F> {
    pub fn new(r: &Arc<PresentedAlgebra<F>>, ideal: &[Poly<F>], n: usize, d: u32) -> Result<Self, LiftingError> {
        for g in ideal {
            if !r.in_maximal_ideal(g) {
                return Err(LiftingError::NotInMaximalIdeal(g.to_string()));
            }
        }
        let r_bar = r.quotient(ideal)?;
        let pi = AlgebraMorphism::new(r, &r_bar, r_bar.vars())?.verify()?;
        let resolution = minimal_free_resolution(&ModulePresentation::residue_field(&r_bar), n, d)?;
        Ok(LiftingProblem { r: r.clone(), ideal: ideal.to_vec(), r_bar, pi, resolution, candidate: None, n, d })
    }

    pub fn with_candidate(mut self, l: FreeComplex<F>) -> Self {
        self.candidate = Some(l);
        self
    }
}

/// A complex of rank-one free modules whose differentials cycle through
/// `entries`: `∂_i = entries[(i - 1) mod len]`, `i = 1..=length`.
pub fn periodic_candidate<F: Scalar>(
    r: &Arc<PresentedAlgebra<F>>,
    entries: &[Poly<F>],
    length: usize,
) -> Result<FreeComplex<F>, ComplexError> {
    let diffs = (0..length)
        .map(|i| PolyMatrix::from_rows(vec![vec![entries[i % entries.len()].clone()]]))
        .collect();
    FreeComplex::from_differentials(r, vec![0], diffs)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "verdict", content = "detail")]
pub enum LiftingVerdict {
    Verified,
    Rejected(String),
    Unknown(String),
}

impl LiftingVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            LiftingVerdict::Verified => "Verified",
            LiftingVerdict::Rejected(_) => "Rejected",
            LiftingVerdict::Unknown(_) => "Unknown",
        }
    }

    pub fn is_verified(&self) -> bool {
        matches!(self, LiftingVerdict::Verified)
    }
}

impl fmt::Display for LiftingVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LiftingVerdict::Verified => write!(f, "Verified"),
            LiftingVerdict::Rejected(s) => write!(f, "Rejected ({s})"),
            LiftingVerdict::Unknown(s) => write!(f, "Unknown ({s})"),
        }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct LiftingReport {
    pub verdict: LiftingVerdict,
    /// Homology of `L ⊗ R̄` was checked to vanish for `1 ≤ i ≤ checked_range`.
    pub checked_range: usize,
    pub degree: u32,
    pub candidate_ranks: Vec<usize>,
    pub expected_ranks: Vec<usize>,
}

/// Checks that `L ⊗_R R̄` is a minimal resolution of `k` over `R̄` with the
/// same graded ranks as `F`, in homological degrees `≤ n` and internal
/// degrees `≤ d`.
pub fn check_lifting<F: Scalar>(p: &LiftingProblem<F>) -> Result<LiftingReport, LiftingError> {
    let l = p.candidate.clone().ok_or(LiftingError::NoCandidate)?;
    if !l.algebra().same_as(&p.r) {
        return Err(LiftingError::CandidateMismatch);
    }
    let f = &p.resolution.complex;
    let expected_ranks: Vec<usize> = (0..=p.n).map(|i| f.shifts(i).len()).collect();
    let mut report = LiftingReport {
        verdict: LiftingVerdict::Verified,
        checked_range: 0,
        degree: p.d,
        candidate_ranks: l.ranks(),
        expected_ranks,
    };
    let l = match l.verify() {
        Ok(l) => l,
        Err(ComplexError::NonZeroComposite { i, row, col, value }) => {
            report.verdict = LiftingVerdict::Rejected(format!(
                "not a complex: entry ({row}, {col}) of d_{}d_{i} is {value}",
                i - 1
            ));
            return Ok(report);
        }
        Err(ComplexError::NotHomogeneous { i, row, col }) => {
            report.verdict = LiftingVerdict::Rejected(format!("differential d_{i} is not homogeneous at ({row}, {col})"));
            return Ok(report);
        }
        Err(e) => return Err(e.into()),
    };
    let lb = l.base_change(&p.pi)?;
    let top = lb.top();
    // When F stops at L's length, H_top(L ⊗ R̄) is a kernel and can be read
    // off; otherwise the last module of L only bounds the check.
    let finite = (top + 1..=p.n + 1).all(|i| i >= f.len() || f.shifts(i).is_empty());
    let range = if finite { p.n } else { p.n.min(top.saturating_sub(1)) };
    report.checked_range = range;

    for i in 0..=p.n {
        let mut want: Vec<u32> = f.shifts(i).to_vec();
        let mut have: Vec<u32> = if i <= top { lb.shifts(i).iter().copied().filter(|&s| s <= p.d).collect() } else { Vec::new() };
        want.sort_unstable();
        have.sort_unstable();
        if want != have {
            report.verdict = LiftingVerdict::Rejected(format!(
                "generator degrees of L_{i} ⊗ R̄ are {have:?}, the minimal resolution has {want:?}"
            ));
            return Ok(report);
        }
    }
    if !lb.is_minimal() {
        report.verdict = LiftingVerdict::Rejected("L ⊗ R̄ is not minimal".into());
        return Ok(report);
    }
    let h0 = lb.homology_dims(0, p.d);
    let k0 = f.homology_dims(0, p.d);
    if h0 != k0 {
        report.verdict = LiftingVerdict::Rejected(format!("H_0(L ⊗ R̄) has Hilbert function {h0:?}, expected {k0:?}"));
        return Ok(report);
    }
    for i in 1..=range.min(top) {
        let h = lb.homology_dims(i, p.d);
        if let Some(j) = h.iter().position(|&x| x > 0) {
            report.verdict = LiftingVerdict::Rejected(format!("H_{i}(L ⊗ R̄) is nonzero in internal degree {j}"));
            return Ok(report);
        }
    }
    if (0..=range.min(top)).any(|i| lb.shifts(i).iter().any(|&s| s > p.d)) {
        report.verdict = LiftingVerdict::Unknown(format!("L has generators beyond internal degree {}", p.d));
    } else if range < p.n {
        report.verdict = LiftingVerdict::Unknown(format!(
            "candidate has length {top}, so homology is checked only through {range} < {}",
            p.n
        ));
    }
    Ok(report)
}
