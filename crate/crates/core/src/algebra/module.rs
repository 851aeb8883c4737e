use std::sync::Arc;

use super::{AlgebraError, PresentedAlgebra};
use crate::linalg::Echelon;
use crate::poly::{Poly, PolyError};
use crate::scalar::Scalar;

/// A graded module given as the cokernel of a matrix: generators with degree
/// shifts, and relations as columns (one entry per generator).
#[derive(Clone, Debug)]
pub struct ModulePresentation<F> {
    algebra: Arc<PresentedAlgebra<F>>,
    shifts: Vec<u32>,
    relations: Vec<Vec<Poly<F>>>,
}

impl<F: Scalar> ModulePresentation<F> {
    pub fn new(
        algebra: &Arc<PresentedAlgebra<F>>,
        shifts: Vec<u32>,
        relations: Vec<Vec<Poly<F>>>,
    ) -> Result<Self, AlgebraError> {
        for col in &relations {
            if col.len() != shifts.len() {
                return Err(PolyError::WeightCount { vars: shifts.len(), weights: col.len() }.into());
            }
            if column_degree(&shifts, col).is_err() {
                let shown: Vec<String> = col.iter().map(|p| p.to_string()).collect();
                return Err(AlgebraError::NonHomogeneous(format!("[{}]", shown.join(", "))));
            }
        }
        let relations = relations
            .into_iter()
            .map(|c| c.iter().map(|p| algebra.normal_form(p)).collect::<Vec<_>>())
            .filter(|c| c.iter().any(|p| !p.is_zero()))
            .collect();
        Ok(ModulePresentation { algebra: algebra.clone(), shifts, relations })
    }

    /// `k = R / m`.
    pub fn residue_field(algebra: &Arc<PresentedAlgebra<F>>) -> Self {
        Self::cyclic(algebra, &algebra.vars()).expect("variables are homogeneous")
    }

    /// `R / (gens)`.
    pub fn cyclic(algebra: &Arc<PresentedAlgebra<F>>, gens: &[Poly<F>]) -> Result<Self, AlgebraError> {
        Self::new(algebra, vec![0], gens.iter().map(|g| vec![g.clone()]).collect())
    }

    pub fn free(algebra: &Arc<PresentedAlgebra<F>>, shifts: Vec<u32>) -> Self {
        ModulePresentation { algebra: algebra.clone(), shifts, relations: Vec::new() }
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.algebra
    }

    pub fn shifts(&self) -> &[u32] {
        &self.shifts
    }

    pub fn relations(&self) -> &[Vec<Poly<F>>] {
        &self.relations
    }

    pub fn num_generators(&self) -> usize {
        self.shifts.len()
    }

    /// Internal degree of each relation column.
    pub fn relation_degrees(&self) -> Vec<u32> {
        self.relations.iter().map(|c| column_degree(&self.shifts, c).unwrap().unwrap_or(0)).collect()
    }

    /// True when every relation entry lies in the maximal ideal, so the
    /// generators are minimal.
    pub fn is_minimally_generated(&self) -> bool {
        self.relations.iter().flatten().all(|p| p.constant_term().is_zero())
    }

    /// `dim M_e` for `e = 0..=d`.
    pub fn hilbert(&self, d: u32) -> Vec<usize> {
        let degs = self.relation_degrees();
        (0..=d)
            .map(|e| {
                let n = free_slice_dim(&self.algebra, &self.shifts, e);
                let mut span = Echelon::new(n);
                for v in submodule_span(&self.algebra, &self.shifts, &self.relations, &degs, e) {
                    span.insert(&v);
                }
                n - span.dim()
            })
            .collect()
    }
}

/// Degree of a homogeneous column (`None` for the zero column), or an error
/// if the entries disagree.
pub(crate) fn column_degree<F: Scalar>(shifts: &[u32], col: &[Poly<F>]) -> Result<Option<u32>, ()> {
    let mut deg = None;
    for (p, &s) in col.iter().zip(shifts) {
        if p.is_zero() {
            continue;
        }
        let d = p.homogeneous_degree().ok_or(())? + s;
        match deg {
            None => deg = Some(d),
            Some(x) if x != d => return Err(()),
            _ => {}
        }
    }
    Ok(deg)
}

/// `dim (⊕ A(-s))_e`.
pub fn free_slice_dim<F: Scalar>(a: &PresentedAlgebra<F>, shifts: &[u32], e: u32) -> usize {
    shifts.iter().filter(|&&s| s <= e).map(|&s| a.dim(e - s)).sum()
}

/// Coordinates of the degree-`e` part of a vector in `⊕ A(-s)`.
pub fn free_coords<F: Scalar>(a: &PresentedAlgebra<F>, shifts: &[u32], v: &[Poly<F>], e: u32) -> Vec<F> {
    let mut out = Vec::with_capacity(free_slice_dim(a, shifts, e));
    for (p, &s) in v.iter().zip(shifts) {
        if s <= e {
            out.extend(a.coords(p, e - s));
        }
    }
    out
}

/// Inverse of [`free_coords`] for a homogeneous vector of degree `e`.
pub fn free_from_coords<F: Scalar>(a: &PresentedAlgebra<F>, shifts: &[u32], e: u32, coords: &[F]) -> Vec<Poly<F>> {
    let mut out = Vec::with_capacity(shifts.len());
    let mut pos = 0;
    for &s in shifts {
        if s <= e {
            let n = a.dim(e - s);
            out.push(a.from_coords(e - s, &coords[pos..pos + n]));
            pos += n;
        } else {
            out.push(Poly::zero(a.ring()));
        }
    }
    out
}

/// Spanning vectors of the degree-`e` piece of the submodule generated by
/// homogeneous `gens` of the given degrees.
pub fn submodule_span<F: Scalar>(
    a: &PresentedAlgebra<F>,
    shifts: &[u32],
    gens: &[Vec<Poly<F>>],
    degrees: &[u32],
    e: u32,
) -> Vec<Vec<F>> {
    let mut out = Vec::new();
    for (g, &d) in gens.iter().zip(degrees) {
        if d > e {
            continue;
        }
        for m in &a.basis(e - d).monomials {
            let mv: Vec<Poly<F>> = g.iter().map(|p| p.mul_term(m, &F::one())).collect();
            out.push(free_coords(a, shifts, &mv, e));
        }
    }
    out
}
