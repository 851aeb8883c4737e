use std::collections::BTreeMap;
use std::sync::Arc;

use serde::Serialize;

use super::complex::{slice_matrix_of, ComplexError, FreeComplex, PolyMatrix};
use crate::algebra::{free_from_coords, free_slice_dim, submodule_span, AlgebraMorphism, ModulePresentation, PresentedAlgebra};
use crate::linalg::Echelon;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ResolutionError {
    #[error("presentation has a relation entry outside the maximal ideal; generators are not minimal")]
    NotMinimal,
    #[error("row totals are certified only up to homological degree {certified} at internal degree {d}; requested {requested}")]
    Uncertified { requested: usize, certified: i64, d: u32 },
    #[error(transparent)]
    Complex(#[from] ComplexError),
}

/// Graded Betti numbers `β_{i,j}` certified for `i ≤ certified_i`,
/// `j ≤ certified_j`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, u32), usize>,
    certified_i: usize,
    certified_j: u32,
    /// Largest `i` whose row total is exact (no generators beyond `certified_j`).
    totals_certified_i: Option<usize>,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: u32) -> usize {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> impl Iterator<Item = (usize, u32, usize)> + '_ {
        self.entries.iter().map(|(&(i, j), &b)| (i, j, b))
    }

    pub fn certified_i(&self) -> usize {
        self.certified_i
    }

    pub fn certified_j(&self) -> u32 {
        self.certified_j
    }

    pub fn totals_certified_i(&self) -> Option<usize> {
        self.totals_certified_i
    }

    /// `Σ_j β_{i,j}` over `j ≤ certified_j`.
    pub fn total(&self, i: usize) -> usize {
        self.entries.range((i, 0)..=(i, u32::MAX)).map(|(_, b)| b).sum()
    }

    pub fn totals(&self) -> Vec<usize> {
        (0..=self.certified_i).map(|i| self.total(i)).collect()
    }

    /// Poincaré polynomial up to `t^n`, if the row totals are certified there.
    pub fn poincare(&self, n: usize) -> Result<PoincarePoly, ResolutionError> {
        match self.totals_certified_i {
            Some(c) if c >= n => Ok(PoincarePoly { coefficients: (0..=n).map(|i| self.total(i)).collect() }),
            c => Err(ResolutionError::Uncertified {
                requested: n,
                certified: c.map_or(-1, |c| c as i64),
                d: self.certified_j,
            }),
        }
    }

    /// Rows `i: β_{i,0} β_{i,1} ...` as text.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for i in 0..=self.certified_i {
            let row: Vec<String> = (0..=self.certified_j).map(|j| self.get(i, j).to_string()).collect();
            out.push_str(&format!("{i}: {}\n", row.join(" ")));
        }
        out
    }

    pub fn to_json(&self) -> BettiJson {
        let poincare = match self.totals_certified_i {
            Some(c) => (0..=c.min(self.certified_i)).map(|i| self.total(i)).collect(),
            None => Vec::new(),
        };
        BettiJson {
            betti: self.entries().map(|(i, j, b)| [i as u64, j as u64, b as u64]).collect(),
            certified_i: self.certified_i,
            certified_j: self.certified_j,
            poincare,
        }
    }
}

/// Serialized shape of a Betti table.
#[derive(Clone, Debug, Serialize)]
pub struct BettiJson {
    pub betti: Vec<[u64; 3]>,
    pub certified_i: usize,
    pub certified_j: u32,
    pub poincare: Vec<usize>,
}

/// Truncated Poincaré series `Σ β_i t^i`, `i ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PoincarePoly {
    pub coefficients: Vec<usize>,
}

impl PoincarePoly {
    pub fn order(&self) -> usize {
        self.coefficients.len() - 1
    }

    /// Product truncated at `t^n` where `n` is the smaller order.
    pub fn convolve(&self, other: &PoincarePoly) -> PoincarePoly {
        let n = self.order().min(other.order());
        let coefficients = (0..=n)
            .map(|k| (0..=k).map(|i| self.coefficients[i] * other.coefficients[k - i]).sum())
            .collect();
        PoincarePoly { coefficients }
    }
}

/// A minimal graded free resolution computed through internal degree `d`.
/// The complex has `F_0..F_{n+1}`, so homology vanishes in `1..=n`.
#[derive(Clone, Debug)]
pub struct Resolution<F> {
    pub complex: FreeComplex<F>,
    pub betti: BettiTable,
}

/// Degree bound used to certify row totals: generators of `F_i` have
/// internal degree at most `s + i·D`, with `s` the top generator shift of the
/// module and `D` the largest of the variable weights, the Gröbner degrees
/// of the algebra, and the module relation degrees.
pub fn total_degree_bound<F: Scalar>(m: &ModulePresentation<F>) -> (u32, u32) {
    let a = m.algebra();
    let mut dd = a.max_weight().max(a.max_relation_degree());
    let s = m.shifts().iter().copied().max().unwrap_or(0);
    if m.num_generators() == 1 && m.shifts()[0] == 0 {
        let gens: Vec<Poly<F>> = m.relations().iter().map(|c| c[0].clone()).collect();
        let full = a.ideal().with_generators(&gens);
        dd = dd.max(full.groebner().iter().filter_map(|g| g.degree()).max().unwrap_or(0));
    } else {
        let lowest = m.shifts().iter().copied().min().unwrap_or(0);
        dd = dd.max(m.relation_degrees().into_iter().map(|x| x - lowest).max().unwrap_or(0));
    }
    (s, dd)
}

/// Minimal free resolution of `M` up to homological degree `n` (plus one
/// extra step so that `H_n` can be checked) and internal degree `d`.
pub fn minimal_free_resolution<F: Scalar>(
    m: &ModulePresentation<F>,
    n: usize,
    d: u32,
) -> Result<Resolution<F>, ResolutionError> {
    if !m.is_minimally_generated() {
        return Err(ResolutionError::NotMinimal);
    }
    let a = m.algebra();
    let mut shifts: Vec<Vec<u32>> = vec![m.shifts().to_vec()];
    shifts.extend(std::iter::repeat_with(Vec::new).take(n + 1));
    let mut cols: Vec<Vec<Vec<Poly<F>>>> = vec![Vec::new(); n + 1];
    let rel_degs = m.relation_degrees();
    for e in 0..=d {
        for i in 0..=n {
            // F_i may have gained generators since these columns were built
            for c in cols[i].iter_mut() {
                c.resize(shifts[i].len(), Poly::zero(a.ring()));
            }
            if i > 0 {
                let len = shifts[i - 1].len();
                for c in cols[i - 1].iter_mut() {
                    c.resize(len, Poly::zero(a.ring()));
                }
            }
            let candidates = if i == 0 {
                submodule_span(a, &shifts[0], m.relations(), &rel_degs, e)
            } else {
                slice_matrix_of(a, &shifts[i - 1], &shifts[i], &cols[i - 1], e).kernel()
            };
            if candidates.is_empty() {
                continue;
            }
            let mut span = Echelon::new(free_slice_dim(a, &shifts[i], e));
            for v in submodule_span(a, &shifts[i], &cols[i], &shifts[i + 1], e) {
                span.insert(&v);
            }
            for v in candidates {
                if span.insert(&v) {
                    cols[i].push(free_from_coords(a, &shifts[i], e, &v));
                    shifts[i + 1].push(e);
                }
            }
        }
    }
    for (i, c) in cols.iter_mut().enumerate() {
        for col in c.iter_mut() {
            col.resize(shifts[i].len(), Poly::zero(a.ring()));
        }
    }
    let diffs: Vec<PolyMatrix<F>> = cols
        .into_iter()
        .enumerate()
        .map(|(i, c)| PolyMatrix::from_columns(shifts[i].len(), c))
        .collect();
    let complex = FreeComplex::new(a, shifts, diffs)?.verify()?;
    let mut entries = BTreeMap::new();
    for i in 0..=n {
        for &j in complex.shifts(i) {
            *entries.entry((i, j)).or_insert(0) += 1;
        }
    }
    let (s, dd) = total_degree_bound(m);
    let totals_certified_i = (0..=n).rev().find(|&i| s + i as u32 * dd <= d);
    let betti = BettiTable { entries, certified_i: n, certified_j: d, totals_certified_i };
    Ok(Resolution { complex, betti })
}

/// Truncated Poincaré polynomial of `M`.
pub fn poincare_poly<F: Scalar>(m: &ModulePresentation<F>, n: usize, d: u32) -> Result<PoincarePoly, ResolutionError> {
    minimal_free_resolution(m, n, d)?.betti.poincare(n)
}

/// `dim Tor_i(M, k)_j` recomputed as the homology of `F ⊗ k`.
pub fn betti_by_tensoring<F: Scalar>(complex: &FreeComplex<F>, n: usize, d: u32) -> Result<BTreeMap<(usize, u32), usize>, ComplexError> {
    let a = complex.algebra();
    let k: Arc<PresentedAlgebra<F>> = PresentedAlgebra::field();
    let zeros = vec![Poly::zero(k.ring()); a.nvars()];
    let to_k = AlgebraMorphism::new(a, &k, zeros)?.verify()?;
    let reduced = complex.base_change(&to_k)?;
    let mut out = BTreeMap::new();
    for i in 0..=n.min(reduced.top()) {
        for (j, h) in reduced.homology_dims(i, d).into_iter().enumerate() {
            if h > 0 {
                out.insert((i, j as u32), h);
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn late_generators_in_truncated_algebra() {
        // F_2 gains generators in degree 5 after F_3 already has columns
        let r = A::parse(&[("x", 1), ("y", 1)], &["x^2 - y^2"], Some(4)).unwrap();
        let res = minimal_free_resolution(&ModulePresentation::residue_field(&r), 3, 6).unwrap();
        assert!(res.complex.is_verified());
        assert!(res.complex.shifts(2).contains(&5));
    }

    #[test]
    fn residue_field_of_dual_numbers() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let res = minimal_free_resolution(&ModulePresentation::residue_field(&r), 4, 6).unwrap();
        assert_eq!(res.betti.totals(), vec![1, 1, 1, 1, 1]);
        for i in 1..=4 {
            assert_eq!(res.complex.differential(i).get(0, 0), &r.var(0));
        }
    }

    #[test]
    fn residue_field_of_node() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let res = minimal_free_resolution(&ModulePresentation::residue_field(&r), 4, 8).unwrap();
        assert_eq!(res.betti.poincare(4).unwrap().coefficients, vec![1, 2, 2, 2, 2]);
        assert_eq!(res.betti.entries().filter(|&(i, j, _)| (j as usize) < i).count(), 0);
    }

    #[test]
    fn principal_nonzerodivisor() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let m = ModulePresentation::cyclic(&r, &[r.parse_element("x - y").unwrap()]).unwrap();
        let res = minimal_free_resolution(&m, 3, 8).unwrap();
        assert_eq!(res.betti.poincare(3).unwrap().coefficients, vec![1, 1, 0, 0]);
    }

    #[test]
    fn regular_ring_and_uncertified_totals() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let k = ModulePresentation::residue_field(&r);
        assert_eq!(poincare_poly(&k, 2, 4).unwrap().coefficients, vec![1, 1, 0]);
        assert!(matches!(poincare_poly(&k, 4, 2), Err(ResolutionError::Uncertified { .. })));
    }

    #[test]
    fn tensoring_with_k_recovers_betti() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let res = minimal_free_resolution(&ModulePresentation::residue_field(&r), 3, 6).unwrap();
        let direct: BTreeMap<_, _> = res.betti.entries().map(|(i, j, b)| ((i, j), b)).collect();
        assert_eq!(betti_by_tensoring(&res.complex, 3, 6).unwrap(), direct);
    }

    #[test]
    fn convolution() {
        let a = PoincarePoly { coefficients: vec![1, 1, 1, 1, 1] };
        let b = PoincarePoly { coefficients: vec![1, 1, 0, 0, 0] };
        assert_eq!(a.convolve(&b).coefficients, vec![1, 2, 2, 2, 2]);
    }
}
