use std::fmt;
use std::sync::Arc;

use crate::algebra::module::{column_degree, free_coords, free_slice_dim};
use crate::algebra::{AlgebraMorphism, MorphismError, PresentedAlgebra};
use crate::linalg::Matrix;
use crate::poly::Poly;
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ComplexError {
    #[error("differential {i} has shape {found:?}, expected {expected:?}")]
    Shape { i: usize, expected: (usize, usize), found: (usize, usize) },
    #[error("entry ({row}, {col}) of differential {i} is not homogeneous of the degree its shifts require")]
    NotHomogeneous { i: usize, row: usize, col: usize },
    #[error("cannot infer the degree of column {col} of differential {i}")]
    UndeterminedShift { i: usize, col: usize },
    #[error("d{i_minus}∘d{i} is nonzero: entry ({row}, {col}) equals {value}", i_minus = i - 1)]
    NonZeroComposite { i: usize, row: usize, col: usize, value: String },
    #[error("complex and morphism live over different algebras")]
    AlgebraMismatch,
    #[error(transparent)]
    Morphism(#[from] MorphismError),
}

/// A matrix with polynomial entries; column `c` is the image of basis vector `c`.
#[derive(Clone, Debug)]
pub struct PolyMatrix<F> {
    rows: usize,
    cols: usize,
    entries: Vec<Poly<F>>,
}

impl<F: Scalar> PartialEq for PolyMatrix<F> {
    fn eq(&self, other: &Self) -> bool {
        self.rows == other.rows && self.cols == other.cols && self.entries == other.entries
    }
}

impl<F: Scalar> PolyMatrix<F> {
    pub fn from_columns(rows: usize, columns: Vec<Vec<Poly<F>>>) -> Self {
        let cols = columns.len();
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in &columns {
                entries.push(c[r].clone());
            }
        }
        PolyMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Poly<F>>>) -> Self {
        let n = rows.len();
        let cols = rows.first().map_or(0, |r| r.len());
        PolyMatrix { rows: n, cols, entries: rows.into_iter().flatten().collect() }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly<F> {
        &self.entries[r * self.cols + c]
    }

    pub fn column(&self, c: usize) -> Vec<Poly<F>> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &Poly<F>> {
        self.entries.iter()
    }

    pub fn map(&self, f: impl Fn(&Poly<F>) -> Poly<F>) -> Self {
        PolyMatrix { rows: self.rows, cols: self.cols, entries: self.entries.iter().map(f).collect() }
    }
}

impl<F: Scalar> fmt::Display for PolyMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = (0..self.rows)
            .map(|r| {
                let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
                format!("[{}]", row.join(", "))
            })
            .collect();
        write!(f, "[{}]", rows.join(", "))
    }
}

/// `F_n → ... → F_1 → F_0` of graded free modules over a presented algebra.
/// `differentials[i - 1]` is `∂_i : F_i → F_{i-1}`.
#[derive(Clone, Debug)]
pub struct FreeComplex<F> {
    algebra: Arc<PresentedAlgebra<F>>,
    shifts: Vec<Vec<u32>>,
    differentials: Vec<PolyMatrix<F>>,
    verified: bool,
    minimal: bool,
}

impl<F: Scalar> FreeComplex<F> {
    /// Entries are reduced in the algebra. Shapes are checked; call
    /// [`verify`](Self::verify) for the remaining invariants.
    pub fn new(
        algebra: &Arc<PresentedAlgebra<F>>,
        shifts: Vec<Vec<u32>>,
        differentials: Vec<PolyMatrix<F>>,
    ) -> Result<Self, ComplexError> {
        assert!(!shifts.is_empty(), "a complex has at least F_0");
        if differentials.len() + 1 != shifts.len() {
            let i = differentials.len() + 1;
            return Err(ComplexError::Shape { i, expected: (shifts.len() - 1, 0), found: (differentials.len(), 0) });
        }
        for (k, d) in differentials.iter().enumerate() {
            let i = k + 1;
            let expected = (shifts[i - 1].len(), shifts[i].len());
            if (d.rows, d.cols) != expected {
                return Err(ComplexError::Shape { i, expected, found: (d.rows, d.cols) });
            }
        }
        let differentials = differentials.iter().map(|d| d.map(|p| algebra.normal_form(p))).collect();
        Ok(FreeComplex { algebra: algebra.clone(), shifts, differentials, verified: false, minimal: false })
    }

    /// Infers shifts from the entries, given the shifts of `F_0`.
    pub fn from_differentials(
        algebra: &Arc<PresentedAlgebra<F>>,
        shift0: Vec<u32>,
        differentials: Vec<PolyMatrix<F>>,
    ) -> Result<Self, ComplexError> {
        let mut shifts = vec![shift0];
        for (k, d) in differentials.iter().enumerate() {
            let i = k + 1;
            let prev = &shifts[i - 1];
            if d.rows != prev.len() {
                return Err(ComplexError::Shape { i, expected: (prev.len(), d.cols), found: (d.rows, d.cols) });
            }
            let mut cur = Vec::with_capacity(d.cols);
            for c in 0..d.cols {
                let col: Vec<Poly<F>> = d.column(c).iter().map(|p| algebra.normal_form(p)).collect();
                match column_degree(prev, &col) {
                    Ok(Some(s)) => cur.push(s),
                    Ok(None) => return Err(ComplexError::UndeterminedShift { i, col: c }),
                    Err(()) => return Err(ComplexError::NotHomogeneous { i, row: 0, col: c }),
                }
            }
            shifts.push(cur);
        }
        Self::new(algebra, shifts, differentials)
    }

    pub fn algebra(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.algebra
    }

    /// Number of modules `F_0..F_n`, i.e. `n + 1`.
    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Top homological degree `n`.
    pub fn top(&self) -> usize {
        self.shifts.len() - 1
    }

    pub fn ranks(&self) -> Vec<usize> {
        self.shifts.iter().map(|s| s.len()).collect()
    }

    pub fn shifts(&self, i: usize) -> &[u32] {
        &self.shifts[i]
    }

    pub fn all_shifts(&self) -> &[Vec<u32>] {
        &self.shifts
    }

    /// `∂_i` for `1 ≤ i ≤ n`.
    pub fn differential(&self, i: usize) -> &PolyMatrix<F> {
        &self.differentials[i - 1]
    }

    pub fn differentials(&self) -> &[PolyMatrix<F>] {
        &self.differentials
    }

    pub fn is_verified(&self) -> bool {
        self.verified
    }

    pub fn is_minimal(&self) -> bool {
        self.minimal
    }

    /// Checks homogeneity and `∂_{i-1} ∘ ∂_i = 0`; records minimality
    /// (all entries in the maximal ideal).
    pub fn verify(mut self) -> Result<Self, ComplexError> {
        for i in 1..=self.top() {
            let d = self.differential(i);
            for r in 0..d.rows {
                for c in 0..d.cols {
                    let p = d.get(r, c);
                    if p.is_zero() {
                        continue;
                    }
                    let (sc, sr) = (self.shifts[i][c], self.shifts[i - 1][r]);
                    if sc < sr || p.homogeneous_degree() != Some(sc - sr) {
                        return Err(ComplexError::NotHomogeneous { i, row: r, col: c });
                    }
                }
            }
        }
        for i in 2..=self.top() {
            let (a, b) = (self.differential(i - 1), self.differential(i));
            for r in 0..a.rows {
                for c in 0..b.cols {
                    let mut acc = Poly::zero(self.algebra.ring());
                    for k in 0..a.cols {
                        acc = &acc + &(a.get(r, k) * b.get(k, c));
                    }
                    let v = self.algebra.normal_form(&acc);
                    if !v.is_zero() {
                        return Err(ComplexError::NonZeroComposite { i, row: r, col: c, value: v.to_string() });
                    }
                }
            }
        }
        self.minimal = self.differentials.iter().all(|d| d.entries().all(|p| p.constant_term().is_zero()));
        self.verified = true;
        Ok(self)
    }

    /// `dim (F_i)_e`.
    pub fn slice_dim(&self, i: usize, e: u32) -> usize {
        free_slice_dim(&self.algebra, &self.shifts[i], e)
    }

    /// Matrix of `∂_i` restricted to internal degree `e`.
    pub fn slice_matrix(&self, i: usize, e: u32) -> Matrix<F> {
        let d = self.differential(i);
        let cols: Vec<Vec<Poly<F>>> = (0..d.cols).map(|c| d.column(c)).collect();
        slice_matrix_of(&self.algebra, &self.shifts[i - 1], &self.shifts[i], &cols, e)
    }

    /// `dim H_i` in each internal degree `0..=d`.
    pub fn homology_dims(&self, i: usize, d: u32) -> Vec<usize> {
        (0..=d)
            .map(|e| {
                let total = self.slice_dim(i, e);
                let kernel = if i == 0 { total } else { total - self.slice_matrix(i, e).rank() };
                let image = if i < self.top() { self.slice_matrix(i + 1, e).rank() } else { 0 };
                kernel - image
            })
            .collect()
    }

    /// Entrywise image along a graded morphism out of this complex's algebra.
    pub fn base_change(&self, q: &AlgebraMorphism<F>) -> Result<FreeComplex<F>, ComplexError> {
        if !q.source().same_as(&self.algebra) {
            return Err(ComplexError::AlgebraMismatch);
        }
        q.require_graded()?;
        let diffs = self.differentials.iter().map(|d| d.map(|p| q.apply(p))).collect();
        let out = FreeComplex::new(q.target(), self.shifts.clone(), diffs)?;
        if self.verified {
            out.verify()
        } else {
            Ok(out)
        }
    }

    /// Keeps `F_0..F_m`.
    pub fn truncated(&self, m: usize) -> FreeComplex<F> {
        let m = m.min(self.top());
        FreeComplex {
            algebra: self.algebra.clone(),
            shifts: self.shifts[..=m].to_vec(),
            differentials: self.differentials[..m].to_vec(),
            verified: self.verified,
            minimal: self.minimal,
        }
    }
}

/// Degree-`e` matrix of the map `⊕ A(-col_shifts) → ⊕ A(-row_shifts)`
/// whose columns are `columns`.
pub(crate) fn slice_matrix_of<F: Scalar>(
    a: &PresentedAlgebra<F>,
    row_shifts: &[u32],
    col_shifts: &[u32],
    columns: &[Vec<Poly<F>>],
    e: u32,
) -> Matrix<F> {
    let mut cols = Vec::new();
    for (col, &s) in columns.iter().zip(col_shifts) {
        if s > e {
            continue;
        }
        for m in &a.basis(e - s).monomials {
            let v: Vec<Poly<F>> = col.iter().map(|p| p.mul_term(m, &F::one())).collect();
            cols.push(free_coords(a, row_shifts, &v, e));
        }
    }
    Matrix::from_columns(free_slice_dim(a, row_shifts, e), &cols)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    fn one_by_one(a: &A, s: &str) -> PolyMatrix<Gf32003> {
        PolyMatrix::from_rows(vec![vec![a.parse_element(s).unwrap()]])
    }

    #[test]
    fn koszul_on_one_variable() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let c = FreeComplex::from_differentials(&r, vec![0], vec![one_by_one(&r, "x")]).unwrap().verify().unwrap();
        assert!(c.is_minimal());
        assert_eq!(c.homology_dims(0, 3), vec![1, 0, 0, 0]);
        assert_eq!(c.homology_dims(1, 3), vec![0, 0, 0, 0]);
    }

    #[test]
    fn alternating_complex_over_node() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let diffs = ["x", "y", "x", "y"].iter().map(|s| one_by_one(&r, s)).collect();
        let c = FreeComplex::from_differentials(&r, vec![0], diffs).unwrap().verify().unwrap();
        assert_eq!(c.shifts(4), &[4]);
        for i in 1..4 {
            assert!(c.homology_dims(i, 6).iter().all(|&h| h == 0));
        }
    }

    #[test]
    fn unit_entry_is_not_minimal() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let c = FreeComplex::from_differentials(&r, vec![0], vec![one_by_one(&r, "1")]).unwrap().verify().unwrap();
        assert!(!c.is_minimal());
    }

    #[test]
    fn nonzero_composite_reported() {
        let r = A::parse(&[("x", 1), ("y", 1)], &["x*y"], None).unwrap();
        let diffs = ["x", "x"].iter().map(|s| one_by_one(&r, s)).collect();
        let err = FreeComplex::from_differentials(&r, vec![0], diffs).unwrap().verify().unwrap_err();
        assert!(matches!(err, ComplexError::NonZeroComposite { i: 2, .. }));
    }
}
