use std::sync::Arc;

use crate::algebra::{AlgebraMorphism, PresentedAlgebra};
use crate::poly::{Monomial, Poly};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ActionError {
    #[error("action table must have {rows} x {cols} entries")]
    Shape { rows: usize, cols: usize },
    #[error("entry for ({x}, {y}) is not an element of the target ring")]
    Ring { x: String, y: String },
    #[error("entry {x} * {y} = {value} is not in the maximal ideal")]
    NotInMaximalIdeal { x: String, y: String, value: String },
    #[error("{identity} fails in degree {degree}: {detail}")]
    Violation { identity: &'static str, degree: u32, detail: String },
    #[error("action is not induced by a morphism: {0}")]
    NotInduced(String),
}

/// The data of an `R`-action on `m_S`: `entries[i][j] = x_i ∗ y_j ∈ m_S`.
///
/// The action of `x_i` on a standard monomial `μ` of `S` is defined by
/// splitting off its first variable, `x_i ∗ (y_j μ') = (x_i ∗ y_j) μ'`;
/// validation then checks that this is well defined and has the required
/// laws.
#[derive(Clone, Debug)]
pub struct ActionTable<F> {
    r: Arc<PresentedAlgebra<F>>,
    s: Arc<PresentedAlgebra<F>>,
    entries: Vec<Vec<Poly<F>>>,
    validated: Option<u32>,
}

impl<F: Scalar> ActionTable<F> {
    pub fn new(
        r: &Arc<PresentedAlgebra<F>>,
        s: &Arc<PresentedAlgebra<F>>,
        entries: Vec<Vec<Poly<F>>>,
    ) -> Result<Self, ActionError> {
        let shape = ActionError::Shape { rows: r.nvars(), cols: s.nvars() };
        if entries.len() != r.nvars() {
            return Err(shape);
        }
        let mut reduced = Vec::with_capacity(entries.len());
        for (i, row) in entries.into_iter().enumerate() {
            if row.len() != s.nvars() {
                return Err(shape);
            }
            let mut out = Vec::with_capacity(row.len());
            for (j, a) in row.into_iter().enumerate() {
                if **a.ring() != **s.ring() {
                    return Err(ActionError::Ring { x: r.names()[i].clone(), y: s.names()[j].clone() });
                }
                let nf = s.normal_form(&a);
                if !nf.constant_term().is_zero() {
                    return Err(ActionError::NotInMaximalIdeal {
                        x: r.names()[i].clone(),
                        y: s.names()[j].clone(),
                        value: a.to_string(),
                    });
                }
                out.push(nf);
            }
            reduced.push(out);
        }
        Ok(ActionTable { r: r.clone(), s: s.clone(), entries: reduced, validated: None })
    }

    /// `m_R ∗ m_S = 0`.
    pub fn zero(r: &Arc<PresentedAlgebra<F>>, s: &Arc<PresentedAlgebra<F>>) -> Self {
        let entries = vec![vec![Poly::zero(s.ring()); s.nvars()]; r.nvars()];
        ActionTable { r: r.clone(), s: s.clone(), entries, validated: None }
    }

    /// `x_i ∗ y_j = f(x_i) y_j` for a verified `f: R → S`.
    pub fn induced(f: &AlgebraMorphism<F>) -> Result<Self, ActionError> {
        if !f.is_verified() {
            return Err(ActionError::NotInduced("morphism is not verified".into()));
        }
        let s = f.target();
        let entries = f
            .images()
            .iter()
            .map(|img| (0..s.nvars()).map(|j| img * &s.var(j)).collect())
            .collect();
        Self::new(f.source(), s, entries)
    }

    /// Parses entries given as `(R variable, S variable, value)` triples;
    /// missing entries are zero.
    pub fn from_named(
        r: &Arc<PresentedAlgebra<F>>,
        s: &Arc<PresentedAlgebra<F>>,
        named: &[(String, String, Poly<F>)],
    ) -> Result<Self, ActionError> {
        let mut entries = vec![vec![Poly::zero(s.ring()); s.nvars()]; r.nvars()];
        for (x, y, p) in named {
            let i = r.ring().var_index(x).ok_or_else(|| ActionError::Ring { x: x.clone(), y: y.clone() })?;
            let j = s.ring().var_index(y).ok_or_else(|| ActionError::Ring { x: x.clone(), y: y.clone() })?;
            entries[i][j] = p.clone();
        }
        Self::new(r, s, entries)
    }

    pub fn r(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.r
    }

    pub fn s(&self) -> &Arc<PresentedAlgebra<F>> {
        &self.s
    }

    pub fn entry(&self, i: usize, j: usize) -> &Poly<F> {
        &self.entries[i][j]
    }

    pub fn entries(&self) -> &[Vec<Poly<F>>] {
        &self.entries
    }

    /// Degree up to which the laws were checked, if validated.
    pub fn validated(&self) -> Option<u32> {
        self.validated
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().flatten().all(|p| p.is_zero())
    }

    /// `x_i ∗ y` for `y ∈ m_S`. Any constant term of `y` is ignored.
    pub fn act_var(&self, i: usize, y: &Poly<F>) -> Poly<F> {
        let s = &self.s;
        let y = s.normal_form(y);
        let mut out = Poly::zero(s.ring());
        for (mu, c) in y.terms() {
            let Some(j) = mu.first_var() else { continue };
            let rest = Monomial::var(mu.nvars(), j).quotient_of(mu).expect("first variable divides");
            out = out.add_scaled(&self.entries[i][j], &rest, c);
        }
        s.normal_form(&out)
    }

    /// `r ∗ y` for `y ∈ m_S` and `r` any polynomial representative: monomials
    /// act by iterating the variable actions, and the constant term acts by
    /// scaling. `r` is deliberately not reduced, so validation can check that
    /// the relations of `R` act as zero.
    pub fn act(&self, r: &Poly<F>, y: &Poly<F>) -> Poly<F> {
        let y = self.s.normal_form(y);
        let y = &y - &Poly::constant(self.s.ring(), y.constant_term());
        let mut out = Poly::zero(self.s.ring());
        for (mu, c) in r.terms() {
            let mut v = y.clone();
            for (i, &e) in mu.exponents().iter().enumerate() {
                for _ in 0..e {
                    v = self.act_var(i, &v);
                }
            }
            out = &out + &v.scale(c);
        }
        out
    }

    /// Checks the action laws on every standard monomial of `m_S` up to degree
    /// `d`, in this order: entry degrees, `S`-linearity (which also covers the
    /// relations of `S`), commutativity of the variable actions, and
    /// associativity against the relations of `R`.
    pub fn validate(mut self, d: u32) -> Result<Self, ActionError> {
        let (r, s) = (self.r.clone(), self.s.clone());
        for (i, row) in self.entries.iter().enumerate() {
            for (j, a) in row.iter().enumerate() {
                let want = r.weights()[i] + s.weights()[j];
                if !a.is_zero() && a.homogeneous_degree() != Some(want) {
                    return Err(ActionError::Violation {
                        identity: "degree",
                        degree: want,
                        detail: format!("{} * {} = {a} is not homogeneous of degree {want}", r.names()[i], s.names()[j]),
                    });
                }
            }
        }
        let violation = |identity, degree, detail| Err(ActionError::Violation { identity, degree, detail });
        for e in 1..=d {
            for i in 0..r.nvars() {
                let wi = r.weights()[i];
                for k in 0..s.nvars() {
                    let wk = s.weights()[k];
                    if wk > e {
                        continue;
                    }
                    for nu in s.basis(e - wk).monomials.iter() {
                        let nu = Poly::monomial(s.ring(), nu.clone(), F::one());
                        let prod = &s.var(k) * &nu;
                        let lhs = self.act_var(i, &prod);
                        let rhs = if nu.is_constant() {
                            self.entries[i][k].clone()
                        } else {
                            s.normal_form(&(&s.var(k) * &self.act_var(i, &nu)))
                        };
                        if lhs != rhs {
                            return violation(
                                "S-linearity",
                                e + wi,
                                format!(
                                    "{x} * ({y} {nu}) = {lhs} but ({x} * {nu}) {y} = {rhs}",
                                    x = r.names()[i],
                                    y = s.names()[k],
                                ),
                            );
                        }
                    }
                }
            }
            for nu in s.basis(e).monomials.iter() {
                let nu = Poly::monomial(s.ring(), nu.clone(), F::one());
                for i in 0..r.nvars() {
                    for k in i + 1..r.nvars() {
                        let a = self.act_var(i, &self.act_var(k, &nu));
                        let b = self.act_var(k, &self.act_var(i, &nu));
                        if a != b {
                            return violation(
                                "commutativity",
                                e + r.weights()[i] + r.weights()[k],
                                format!("{x} * ({z} * {nu}) = {a} but {z} * ({x} * {nu}) = {b}", x = r.names()[i], z = r.names()[k]),
                            );
                        }
                    }
                }
                for g in r.ideal().groebner() {
                    let v = self.act(g, &nu);
                    if !v.is_zero() {
                        return violation(
                            "associativity",
                            e + g.degree().unwrap_or(0),
                            format!("relation {g} of R acts on {nu} as {v}"),
                        );
                    }
                }
            }
        }
        self.validated = Some(d);
        Ok(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::Gf32003;

    type A = PresentedAlgebra<Gf32003>;

    #[test]
    fn zero_action_validates() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let s = A::parse(&[("y", 1)], &["y^3"], None).unwrap();
        let t = ActionTable::zero(&r, &s).validate(6).unwrap();
        assert_eq!(t.validated(), Some(6));
    }

    #[test]
    fn induced_action_validates() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let s = A::parse(&[("y", 1)], &["y^2"], None).unwrap();
        let f = AlgebraMorphism::parse(&r, &s, &["y"]).unwrap().verify().unwrap();
        let t = ActionTable::induced(&f).unwrap().validate(6).unwrap();
        assert!(t.act(&r.var(0), &s.var(0)).is_zero());
        assert_eq!(t.act(&r.parse_element("2 + x").unwrap(), &s.var(0)), s.parse_element("2*y").unwrap());
    }

    #[test]
    fn corrupted_table_fails_associativity() {
        let r = A::parse(&[("x", 1)], &["x^2"], None).unwrap();
        let s = A::parse(
            &[("e1", 1), ("e2", 2), ("e3", 3)],
            &["e1^2", "e1*e2", "e1*e3", "e2^2", "e2*e3", "e3^2"],
            None,
        )
        .unwrap();
        let named = vec![
            ("x".to_string(), "e1".to_string(), s.parse_element("e2").unwrap()),
            ("x".to_string(), "e2".to_string(), s.parse_element("e3").unwrap()),
        ];
        let err = ActionTable::from_named(&r, &s, &named).unwrap().validate(3).unwrap_err();
        assert!(matches!(err, ActionError::Violation { identity: "associativity", degree: 3, .. }), "{err}");
    }

    #[test]
    fn entries_outside_maximal_ideal_rejected() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let s = A::parse(&[("y", 1)], &[], None).unwrap();
        let entries = vec![vec![Poly::one(s.ring())]];
        assert!(matches!(ActionTable::new(&r, &s, entries), Err(ActionError::NotInMaximalIdeal { .. })));
    }

    #[test]
    fn non_linear_table_rejected() {
        let r = A::parse(&[("x", 1)], &[], None).unwrap();
        let s = A::parse(&[("y", 1), ("z", 1)], &["y*z"], None).unwrap();
        let named = vec![("x".to_string(), "y".to_string(), s.parse_element("z^2").unwrap())];
        let err = ActionTable::from_named(&r, &s, &named).unwrap().validate(3).unwrap_err();
        assert!(matches!(err, ActionError::Violation { identity: "S-linearity", .. }), "{err}");
    }
}
