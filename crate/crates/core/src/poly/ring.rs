use std::cmp::Ordering;
use std::sync::Arc;

use super::{Monomial, PolyError};

/// Monomial orders supported by the engine.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Weighted degree first, ties broken reverse-lexicographically
    /// (the last variable is the smallest).
    WeightedGrevlex,
    /// Block order eliminating the first `block` variables: compare the
    /// weighted degree in those variables first, then weighted grevlex.
    Eliminate { block: usize },
}

/// A weighted polynomial ring `k[x_1, ..., x_n]` with a fixed monomial order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PolyRing {
    names: Vec<String>,
    weights: Vec<u32>,
    order: MonomialOrder,
}

impl PolyRing {
    pub fn new(names: Vec<String>, weights: Vec<u32>) -> Result<Arc<Self>, PolyError> {
        Self::with_order(names, weights, MonomialOrder::WeightedGrevlex)
    }

    /// Standard grading, all weights 1.
    pub fn standard<S: AsRef<str>>(names: &[S]) -> Arc<Self> {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let w = vec![1; names.len()];
        Self::new(names, w).expect("standard grading is valid")
    }

    pub fn with_order(
        names: Vec<String>,
        weights: Vec<u32>,
        order: MonomialOrder,
    ) -> Result<Arc<Self>, PolyError> {
        if names.len() != weights.len() {
            return Err(PolyError::WeightCount { vars: names.len(), weights: weights.len() });
        }
        if let Some(i) = weights.iter().position(|&w| w == 0) {
            return Err(PolyError::NonPositiveWeight(names[i].clone()));
        }
        for (i, n) in names.iter().enumerate() {
            if names[..i].contains(n) {
                return Err(PolyError::DuplicateVariable(n.clone()));
            }
        }
        if let MonomialOrder::Eliminate { block } = order {
            if block > names.len() {
                return Err(PolyError::WeightCount { vars: names.len(), weights: block });
            }
        }
        Ok(Arc::new(PolyRing { names, weights, order }))
    }

    pub fn nvars(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Weighted degree of a monomial.
    pub fn degree(&self, m: &Monomial) -> u32 {
        m.exponents().iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        if let MonomialOrder::Eliminate { block } = self.order {
            let wa = self.block_degree(a, block);
            let wb = self.block_degree(b, block);
            if wa != wb {
                return wa.cmp(&wb);
            }
        }
        let (da, db) = (self.degree(a), self.degree(b));
        if da != db {
            return da.cmp(&db);
        }
        let (ea, eb) = (a.exponents(), b.exponents());
        for i in (0..ea.len()).rev() {
            if ea[i] != eb[i] {
                // smaller exponent in the last differing variable wins
                return eb[i].cmp(&ea[i]);
            }
        }
        Ordering::Equal
    }

    fn block_degree(&self, m: &Monomial, block: usize) -> u32 {
        m.exponents()[..block].iter().zip(&self.weights).map(|(&e, &w)| e as u32 * w).sum()
    }

    /// All monomials of weighted degree exactly `d`, in descending order.
    pub fn monomials_of_degree(&self, d: u32) -> Vec<Monomial> {
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.nvars()];
        self.enumerate(0, d, &mut cur, &mut out);
        out.sort_by(|a, b| self.cmp(b, a));
        out
    }

    fn enumerate(&self, i: usize, left: u32, cur: &mut Vec<u16>, out: &mut Vec<Monomial>) {
        if i == self.nvars() {
            if left == 0 {
                out.push(Monomial::from_exponents(cur.clone()));
            }
            return;
        }
        let w = self.weights[i];
        let mut e = 0;
        while e * w <= left {
            cur[i] = e as u16;
            self.enumerate(i + 1, left - e * w, cur, out);
            e += 1;
        }
        cur[i] = 0;
    }

    /// Same variables and weights under a different order.
    pub fn reordered(&self, order: MonomialOrder) -> Arc<PolyRing> {
        Arc::new(PolyRing { names: self.names.clone(), weights: self.weights.clone(), order })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(e: &[u16]) -> Monomial {
        Monomial::from_exponents(e.to_vec())
    }

    #[test]
    fn grevlex_ties() {
        let r = PolyRing::standard(&["x", "y", "z"]);
        // x*z < y^2 in grevlex
        assert_eq!(r.cmp(&m(&[1, 0, 1]), &m(&[0, 2, 0])), Ordering::Less);
        assert_eq!(r.cmp(&m(&[2, 0, 0]), &m(&[1, 1, 0])), Ordering::Greater);
    }

    #[test]
    fn weighted_cusp_leading_term() {
        let r = PolyRing::new(vec!["x".into(), "y".into()], vec![3, 2]).unwrap();
        assert_eq!(r.degree(&m(&[2, 0])), 6);
        assert_eq!(r.cmp(&m(&[2, 0]), &m(&[0, 3])), Ordering::Greater);
    }

    #[test]
    fn monomials_of_weighted_degree() {
        let r = PolyRing::new(vec!["x".into(), "y".into()], vec![3, 2]).unwrap();
        assert_eq!(r.monomials_of_degree(6).len(), 2);
        assert_eq!(r.monomials_of_degree(1).len(), 0);
    }

    #[test]
    fn zero_weight_rejected() {
        assert!(PolyRing::new(vec!["x".into()], vec![0]).is_err());
    }
}
