use std::fmt;

/// Exponent vector of a monomial. The ambient ring supplies names, weights and
/// the order; a bare `Monomial` only knows its exponents.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Monomial(Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn from_exponents(exps: Vec<u16>) -> Self {
        Monomial(exps)
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn exponents(&self) -> &[u16] {
        &self.0
    }

    pub fn nvars(&self) -> usize {
        self.0.len()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    /// Unweighted total degree.
    pub fn total(&self) -> u32 {
        self.0.iter().map(|&e| e as u32).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    /// `other / self`, when `self` divides `other`.
    pub fn quotient_of(&self, other: &Monomial) -> Option<Monomial> {
        if self.divides(other) {
            Some(Monomial(other.0.iter().zip(&self.0).map(|(a, b)| a - b).collect()))
        } else {
            None
        }
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn pow(&self, k: u16) -> Monomial {
        Monomial(self.0.iter().map(|e| e * k).collect())
    }

    /// Index of the first variable with positive exponent.
    pub fn first_var(&self) -> Option<usize> {
        self.0.iter().position(|&e| e > 0)
    }
}

/// Pretty-printer pairing a monomial with variable names.
pub struct MonomialDisplay<'a> {
    pub monomial: &'a Monomial,
    pub names: &'a [String],
}

impl<'a> MonomialDisplay<'a> {
    pub fn new(monomial: &'a Monomial, names: &'a [String]) -> Self {
        MonomialDisplay { monomial, names }
    }
}

impl fmt::Display for MonomialDisplay<'_> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (i, &e) in self.monomial.exponents().iter().enumerate() {
            if e == 0 {
                continue;
            }
            if !first {
                write!(f, "*")?;
            }
            first = false;
            write!(f, "{}", self.names[i])?;
            if e > 1 {
                write!(f, "^{e}")?;
            }
        }
        if first {
            write!(f, "1")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisibility_and_quotient() {
        let a = Monomial::from_exponents(vec![1, 2]);
        let b = Monomial::from_exponents(vec![3, 2]);
        assert!(a.divides(&b));
        assert!(!b.divides(&a));
        assert_eq!(a.quotient_of(&b), Some(Monomial::from_exponents(vec![2, 0])));
        assert_eq!(a.lcm(&Monomial::from_exponents(vec![0, 5])), Monomial::from_exponents(vec![1, 5]));
    }
}
