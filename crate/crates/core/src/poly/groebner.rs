//! Buchberger's algorithm and multivariate division.

use std::cmp::Ordering;
use std::sync::Arc;

use super::{Monomial, Poly, PolyRing};
use crate::scalar::Scalar;

fn find_divisor<'a, F: Scalar>(basis: &'a [Poly<F>], m: &Monomial) -> Option<(usize, &'a Poly<F>)> {
    basis
        .iter()
        .enumerate()
        .find(|(_, g)| g.leading_monomial().is_some_and(|lm| lm.divides(m)))
}

/// Full reduction of `p` by `basis`. The result has no term divisible by a
/// leading monomial of `basis`.
pub fn reduce<F: Scalar>(p: &Poly<F>, basis: &[Poly<F>]) -> Poly<F> {
    divide(p, basis).1
}

/// Division with remainder: returns quotients `q_i` and remainder `r` with
/// `p = sum q_i * basis[i] + r`.
pub fn divide<F: Scalar>(p: &Poly<F>, basis: &[Poly<F>]) -> (Vec<Poly<F>>, Poly<F>) {
    let ring = p.ring().clone();
    let mut quotients = vec![Poly::zero(&ring); basis.len()];
    let mut rem_terms: Vec<(Monomial, F)> = Vec::new();
    let mut work = p.clone();
    while let Some((m, c)) = work.leading_term().cloned() {
        match find_divisor(basis, &m) {
            Some((i, g)) => {
                let (lm, lc) = g.leading_term().expect("nonzero divisor");
                let q = lm.quotient_of(&m).expect("divides");
                let coef = c / lc.clone();
                work = work.add_scaled(g, &q, &-coef.clone());
                quotients[i] = quotients[i].add_scaled(&Poly::one(&ring), &q, &coef);
            }
            None => {
                rem_terms.push((m, c));
                work = drop_leading(&work);
            }
        }
    }
    (quotients, Poly::from_terms(&ring, rem_terms))
}

fn drop_leading<F: Scalar>(p: &Poly<F>) -> Poly<F> {
    let n = p.terms().len();
    Poly::from_sorted_unchecked(p.ring(), p.terms()[..n - 1].to_vec())
}

fn spoly<F: Scalar>(f: &Poly<F>, g: &Poly<F>) -> Poly<F> {
    let (mf, cf) = f.leading_term().unwrap();
    let (mg, cg) = g.leading_term().unwrap();
    let l = mf.lcm(mg);
    let a = mf.quotient_of(&l).unwrap();
    let b = mg.quotient_of(&l).unwrap();
    let lhs = f.mul_term(&a, &cf.inv().unwrap());
    lhs.add_scaled(g, &b, &-cg.inv().unwrap())
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
    degree: u32,
}

fn pair_order(ring: &PolyRing, a: &Pair, b: &Pair) -> Ordering {
    a.degree
        .cmp(&b.degree)
        .then_with(|| ring.cmp(&a.lcm, &b.lcm))
        .then_with(|| (a.j, a.i).cmp(&(b.j, b.i)))
}

/// Reduced, monic Gröbner basis sorted by ascending leading monomial.
/// The unit ideal yields `[1]`; the zero ideal yields `[]`.
pub fn groebner_basis<F: Scalar>(ring: &Arc<PolyRing>, gens: &[Poly<F>]) -> Vec<Poly<F>> {
    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();
    let mut done: Vec<Vec<bool>> = Vec::new();

    let push = |basis: &mut Vec<Poly<F>>, pairs: &mut Vec<Pair>, done: &mut Vec<Vec<bool>>, p: Poly<F>| {
        let p = p.make_monic();
        let j = basis.len();
        let lmj = p.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lmi = g.leading_monomial().unwrap();
            let lcm = lmi.lcm(&lmj);
            let degree = ring.degree(&lcm);
            pairs.push(Pair { i, j, lcm, degree });
        }
        for row in done.iter_mut() {
            row.push(false);
        }
        done.push(vec![false; j + 1]);
        basis.push(p);
    };

    for g in gens {
        debug_assert!(super::poly::same_ring(g.ring(), ring));
        let r = reduce(g, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Poly::one(ring)];
        }
        push(&mut basis, &mut pairs, &mut done, r);
    }

    while !pairs.is_empty() {
        let best = (0..pairs.len())
            .min_by(|&a, &b| pair_order(ring, &pairs[a], &pairs[b]))
            .unwrap();
        let Pair { i, j, lcm, .. } = pairs.swap_remove(best);
        done[i][j] = true;
        done[j][i] = true;
        let (lmi, lmj) = (basis[i].leading_monomial().unwrap(), basis[j].leading_monomial().unwrap());
        if lmi.is_coprime(lmj) {
            continue;
        }
        // chain criterion: some k with lm_k | lcm whose pairs with i and j were already treated
        let chain = (0..basis.len()).any(|k| {
            k != i
                && k != j
                && done[i][k]
                && done[j][k]
                && basis[k].leading_monomial().unwrap().divides(&lcm)
        });
        if chain {
            continue;
        }
        let s = spoly(&basis[i], &basis[j]);
        let r = reduce(&s, &basis);
        if r.is_zero() {
            continue;
        }
        if r.is_constant() {
            return vec![Poly::one(ring)];
        }
        push(&mut basis, &mut pairs, &mut done, r);
    }
    reduce_basis(basis)
}

/// Minimalizes and inter-reduces a Gröbner basis, normalizing to monic and
/// sorting by ascending leading monomial.
fn reduce_basis<F: Scalar>(basis: Vec<Poly<F>>) -> Vec<Poly<F>> {
    let mut minimal: Vec<Poly<F>> = Vec::new();
    for (k, g) in basis.iter().enumerate() {
        let lm = g.leading_monomial().unwrap();
        let redundant = basis.iter().enumerate().any(|(l, h)| {
            let lh = h.leading_monomial().unwrap();
            l != k && lh.divides(lm) && (lh != lm || l < k)
        });
        if !redundant {
            minimal.push(g.clone());
        }
    }
    let mut out: Vec<Poly<F>> = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<Poly<F>> = minimal.iter().enumerate().filter(|(l, _)| *l != k).map(|(_, h)| h.clone()).collect();
        let g = &minimal[k];
        let (lm, lc) = g.leading_term().unwrap().clone();
        let tail = drop_leading(g);
        let tail = reduce(&tail, &others);
        let full = Poly::monomial(g.ring(), lm, lc).try_add(&tail).unwrap();
        out.push(full.make_monic());
    }
    if let Some(first) = out.first() {
        let ring = first.ring().clone();
        out.sort_by(|a, b| ring.cmp(a.leading_monomial().unwrap(), b.leading_monomial().unwrap()));
    }
    out
}

/// Searches for cofactors `h_i` with `sum h_i * gens[i] = 1`.
///
/// Runs Buchberger's algorithm while tracking how every basis element is
/// expressed in the input generators; returns `None` exactly when the
/// generators do not generate the unit ideal.
pub fn unit_certificate<F: Scalar>(ring: &Arc<PolyRing>, gens: &[Poly<F>]) -> Option<Vec<Poly<F>>> {
    let n = gens.len();
    let zero = Poly::zero(ring);
    let mut basis: Vec<Poly<F>> = Vec::new();
    let mut cofs: Vec<Vec<Poly<F>>> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    // reduce `p` (with representation `cof`) by the current basis, tracking cofactors
    let tracked_reduce = |p: Poly<F>, mut cof: Vec<Poly<F>>, basis: &[Poly<F>], cofs: &[Vec<Poly<F>>]| {
        let mut work = p;
        let mut rem_terms: Vec<(Monomial, F)> = Vec::new();
        while let Some((m, c)) = work.leading_term().cloned() {
            match find_divisor(basis, &m) {
                Some((k, g)) => {
                    let (lm, lc) = g.leading_term().unwrap();
                    let q = lm.quotient_of(&m).unwrap();
                    let coef = -(c / lc.clone());
                    work = work.add_scaled(g, &q, &coef);
                    for (slot, gk) in cof.iter_mut().zip(&cofs[k]) {
                        *slot = slot.add_scaled(gk, &q, &coef);
                    }
                }
                None => {
                    rem_terms.push((m, c));
                    work = drop_leading(&work);
                }
            }
        }
        (Poly::from_terms(work.ring(), rem_terms), cof)
    };

    let admit = |p: Poly<F>,
                     cof: Vec<Poly<F>>,
                     basis: &mut Vec<Poly<F>>,
                     cofs: &mut Vec<Vec<Poly<F>>>,
                     pairs: &mut Vec<Pair>|
     -> Option<Vec<Poly<F>>> {
        let lc_inv = p.leading_coeff().unwrap().inv().unwrap();
        let p = p.scale(&lc_inv);
        let cof: Vec<Poly<F>> = cof.iter().map(|h| h.scale(&lc_inv)).collect();
        if p.is_constant() {
            return Some(cof);
        }
        let j = basis.len();
        let lmj = p.leading_monomial().unwrap().clone();
        for (i, g) in basis.iter().enumerate() {
            let lcm = g.leading_monomial().unwrap().lcm(&lmj);
            let degree = ring.degree(&lcm);
            pairs.push(Pair { i, j, lcm, degree });
        }
        basis.push(p);
        cofs.push(cof);
        None
    };

    for (idx, g) in gens.iter().enumerate() {
        let mut cof = vec![zero.clone(); n];
        cof[idx] = Poly::one(ring);
        let (r, cof) = tracked_reduce(g.clone(), cof, &basis, &cofs);
        if r.is_zero() {
            continue;
        }
        if let Some(c) = admit(r, cof, &mut basis, &mut cofs, &mut pairs) {
            return Some(c);
        }
    }
    while !pairs.is_empty() {
        let best = (0..pairs.len()).min_by(|&a, &b| pair_order(ring, &pairs[a], &pairs[b])).unwrap();
        let Pair { i, j, lcm, .. } = pairs.swap_remove(best);
        let (mi, ci) = basis[i].leading_term().unwrap().clone();
        let (mj, cj) = basis[j].leading_term().unwrap().clone();
        if mi.is_coprime(&mj) {
            continue;
        }
        let a = mi.quotient_of(&lcm).unwrap();
        let b = mj.quotient_of(&lcm).unwrap();
        let (ai, bj) = (ci.inv().unwrap(), -cj.inv().unwrap());
        let s = basis[i].mul_term(&a, &ai).add_scaled(&basis[j], &b, &bj);
        let cof: Vec<Poly<F>> = cofs[i]
            .iter()
            .zip(&cofs[j])
            .map(|(x, y)| x.mul_term(&a, &ai).add_scaled(y, &b, &bj))
            .collect();
        let (r, cof) = tracked_reduce(s, cof, &basis, &cofs);
        if r.is_zero() {
            continue;
        }
        if let Some(c) = admit(r, cof, &mut basis, &mut cofs, &mut pairs) {
            return Some(c);
        }
    }
    None
}

/// True when `sum cofactors[i] * gens[i] == 1`.
pub fn check_unit_certificate<F: Scalar>(ring: &Arc<PolyRing>, gens: &[Poly<F>], cofactors: &[Poly<F>]) -> bool {
    if gens.len() != cofactors.len() {
        return false;
    }
    let mut acc = Poly::zero(ring);
    for (g, h) in gens.iter().zip(cofactors) {
        acc = &acc + &(h * g);
    }
    acc.is_constant() && acc.constant_term().is_one()
}

/// `true` when the (monic, reduced) basis is the unit ideal.
pub fn is_unit_basis<F: Scalar>(basis: &[Poly<F>]) -> bool {
    basis.len() == 1 && basis[0].is_constant() && !basis[0].constant_term().is_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::parse_poly;
    use crate::scalar::Gf32003;

    type P = Poly<Gf32003>;

    fn polys(ring: &Arc<PolyRing>, src: &[&str]) -> Vec<P> {
        src.iter().map(|s| parse_poly(ring, s).unwrap()).collect()
    }

    #[test]
    fn principal_monomial_ideal() {
        let r = PolyRing::standard(&["x", "y"]);
        let gb = groebner_basis(&r, &polys(&r, &["x*y"]));
        assert_eq!(gb, polys(&r, &["x*y"]));
    }

    #[test]
    fn s_polynomial_produces_y_squared() {
        let r = PolyRing::standard(&["x", "y"]);
        let gb = groebner_basis(&r, &polys(&r, &["x - y", "x*y"]));
        assert_eq!(gb, polys(&r, &["x - y", "y^2"]));
    }

    #[test]
    fn weighted_cusp_multiple_is_redundant() {
        let r = PolyRing::new(vec!["x".into(), "y".into()], vec![3, 2]).unwrap();
        let gb = groebner_basis(&r, &polys(&r, &["x^2 - y^3", "y*(x^2 - y^3)"]));
        assert_eq!(gb, polys(&r, &["x^2 - y^3"]));
        let nf = reduce(&parse_poly(&r, "x^3").unwrap(), &gb);
        assert_eq!(nf, parse_poly(&r, "x*y^3").unwrap());
    }

    #[test]
    fn unit_ideal_detected_with_certificate() {
        let r = PolyRing::standard(&["a", "b"]);
        let gens = polys(&r, &["a^2", "2*a*b - 1"]);
        assert!(is_unit_basis(&groebner_basis(&r, &gens)));
        let cof = unit_certificate(&r, &gens).expect("unit ideal");
        assert!(check_unit_certificate(&r, &gens, &cof));
    }

    #[test]
    fn proper_ideal_has_no_unit_certificate() {
        let r = PolyRing::standard(&["a", "b"]);
        let gens = polys(&r, &["a^2", "a*b"]);
        assert!(unit_certificate(&r, &gens).is_none());
    }

    #[test]
    fn division_record_reconstructs() {
        let r = PolyRing::standard(&["x", "y", "z"]);
        let basis = groebner_basis(&r, &polys(&r, &["x*y - z^2", "y^2 - x*z"]));
        let p = parse_poly(&r, "x^3*y + y^3*z + x*z^2 + 5").unwrap();
        let (q, rem) = divide(&p, &basis);
        let mut acc = rem.clone();
        for (qi, g) in q.iter().zip(&basis) {
            acc = &acc + &(qi * g);
        }
        assert_eq!(acc, p);
    }
}
