//! Buchberger's algorithm with the Gebauer–Möller pair criteria and the
//! normal selection strategy.

use std::cmp::Ordering;

use num_traits::{One, Zero};

use super::budget;
use super::monomial::Monomial;
use super::order::{Comparator, MonomialOrder};
use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A polynomial with terms sorted descending in a specific order.
#[derive(Clone, Debug)]
pub(crate) struct OrderedPoly {
    pub terms: Vec<(Monomial, Scalar)>,
}

impl OrderedPoly {
    pub fn from_poly(p: &Polynomial, cmp: &Comparator) -> Self {
        let mut terms = p.terms().to_vec();
        terms.sort_by(|a, b| cmp.cmp(&b.0, &a.0));
        OrderedPoly { terms }
    }

    pub fn to_poly(&self, arity: usize) -> Polynomial {
        Polynomial::from_terms(arity, self.terms.iter().cloned())
    }

    pub fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn make_monic(&mut self) {
        if let Some((_, c)) = self.terms.first() {
            if !c.is_one() {
                let inv = c.recip();
                for (_, a) in self.terms.iter_mut() {
                    *a *= &inv;
                }
            }
        }
    }
}

/// `a[skip_a..] - c * m * b[skip_b..]`, both sorted descending.
fn sub_scaled(
    a: &[(Monomial, Scalar)],
    b: &[(Monomial, Scalar)],
    m: &Monomial,
    c: &Scalar,
    cmp: &Comparator,
) -> Vec<(Monomial, Scalar)> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let mut bi = b.iter().map(|(n, d)| (n.mul(m), d * c)).peekable();
    let mut ai = a.iter().peekable();
    loop {
        match (ai.peek(), bi.peek()) {
            (Some(x), Some(y)) => match cmp.cmp(&x.0, &y.0) {
                Ordering::Greater => out.push(ai.next().unwrap().clone()),
                Ordering::Less => {
                    let (n, d) = bi.next().unwrap();
                    out.push((n, -d));
                }
                Ordering::Equal => {
                    let (n, d) = bi.next().unwrap();
                    let (_, e) = ai.next().unwrap();
                    let s = e - d;
                    if !s.is_zero() {
                        out.push((n, s));
                    }
                }
            },
            (Some(_), None) => out.push(ai.next().unwrap().clone()),
            (None, Some(_)) => {
                let (n, d) = bi.next().unwrap();
                out.push((n, -d));
            }
            (None, None) => break,
        }
    }
    out
}

/// Full reduction of `p` by monic divisors.
pub(crate) fn reduce(p: &OrderedPoly, divisors: &[&OrderedPoly], cmp: &Comparator) -> OrderedPoly {
    let mut rem = p.terms.clone();
    let mut pos = 0;
    let mut done: Vec<(Monomial, Scalar)> = Vec::new();
    while pos < rem.len() {
        let (m, c) = &rem[pos];
        match divisors.iter().find(|g| g.lm().divides(m)) {
            Some(g) => {
                let q = g.lm().quotient_of(m);
                let c = c.clone();
                rem = sub_scaled(&rem[pos + 1..], &g.terms[1..], &q, &c, cmp);
                pos = 0;
            }
            None => {
                done.push(rem[pos].clone());
                pos += 1;
            }
        }
    }
    OrderedPoly { terms: done }
}

fn s_polynomial(f: &OrderedPoly, g: &OrderedPoly, cmp: &Comparator) -> OrderedPoly {
    let lcm = f.lm().lcm(g.lm());
    let mf = f.lm().quotient_of(&lcm);
    let mg = g.lm().quotient_of(&lcm);
    let a: Vec<_> = f.terms[1..].iter().map(|(n, c)| (n.mul(&mf), c.clone())).collect();
    OrderedPoly { terms: sub_scaled(&a, &g.terms[1..], &mg, &Scalar::one(), cmp) }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

struct Engine {
    cmp: Comparator,
    polys: Vec<OrderedPoly>,
    active: Vec<bool>,
    pairs: Vec<Pair>,
}

impl Engine {
    fn active_refs(&self) -> Vec<&OrderedPoly> {
        self.polys.iter().zip(&self.active).filter(|(_, a)| **a).map(|(p, _)| p).collect()
    }

    /// Gebauer–Möller update with a new monic, reduced polynomial.
    fn insert(&mut self, h: OrderedPoly) {
        let hi = self.polys.len();
        let lh = h.lm().clone();
        let mut cands: Vec<(usize, Monomial, bool)> = Vec::new();
        for (g, p) in self.polys.iter().enumerate() {
            if self.active[g] {
                cands.push((g, lh.lcm(p.lm()), lh.coprime(p.lm())));
            }
        }
        let mut kept: Vec<(usize, Monomial, bool)> = Vec::new();
        for k in 0..cands.len() {
            let (g1, ref l1, disjoint) = cands[k];
            let dominated =
                cands[k + 1..].iter().any(|(_, l2, _)| l2.divides(l1)) || kept.iter().any(|(_, l2, _)| l2.divides(l1));
            if disjoint || !dominated {
                kept.push((g1, l1.clone(), disjoint));
            }
        }
        let polys = &self.polys;
        self.pairs
            .retain(|p| !lh.divides(&p.lcm) || lh.lcm(polys[p.i].lm()) == p.lcm || lh.lcm(polys[p.j].lm()) == p.lcm);
        for (g, lcm, disjoint) in kept {
            if !disjoint {
                self.pairs.push(Pair { i: g, j: hi, lcm });
            }
        }
        for (g, p) in self.polys.iter().enumerate() {
            if self.active[g] && lh.divides(p.lm()) {
                self.active[g] = false;
            }
        }
        self.polys.push(h);
        self.active.push(true);
    }

    fn next_pair(&mut self) -> Option<Pair> {
        if self.pairs.is_empty() {
            return None;
        }
        let mut best = 0;
        for k in 1..self.pairs.len() {
            let (a, b) = (&self.pairs[k], &self.pairs[best]);
            let o = self.cmp.cmp(&a.lcm, &b.lcm).then((a.j, a.i).cmp(&(b.j, b.i)));
            if o == Ordering::Less {
                best = k;
            }
        }
        Some(self.pairs.swap_remove(best))
    }
}

/// Reduced Gröbner basis, sorted descending by leading monomial.
pub(crate) fn buchberger(gens: &[Polynomial], order: &MonomialOrder, arity: usize) -> Result<Vec<OrderedPoly>> {
    let cmp = order.comparator(arity);
    let mut input: Vec<OrderedPoly> = gens
        .iter()
        .filter(|p| !p.is_zero())
        .map(|p| {
            let mut o = OrderedPoly::from_poly(p, &cmp);
            o.make_monic();
            o
        })
        .collect();
    input.sort_by(|a, b| cmp.cmp(a.lm(), b.lm()).then_with(|| a.terms.len().cmp(&b.terms.len())));

    let mut eng = Engine { cmp, polys: Vec::new(), active: Vec::new(), pairs: Vec::new() };
    for p in input {
        let mut r = reduce(&p, &eng.active_refs(), &eng.cmp);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            return Ok(vec![r]);
        }
        eng.insert(r);
    }

    let limit = budget::max_steps();
    let mut steps: u64 = 0;
    while let Some(pair) = eng.next_pair() {
        steps += 1;
        if steps > limit {
            budget::record_steps(steps);
            return Err(Error::BudgetExceeded { steps: limit });
        }
        let s = s_polynomial(&eng.polys[pair.i], &eng.polys[pair.j], &eng.cmp);
        let mut r = reduce(&s, &eng.active_refs(), &eng.cmp);
        if r.is_zero() {
            continue;
        }
        r.make_monic();
        if r.lm().is_one() {
            budget::record_steps(steps);
            return Ok(vec![r]);
        }
        eng.insert(r);
    }
    budget::record_steps(steps);

    let cmp = eng.cmp.clone();
    let mut basis: Vec<OrderedPoly> =
        eng.polys.into_iter().zip(eng.active).filter(|(_, a)| *a).map(|(p, _)| p).collect();
    basis.sort_by(|a, b| cmp.cmp(b.lm(), a.lm()));
    let mut reduced = Vec::with_capacity(basis.len());
    for k in 0..basis.len() {
        let others: Vec<&OrderedPoly> = basis.iter().enumerate().filter(|(i, _)| *i != k).map(|(_, p)| p).collect();
        let head = OrderedPoly { terms: vec![basis[k].terms[0].clone()] };
        let tail = OrderedPoly { terms: basis[k].terms[1..].to_vec() };
        let mut r = reduce(&tail, &others, &cmp);
        let mut terms = head.terms;
        terms.append(&mut r.terms);
        let mut p = OrderedPoly { terms };
        p.make_monic();
        reduced.push(p);
    }
    Ok(reduced)
}
