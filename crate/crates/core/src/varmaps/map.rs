use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{substitute, Fraction, Ideal, MonomialOrder, Polynomial, Scalar};

use super::graph::{graph_closure, is_dominant};
use super::variety::AffineVariety;

/// A rational map given by one or more representatives, each a tuple of
/// fractions in the source coordinates, one per target coordinate.
#[derive(Clone, Debug)]
pub struct RationalMap {
    source: Arc<AffineVariety>,
    target: Arc<AffineVariety>,
    reps: Vec<Vec<Fraction>>,
}

/// Product of the denominators of one representative.
pub(crate) fn denominator_product(rep: &[Fraction], arity: usize) -> Polynomial {
    let mut q = Polynomial::one(arity);
    for f in rep {
        if !f.den.is_constant() && !rep_has_factor(&q, &f.den) {
            q = &q * &f.den;
        }
    }
    q.monic()
}

fn rep_has_factor(q: &Polynomial, d: &Polynomial) -> bool {
    q.div_exact(d).is_some()
}

/// `p = 0` in the function field of the source: membership in the ideal,
/// or after saturating by the denominators involved.
pub(crate) fn vanishes(ideal: &Ideal, p: &Polynomial, dens: &Polynomial) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if ideal.is_zero_ideal() {
        return Ok(false);
    }
    if ideal.contains(p)? {
        return Ok(true);
    }
    if dens.is_constant() {
        return Ok(false);
    }
    ideal.saturate(dens)?.contains(p)
}

impl RationalMap {
    /// Validates and normalizes a rational map.
    pub fn new(source: Arc<AffineVariety>, target: Arc<AffineVariety>, reps: Vec<Vec<Fraction>>) -> Result<Self> {
        if reps.is_empty() {
            return Err(Error::Invalid("a rational map needs at least one representative".into()));
        }
        let (n, m) = (source.arity(), target.arity());
        let mut normalized = Vec::with_capacity(reps.len());
        for rep in &reps {
            if rep.len() != m {
                return Err(Error::ArityMismatch { expected: m, found: rep.len() });
            }
            let mut out = Vec::with_capacity(m);
            for f in rep {
                if f.arity() != n {
                    return Err(Error::ArityMismatch { expected: n, found: f.arity() });
                }
                if source.ideal().contains(&f.den)? {
                    return Err(Error::ZeroDenominator(source.format(&f.den)));
                }
                out.push(f.normalized(Some(source.ideal()))?);
            }
            normalized.push(out);
        }
        let map = RationalMap { source, target, reps: normalized };
        map.check_into_target()?;
        map.check_agreement()?;
        Ok(map)
    }

    /// Builds a map whose representatives are known to be consistent.
    pub(crate) fn trusted(
        source: Arc<AffineVariety>,
        target: Arc<AffineVariety>,
        reps: Vec<Vec<Fraction>>,
    ) -> Result<Self> {
        let mut normalized: Vec<Vec<Fraction>> = Vec::with_capacity(reps.len());
        for rep in reps {
            let rep = rep.iter().map(|f| f.normalized(Some(source.ideal()))).collect::<Result<Vec<_>>>()?;
            if !normalized.contains(&rep) {
                normalized.push(rep);
            }
        }
        Ok(RationalMap { source, target, reps: normalized })
    }

    pub fn identity(x: Arc<AffineVariety>) -> Self {
        let n = x.arity();
        let rep = (0..n).map(|i| Fraction::var(n, i)).collect();
        RationalMap { source: x.clone(), target: x, reps: vec![rep] }
    }

    /// A morphism given by polynomial coordinates.
    pub fn polynomial(source: Arc<AffineVariety>, target: Arc<AffineVariety>, coords: Vec<Polynomial>) -> Result<Self> {
        Self::new(source, target, vec![coords.into_iter().map(Fraction::poly).collect()])
    }

    pub fn source(&self) -> &Arc<AffineVariety> {
        &self.source
    }

    pub fn target(&self) -> &Arc<AffineVariety> {
        &self.target
    }

    pub fn representatives(&self) -> &[Vec<Fraction>] {
        &self.reps
    }

    pub fn first(&self) -> &[Fraction] {
        &self.reps[0]
    }

    /// Adds a representative, validating it against the existing ones.
    pub fn with_representative(&self, rep: Vec<Fraction>) -> Result<Self> {
        let mut reps = self.reps.clone();
        reps.push(rep);
        Self::new(self.source.clone(), self.target.clone(), reps)
    }

    /// Some representative is a polynomial tuple.
    pub fn is_polynomial(&self) -> bool {
        self.reps.iter().any(|r| r.iter().all(Fraction::is_polynomial))
    }

    pub fn polynomial_coordinates(&self) -> Option<Vec<Polynomial>> {
        self.reps
            .iter()
            .find(|r| r.iter().all(Fraction::is_polynomial))
            .map(|r| r.iter().map(|f| f.as_polynomial().unwrap()).collect())
    }

    /// Image of a point under the first representative defined there.
    pub fn eval(&self, p: &[Scalar]) -> Option<Vec<Scalar>> {
        self.reps.iter().find_map(|r| r.iter().map(|f| f.eval(p)).collect())
    }

    pub fn format(&self) -> Vec<Vec<String>> {
        self.reps.iter().map(|r| r.iter().map(|f| f.format(self.source.names())).collect()).collect()
    }

    fn check_into_target(&self) -> Result<()> {
        let n = self.source.arity();
        for rep in &self.reps {
            let q = denominator_product(rep, n);
            for g in self.target.ideal().generators() {
                let pulled = substitute(g, rep);
                if !vanishes(self.source.ideal(), &pulled.num, &q)? {
                    let residue = self.source.ideal().normal_form(&pulled.num)?;
                    return Err(Error::NotIntoTarget {
                        relation: self.target.format(g),
                        residue: self.source.format(&residue),
                    });
                }
            }
        }
        Ok(())
    }

    fn check_agreement(&self) -> Result<()> {
        for a in 1..self.reps.len() {
            for (k, f) in self.reps[a].iter().enumerate() {
                let g = &self.reps[0][k];
                let dens = &f.den * &g.den;
                if !vanishes(self.source.ideal(), &f.cross_difference(g), &dens)? {
                    return Err(Error::RepresentativeMismatch { first: 0, second: a, coordinate: k });
                }
            }
        }
        Ok(())
    }
}

fn same_varieties(a: &AffineVariety, b: &AffineVariety) -> Result<bool> {
    if std::ptr::eq(a, b) {
        return Ok(true);
    }
    a.same_as(b)
}

/// The first coordinate where two maps differ, as a nonzero residue
/// `num_φ·den_ψ − num_ψ·den_φ` modulo the source ideal.
pub fn map_residue(phi: &RationalMap, psi: &RationalMap) -> Result<Option<(usize, Polynomial)>> {
    if !same_varieties(&phi.source, &psi.source)? || !same_varieties(&phi.target, &psi.target)? {
        return Err(Error::NotComposable("source or target varieties differ".into()));
    }
    let ideal = phi.source.ideal();
    for (k, (f, g)) in phi.first().iter().zip(psi.first()).enumerate() {
        let diff = f.cross_difference(g);
        if !vanishes(ideal, &diff, &(&f.den * &g.den))? {
            return Ok(Some((k, ideal.normal_form(&diff)?)));
        }
    }
    Ok(None)
}

pub fn maps_equal(phi: &RationalMap, psi: &RationalMap) -> Result<bool> {
    Ok(map_residue(phi, psi)?.is_none())
}

/// `ψ ∘ φ` without checking dominance of `φ`.
pub fn compose_unchecked(phi: &RationalMap, psi: &RationalMap) -> Result<RationalMap> {
    if phi.target.arity() != psi.source.arity() || !same_varieties(&phi.target, &psi.source)? {
        return Err(Error::NotComposable("target of the first map is not the source of the second".into()));
    }
    let ideal = phi.source.ideal();
    let mut reps = Vec::new();
    for r in &phi.reps {
        'pair: for s in &psi.reps {
            let mut rep = Vec::with_capacity(s.len());
            for f in s {
                let c = f.compose(r);
                if ideal.contains(&c.den)? {
                    continue 'pair;
                }
                rep.push(c);
            }
            reps.push(rep);
        }
    }
    if reps.is_empty() {
        return Err(Error::ZeroDenominator("no pair of representatives composes".into()));
    }
    RationalMap::trusted(phi.source.clone(), psi.target.clone(), reps)
}

/// `ψ ∘ φ` for dominant `φ`.
pub fn compose(phi: &RationalMap, psi: &RationalMap) -> Result<RationalMap> {
    if !same_varieties(&phi.target, &psi.source)? {
        return Err(Error::NotComposable("target of the first map is not the source of the second".into()));
    }
    if !is_dominant(phi)? {
        return Err(Error::NotDominant);
    }
    compose_unchecked(phi, psi)
}

/// Rational inverse extracted from the graph: for each source coordinate
/// `x_k`, an element `a(y)·x_k − b(y)` of the graph ideal with `a` nonzero
/// on the target. The round trip is verified both ways.
pub fn inverse(phi: &RationalMap) -> Result<RationalMap> {
    let (n, m) = (phi.source.arity(), phi.target.arity());
    let graph = graph_closure(phi)?;
    let tgt_map: Vec<usize> = (0..n + m).map(|i| i.saturating_sub(n)).collect();
    let mut rep = Vec::with_capacity(n);
    for k in 0..n {
        let others: Vec<usize> = (0..n).filter(|&v| v != k).collect();
        let order = MonomialOrder::Block(vec![others.clone(), vec![k]]);
        let gb = graph.ideal().groebner(&order)?;
        let cmp = order.comparator(n + m);
        let mut found = None;
        for g in gb.polynomials() {
            let (lm, _) = g.leading_term(&cmp).expect("nonzero basis element");
            let e = lm.exponents();
            if e[k] != 1 || others.iter().any(|&v| e[v] != 0) {
                continue;
            }
            let mut a = Polynomial::zero(n + m);
            let mut b = Polynomial::zero(n + m);
            for (mono, c) in g.terms() {
                let mut ex = mono.exponents().to_vec();
                let lin = ex[k];
                ex[k] = 0;
                let t = Polynomial::monomial(crate::exactalg::Monomial::from_exponents(ex), c.clone());
                if lin == 1 {
                    a = &a + &t;
                } else {
                    b = &b + &t;
                }
            }
            let a = a.remap(&tgt_map, m);
            let b = b.remap(&tgt_map, m);
            if phi.target.ideal().contains(&a)? {
                continue;
            }
            found = Some(Fraction::new(-&b, a));
            break;
        }
        match found {
            Some(f) => rep.push(f),
            None => {
                return Err(Error::NotBirational(format!(
                    "no element linear in {} found in the graph basis",
                    phi.source.names()[k]
                )))
            }
        }
    }
    let inv = RationalMap::trusted(phi.target.clone(), phi.source.clone(), vec![rep])?;
    let fail = |e: Error| Error::NotBirational(format!("round trip failed: {e}"));
    let there = compose_unchecked(phi, &inv).map_err(fail)?;
    if !maps_equal(&there, &RationalMap::identity(phi.source.clone()))? {
        return Err(Error::NotBirational("inverse after map is not the identity".into()));
    }
    let back = compose_unchecked(&inv, phi).map_err(fail)?;
    if !maps_equal(&back, &RationalMap::identity(phi.target.clone()))? {
        return Err(Error::NotBirational("map after inverse is not the identity".into()));
    }
    Ok(inv)
}
