use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::One;

use super::groebner::{buchberger, reduce, OrderedPoly};
use super::monomial::Monomial;
use super::order::{Comparator, MonomialOrder};
use super::polynomial::Polynomial;
use crate::error::{Error, Result};

/// A reduced Gröbner basis for a fixed order.
pub struct GroebnerBasis {
    arity: usize,
    order: MonomialOrder,
    cmp: Comparator,
    basis: Vec<OrderedPoly>,
}

impl GroebnerBasis {
    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.basis.len() == 1 && self.basis[0].lm().is_one()
    }

    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.basis.iter().map(|p| p.to_poly(self.arity)).collect()
    }

    pub fn leading_monomials(&self) -> Vec<Monomial> {
        self.basis.iter().map(|p| p.lm().clone()).collect()
    }

    pub fn reduce(&self, f: &Polynomial) -> Polynomial {
        if f.is_zero() || self.basis.is_empty() {
            return f.clone();
        }
        let refs: Vec<&OrderedPoly> = self.basis.iter().collect();
        reduce(&OrderedPoly::from_poly(f, &self.cmp), &refs, &self.cmp).to_poly(self.arity)
    }

    /// Zero-dimensional iff every variable has a pure power among the
    /// leading monomials.
    pub fn is_zero_dimensional(&self) -> bool {
        if self.is_unit() {
            return true;
        }
        (0..self.arity).all(|v| {
            self.basis.iter().any(|p| {
                let e = p.lm().exponents();
                e[v] > 0 && e.iter().enumerate().all(|(i, &x)| i == v || x == 0)
            })
        })
    }
}

/// Ideal of a polynomial ring with `arity` variables.
///
/// Gröbner bases are computed lazily and cached per order. Concurrent
/// callers may race to fill the cache; the basis is canonical, so whichever
/// result lands is the same.
pub struct Ideal {
    arity: usize,
    gens: Vec<Polynomial>,
    cache: Mutex<Vec<Arc<GroebnerBasis>>>,
}

impl Clone for Ideal {
    fn clone(&self) -> Self {
        Ideal { arity: self.arity, gens: self.gens.clone(), cache: Mutex::new(self.cache.lock().unwrap().clone()) }
    }
}

impl fmt::Debug for Ideal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(&self.gens).finish()
    }
}

impl Ideal {
    pub fn new(arity: usize, gens: Vec<Polynomial>) -> Self {
        for g in &gens {
            assert_eq!(g.arity(), arity, "generator arity does not match ideal");
        }
        let gens = gens.into_iter().filter(|g| !g.is_zero()).collect();
        Ideal { arity, gens, cache: Mutex::new(Vec::new()) }
    }

    pub fn zero(arity: usize) -> Self {
        Self::new(arity, Vec::new())
    }

    pub fn unit(arity: usize) -> Self {
        Self::new(arity, vec![Polynomial::one(arity)])
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn is_zero_ideal(&self) -> bool {
        self.gens.is_empty()
    }

    pub fn groebner(&self, order: &MonomialOrder) -> Result<Arc<GroebnerBasis>> {
        if let Some(b) = self.cache.lock().unwrap().iter().find(|b| &b.order == order) {
            return Ok(b.clone());
        }
        let basis = buchberger(&self.gens, order, self.arity)?;
        let gb = Arc::new(GroebnerBasis {
            arity: self.arity,
            order: order.clone(),
            cmp: order.comparator(self.arity),
            basis,
        });
        let mut cache = self.cache.lock().unwrap();
        if let Some(b) = cache.iter().find(|b| &b.order == order) {
            return Ok(b.clone());
        }
        cache.push(gb.clone());
        Ok(gb)
    }

    /// Reduced Gröbner basis under grevlex, the default presentation.
    pub fn basis(&self) -> Result<Vec<Polynomial>> {
        Ok(self.groebner(&MonomialOrder::GrevLex)?.polynomials())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Result<Polynomial> {
        self.check_arity(f)?;
        Ok(self.groebner(&MonomialOrder::GrevLex)?.reduce(f))
    }

    pub fn contains(&self, f: &Polynomial) -> Result<bool> {
        if f.is_zero() {
            return Ok(true);
        }
        Ok(self.normal_form(f)?.is_zero())
    }

    pub fn contains_ideal(&self, other: &Ideal) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality by mutual containment.
    pub fn same_as(&self, other: &Ideal) -> Result<bool> {
        Ok(self.contains_ideal(other)? && other.contains_ideal(self)?)
    }

    /// True iff 1 lies in the ideal, i.e. the variety is empty over the
    /// algebraic closure.
    pub fn is_unit(&self) -> Result<bool> {
        if self.gens.iter().any(|g| g.is_constant()) {
            return Ok(true);
        }
        Ok(self.groebner(&MonomialOrder::GrevLex)?.is_unit())
    }

    pub fn with_generators(&self, extra: impl IntoIterator<Item = Polynomial>) -> Ideal {
        let mut gens = self.gens.clone();
        gens.extend(extra);
        Ideal::new(self.arity, gens)
    }

    pub fn sum(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.arity, other.arity);
        self.with_generators(other.gens.iter().cloned())
    }

    pub fn product(&self, other: &Ideal) -> Ideal {
        assert_eq!(self.arity, other.arity);
        let mut gens = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                gens.push(a * b);
            }
        }
        Ideal::new(self.arity, gens)
    }

    pub fn remap(&self, map: &[usize], arity: usize) -> Ideal {
        Ideal::new(arity, self.gens.iter().map(|g| g.remap(map, arity)).collect())
    }

    pub fn shift(&self, offset: usize, arity: usize) -> Ideal {
        Ideal::new(arity, self.gens.iter().map(|g| g.shift(offset, arity)).collect())
    }

    /// `I ∩ k[remaining variables]`, in the same ring.
    pub fn eliminate(&self, vars: &[usize]) -> Result<Ideal> {
        if vars.is_empty() {
            return Ok(self.clone());
        }
        let gb = self.groebner(&MonomialOrder::eliminating(vars))?;
        let kept = gb.polynomials().into_iter().filter(|p| vars.iter().all(|&v| !p.uses_var(v))).collect();
        Ok(Ideal::new(self.arity, kept))
    }

    /// Eliminates the trailing variables `arity..self.arity` and drops them
    /// from the ring.
    pub fn eliminate_tail(&self, arity: usize) -> Result<Ideal> {
        let vars: Vec<usize> = (arity..self.arity).collect();
        let e = self.eliminate(&vars)?;
        Ok(Ideal::new(arity, e.gens.iter().map(|g| g.truncate(arity)).collect()))
    }

    /// `I : f^∞` via an auxiliary variable.
    pub fn saturate(&self, f: &Polynomial) -> Result<Ideal> {
        self.check_arity(f)?;
        if f.is_zero() {
            return Err(Error::Invalid("saturation by the zero polynomial".into()));
        }
        if f.is_constant() {
            return Ok(self.clone());
        }
        let n = self.arity;
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.shift(0, n + 1)).collect();
        gens.push(&(&t * &f.shift(0, n + 1)) - &Polynomial::one(n + 1));
        Ideal::new(n + 1, gens).eliminate_tail(n)
    }

    /// `I ∩ J` via `t·I + (1 − t)·J`.
    pub fn intersect(&self, other: &Ideal) -> Result<Ideal> {
        assert_eq!(self.arity, other.arity);
        let n = self.arity;
        let t = Polynomial::var(n + 1, n);
        let one_minus_t = &Polynomial::one(n + 1) - &t;
        let mut gens = Vec::new();
        gens.extend(self.gens.iter().map(|g| &t * &g.shift(0, n + 1)));
        gens.extend(other.gens.iter().map(|g| &one_minus_t * &g.shift(0, n + 1)));
        Ideal::new(n + 1, gens).eliminate_tail(n)
    }

    /// `f ∈ √I` by the Rabinowitsch trick.
    pub fn radical_contains(&self, f: &Polynomial) -> Result<bool> {
        self.check_arity(f)?;
        if f.is_zero() {
            return Ok(true);
        }
        if self.contains(f)? {
            return Ok(true);
        }
        let n = self.arity;
        let t = Polynomial::var(n + 1, n);
        let mut gens: Vec<Polynomial> = self.gens.iter().map(|g| g.shift(0, n + 1)).collect();
        gens.push(&(&t * &f.shift(0, n + 1)) - &Polynomial::one(n + 1));
        Ideal::new(n + 1, gens).is_unit()
    }

    /// True iff the variety of `I` misses the principal open `D(w)`.
    pub fn is_empty_on(&self, w: &Polynomial) -> Result<bool> {
        if w.is_constant() {
            return if w.is_zero() { Ok(true) } else { self.is_unit() };
        }
        self.radical_contains(w)
    }

    fn check_arity(&self, f: &Polynomial) -> Result<()> {
        if f.arity() != self.arity {
            return Err(Error::ArityMismatch { expected: self.arity, found: f.arity() });
        }
        Ok(())
    }
}

/// Greatest common divisor, normalized monic in storage order.
///
/// Computed as `a·b / lcm(a, b)` with the lcm generating `(a) ∩ (b)`.
pub fn gcd(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let n = a.arity();
    if a.is_zero() {
        return Ok(b.monic());
    }
    if b.is_zero() {
        return Ok(a.monic());
    }
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(n));
    }
    let ca = a.monomial_content();
    let cb = b.monomial_content();
    let mono = Polynomial::monomial(ca.gcd(&cb), One::one());
    let a1 = a.div_monomial(&ca);
    let b1 = b.div_monomial(&cb);
    let core = gcd_primitive(&a1, &b1)?;
    Ok((&mono * &core).monic())
}

fn gcd_primitive(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    let n = a.arity();
    if a.is_constant() || b.is_constant() {
        return Ok(Polynomial::one(n));
    }
    if b.div_exact(a).is_some() {
        return Ok(a.monic());
    }
    if a.div_exact(b).is_some() {
        return Ok(b.monic());
    }
    let va = a.vars_used();
    let vb = b.vars_used();
    if va.iter().all(|v| !vb.contains(v)) {
        return Ok(Polynomial::one(n));
    }
    let lcm = Ideal::new(n, vec![a.clone()]).intersect(&Ideal::new(n, vec![b.clone()]))?;
    let basis = lcm.basis()?;
    debug_assert_eq!(basis.len(), 1, "intersection of principal ideals is principal");
    let prod = a * b;
    let g = prod.div_exact(&basis[0]).ok_or_else(|| Error::Invalid("lcm does not divide product".into()))?;
    Ok(g.monic())
}

/// Writes `f = Σ m·c_m` over the distinct monomials `m` in `vars`; returns
/// `(m, c_m)` with `c_m` free of `vars`, descending in lex on `vars`.
pub fn coefficients_wrt(f: &Polynomial, vars: &[usize]) -> Vec<(Monomial, Polynomial)> {
    let n = f.arity();
    let mut groups: Vec<(Monomial, Vec<(Monomial, num_rational::BigRational)>)> = Vec::new();
    for (m, c) in f.terms() {
        let e = m.exponents();
        let mut key = vec![0u32; n];
        let mut rest = e.to_vec();
        for &v in vars {
            key[v] = e[v];
            rest[v] = 0;
        }
        let key = Monomial::from_exponents(key);
        let rest = Monomial::from_exponents(rest);
        match groups.iter_mut().find(|(k, _)| *k == key) {
            Some((_, ts)) => ts.push((rest, c.clone())),
            None => groups.push((key, vec![(rest, c.clone())])),
        }
    }
    let lex = MonomialOrder::Lex.comparator(n);
    groups.sort_by(|a, b| lex.cmp(&b.0, &a.0));
    groups.into_iter().map(|(k, ts)| (k, Polynomial::from_terms(n, ts))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    fn vars(n: usize) -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(n, i)).collect()
    }

    fn c(n: usize, k: i64) -> Polynomial {
        Polynomial::constant(n, int(k))
    }

    #[test]
    fn normal_form_examples() {
        let v = vars(1);
        let x = &v[0];
        let i = Ideal::new(1, vec![x - &c(1, 1)]);
        assert!(i.normal_form(&(&(x * x) - &c(1, 1))).unwrap().is_zero());
        assert_eq!(Ideal::zero(1).normal_form(x).unwrap(), x.clone());
        let v = vars(2);
        let j = Ideal::new(2, vec![&(&v[0] * &v[1]) - &c(2, 1)]);
        assert_eq!(j.normal_form(&(&v[0] * &v[1])).unwrap(), c(2, 1));
        assert!(matches!(j.normal_form(x), Err(Error::ArityMismatch { .. })));
    }

    #[test]
    fn lex_linear_basis() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let i = Ideal::new(2, vec![x - &c(2, 1), y - x]);
        let gb = i.groebner(&MonomialOrder::Lex).unwrap().polynomials();
        assert_eq!(gb, vec![x - &c(2, 1), y - &c(2, 1)]);
    }

    #[test]
    fn principal_basis_is_monic() {
        let v = vars(2);
        let f = &(&v[0] * &v[1]).scale(&int(3)) + &c(2, 6);
        let gb = Ideal::new(2, vec![f.clone()]).basis().unwrap();
        assert_eq!(gb, vec![f.scale(&num_rational::BigRational::new(1.into(), 3.into()))]);
    }

    #[test]
    fn saturation_examples() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let s = Ideal::new(2, vec![x * y]).saturate(x).unwrap();
        assert!(s.same_as(&Ideal::new(2, vec![y.clone()])).unwrap());
        let s = Ideal::new(2, vec![x.clone()]).saturate(y).unwrap();
        assert!(s.same_as(&Ideal::new(2, vec![x.clone()])).unwrap());
        let s = Ideal::new(2, vec![x * x]).saturate(x).unwrap();
        assert!(s.is_unit().unwrap());
    }

    #[test]
    fn emptiness_examples() {
        let v = vars(2);
        let (u, s) = (&v[0], &v[1]);
        assert!(Ideal::new(2, vec![u + s, &(u + s) - &c(2, 1)]).is_unit().unwrap());
        assert!(!Ideal::new(2, vec![u - &c(2, 1)]).is_unit().unwrap());
        assert!(Ideal::new(2, vec![u * u, u - &c(2, 1)]).is_unit().unwrap());
    }

    #[test]
    fn gcd_cancels_common_factor() {
        let v = vars(2);
        let (u, t) = (&v[0], &v[1]);
        let a = &(u + &c(2, 1)) * &(u * t);
        let b = &(u + &c(2, 1)) * &(u + &c(2, 2));
        assert_eq!(gcd(&a, &b).unwrap(), u + &c(2, 1));
        assert_eq!(gcd(&(u * u), &(u * t)).unwrap(), u.clone());
        assert!(gcd(&(u + &c(2, 1)), &(t + &c(2, 1))).unwrap().is_one());
    }

    #[test]
    fn intersection_and_radical() {
        let v = vars(2);
        let (x, y) = (&v[0], &v[1]);
        let i = Ideal::new(2, vec![x.clone()]).intersect(&Ideal::new(2, vec![y.clone()])).unwrap();
        assert!(i.same_as(&Ideal::new(2, vec![x * y])).unwrap());
        let sq = Ideal::new(2, vec![x * x]);
        assert!(!sq.contains(x).unwrap());
        assert!(sq.radical_contains(x).unwrap());
    }

    #[test]
    fn coefficient_collection() {
        // variables u, s, t, v
        let v = vars(4);
        let (u, s, t, w) = (&v[0], &v[1], &v[2], &v[3]);
        let f = &(u * u) + &(u * s);
        let cs: Vec<Polynomial> = coefficients_wrt(&f, &[1]).into_iter().map(|(_, c)| c).collect();
        assert_eq!(cs, vec![u.clone(), u * u]);
        let g = &(&(&(s * s) * t) + &(s * u)) + w;
        let cs: Vec<Polynomial> = coefficients_wrt(&g, &[1]).into_iter().map(|(_, c)| c).collect();
        assert_eq!(cs, vec![t.clone(), u.clone(), w.clone()]);
        let cs = coefficients_wrt(u, &[0]);
        assert_eq!(cs.len(), 1);
        assert!(cs[0].1.is_one());
    }
}
