use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::monomial::Monomial;
use super::order::Comparator;
use super::scalar::{fmt_scalar, Scalar};

/// Graded reverse lexicographic comparison, the canonical storage order.
pub(crate) fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    for (x, y) in a.exponents().iter().zip(b.exponents()).rev() {
        match x.cmp(y) {
            Ordering::Equal => {}
            o => return o.reverse(),
        }
    }
    Ordering::Equal
}

/// Multivariate polynomial with exact rational coefficients.
///
/// Terms are kept with distinct exponent vectors, nonzero coefficients and
/// strictly descending in graded reverse lexicographic order, so structural
/// equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Polynomial {
    arity: usize,
    terms: Vec<(Monomial, Scalar)>,
}

impl Polynomial {
    pub fn zero(arity: usize) -> Self {
        Polynomial { arity, terms: Vec::new() }
    }

    pub fn one(arity: usize) -> Self {
        Self::constant(arity, Scalar::one())
    }

    pub fn constant(arity: usize, c: Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(arity);
        }
        Polynomial { arity, terms: vec![(Monomial::one(arity), c)] }
    }

    pub fn var(arity: usize, index: usize) -> Self {
        assert!(index < arity, "variable {index} out of range for arity {arity}");
        Polynomial { arity, terms: vec![(Monomial::var(arity, index), Scalar::one())] }
    }

    pub fn monomial(m: Monomial, c: Scalar) -> Self {
        let arity = m.arity();
        if c.is_zero() {
            return Self::zero(arity);
        }
        Polynomial { arity, terms: vec![(m, c)] }
    }

    /// Builds a polynomial from arbitrary terms, merging duplicates and
    /// dropping zeros.
    pub fn from_terms<I>(arity: usize, terms: I) -> Self
    where
        I: IntoIterator<Item = (Monomial, Scalar)>,
    {
        let mut acc: HashMap<Monomial, Scalar> = HashMap::new();
        for (m, c) in terms {
            debug_assert_eq!(m.arity(), arity);
            *acc.entry(m).or_insert_with(Scalar::zero) += c;
        }
        let mut terms: Vec<_> = acc.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        terms.sort_by(|a, b| grevlex(&b.0, &a.0));
        Polynomial { arity, terms }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn terms(&self) -> &[(Monomial, Scalar)] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<(Monomial, Scalar)> {
        self.terms
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms[0].0.is_one())
    }

    /// The constant value, if the polynomial is constant.
    pub fn constant_value(&self) -> Option<Scalar> {
        match self.terms.as_slice() {
            [] => Some(Scalar::zero()),
            [(m, c)] if m.is_one() => Some(c.clone()),
            _ => None,
        }
    }

    pub fn is_one(&self) -> bool {
        self.constant_value().is_some_and(|c| c.is_one())
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.first().map_or(0, |(m, _)| m.degree())
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.iter().map(|(m, _)| m.exponent(var)).max().unwrap_or(0)
    }

    pub fn uses_var(&self, var: usize) -> bool {
        self.terms.iter().any(|(m, _)| m.exponent(var) > 0)
    }

    pub fn vars_used(&self) -> Vec<usize> {
        (0..self.arity).filter(|&v| self.uses_var(v)).collect()
    }

    /// Leading term under an arbitrary order.
    pub fn leading_term(&self, cmp: &Comparator) -> Option<&(Monomial, Scalar)> {
        self.terms.iter().max_by(|a, b| cmp.cmp(&a.0, &b.0))
    }

    /// Coefficient of the leading term in storage order.
    pub fn leading_coefficient(&self) -> Option<&Scalar> {
        self.terms.first().map(|(_, c)| c)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(m, a)| (m.clone(), a * c)).collect() }
    }

    /// Scales so that the leading coefficient in storage order is one.
    pub fn monic(&self) -> Self {
        match self.leading_coefficient() {
            Some(c) if !c.is_one() => self.scale(&c.recip()),
            _ => self.clone(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero(self.arity);
        }
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(n, a)| (n.mul(m), a * c)).collect() }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.arity);
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn eval(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.arity, "evaluation point has wrong arity");
        let mut total = Scalar::zero();
        for (m, c) in &self.terms {
            let mut t = c.clone();
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    t *= num_traits::pow(point[v].clone(), e as usize);
                }
            }
            total += t;
        }
        total
    }

    /// Substitutes constants for the variables with `Some` values; arity is
    /// unchanged and substituted variables no longer occur.
    pub fn eval_partial(&self, assign: &[Option<Scalar>]) -> Self {
        assert_eq!(assign.len(), self.arity);
        let terms = self.terms.iter().map(|(m, c)| {
            let mut c = c.clone();
            let mut e = m.exponents().to_vec();
            for (v, val) in assign.iter().enumerate() {
                if let Some(val) = val {
                    if e[v] > 0 {
                        c *= num_traits::pow(val.clone(), e[v] as usize);
                        e[v] = 0;
                    }
                }
            }
            (Monomial::from_exponents(e), c)
        });
        Self::from_terms(self.arity, terms)
    }

    /// Moves variable `i` to variable `map[i]` of a ring with `arity`
    /// variables.
    pub fn remap(&self, map: &[usize], arity: usize) -> Self {
        assert_eq!(map.len(), self.arity);
        Self::from_terms(arity, self.terms.iter().map(|(m, c)| (m.remap(map, arity), c.clone())))
    }

    /// Embeds into a larger ring, placing variable `i` at `offset + i`.
    pub fn shift(&self, offset: usize, arity: usize) -> Self {
        let map: Vec<usize> = (0..self.arity).map(|i| offset + i).collect();
        self.remap(&map, arity)
    }

    /// Restricts to the first `arity` variables; panics if a dropped
    /// variable occurs.
    pub fn truncate(&self, arity: usize) -> Self {
        let terms = self.terms.iter().map(|(m, c)| {
            assert!(m.exponents()[arity..].iter().all(|&e| e == 0), "truncating a used variable");
            (Monomial::from_exponents(m.exponents()[..arity].to_vec()), c.clone())
        });
        Self::from_terms(arity, terms)
    }

    /// Substitutes polynomial `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Polynomial]) -> Self {
        assert_eq!(images.len(), self.arity, "composition needs one image per variable");
        let target = images.first().map_or(0, |p| p.arity);
        let mut cache: HashMap<(usize, u32), Polynomial> = HashMap::new();
        let mut acc = Self::zero(target);
        for (m, c) in &self.terms {
            let mut t = Self::constant(target, c.clone());
            for (v, &e) in m.exponents().iter().enumerate() {
                if e > 0 {
                    let p = cache.entry((v, e)).or_insert_with(|| images[v].pow(e));
                    t = &t * p;
                }
            }
            acc = &acc + &t;
        }
        acc
    }

    pub fn derivative(&self, var: usize) -> Self {
        let terms = self.terms.iter().filter(|(m, _)| m.exponent(var) > 0).map(|(m, c)| {
            let mut e = m.exponents().to_vec();
            let k = e[var];
            e[var] -= 1;
            (Monomial::from_exponents(e), c * Scalar::from_integer(k.into()))
        });
        Self::from_terms(self.arity, terms)
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.iter();
        match it.next() {
            None => Monomial::one(self.arity),
            Some((m, _)) => it.fold(m.clone(), |acc, (n, _)| acc.gcd(n)),
        }
    }

    /// Divides every term by a monomial that divides all of them.
    pub fn div_monomial(&self, m: &Monomial) -> Self {
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(n, c)| (m.quotient_of(n), c.clone())).collect() }
    }

    /// Exact quotient `self / d`, or `None` when `d` does not divide.
    pub fn div_exact(&self, d: &Polynomial) -> Option<Polynomial> {
        assert!(!d.is_zero(), "division by zero polynomial");
        if self.is_zero() {
            return Some(Self::zero(self.arity));
        }
        let (lm, lc) = d.terms[0].clone();
        let mut rem = self.clone();
        let mut quot: Vec<(Monomial, Scalar)> = Vec::new();
        while let Some((m, c)) = rem.terms.first().cloned() {
            if !lm.divides(&m) {
                return None;
            }
            let qm = lm.quotient_of(&m);
            let qc = c / &lc;
            rem = &rem - &d.mul_monomial(&qm, &qc);
            quot.push((qm, qc));
        }
        Some(Self::from_terms(self.arity, quot))
    }

    pub fn format(&self, names: &[String]) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut out = String::new();
        for (i, (m, c)) in self.terms.iter().enumerate() {
            let neg = c < &Scalar::zero();
            let abs = if neg { -c.clone() } else { c.clone() };
            if i == 0 {
                if neg {
                    out.push('-');
                }
            } else {
                out.push(if neg { '-' } else { '+' });
            }
            let mono = m.format(names);
            if mono.is_empty() {
                out.push_str(&fmt_scalar(&abs));
            } else if abs.is_one() {
                out.push_str(&mono);
            } else {
                out.push_str(&fmt_scalar(&abs));
                out.push('*');
                out.push_str(&mono);
            }
        }
        out
    }
}

pub fn default_names(arity: usize) -> Vec<String> {
    (0..arity).map(|i| format!("x{i}")).collect()
}

impl fmt::Debug for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&default_names(self.arity)))
    }
}

impl fmt::Display for Polynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.format(&default_names(self.arity)))
    }
}

fn merge(a: &Polynomial, b: &Polynomial, negate_b: bool) -> Polynomial {
    assert_eq!(a.arity, b.arity, "arity mismatch in polynomial arithmetic");
    let mut out = Vec::with_capacity(a.terms.len() + b.terms.len());
    let (mut i, mut j) = (0, 0);
    while i < a.terms.len() && j < b.terms.len() {
        match grevlex(&a.terms[i].0, &b.terms[j].0) {
            Ordering::Greater => {
                out.push(a.terms[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (m, c) = &b.terms[j];
                out.push((m.clone(), if negate_b { -c.clone() } else { c.clone() }));
                j += 1;
            }
            Ordering::Equal => {
                let c = if negate_b { &a.terms[i].1 - &b.terms[j].1 } else { &a.terms[i].1 + &b.terms[j].1 };
                if !c.is_zero() {
                    out.push((a.terms[i].0.clone(), c));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out.extend(a.terms[i..].iter().cloned());
    out.extend(b.terms[j..].iter().map(|(m, c)| (m.clone(), if negate_b { -c.clone() } else { c.clone() })));
    Polynomial { arity: a.arity, terms: out }
}

impl Add for &Polynomial {
    type Output = Polynomial;
    fn add(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, false)
    }
}

impl Sub for &Polynomial {
    type Output = Polynomial;
    fn sub(self, rhs: &Polynomial) -> Polynomial {
        merge(self, rhs, true)
    }
}

impl Neg for &Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        Polynomial { arity: self.arity, terms: self.terms.iter().map(|(m, c)| (m.clone(), -c.clone())).collect() }
    }
}

impl Mul for &Polynomial {
    type Output = Polynomial;
    fn mul(self, rhs: &Polynomial) -> Polynomial {
        assert_eq!(self.arity, rhs.arity, "arity mismatch in polynomial arithmetic");
        if self.is_zero() || rhs.is_zero() {
            return Polynomial::zero(self.arity);
        }
        if rhs.terms.len() == 1 {
            return self.mul_monomial(&rhs.terms[0].0, &rhs.terms[0].1);
        }
        if self.terms.len() == 1 {
            return rhs.mul_monomial(&self.terms[0].0, &self.terms[0].1);
        }
        let mut acc: HashMap<Monomial, Scalar> = HashMap::with_capacity(self.terms.len() * rhs.terms.len());
        for (m, a) in &self.terms {
            for (n, b) in &rhs.terms {
                *acc.entry(m.mul(n)).or_insert_with(Scalar::zero) += a * b;
            }
        }
        Polynomial::from_terms(self.arity, acc)
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr for Polynomial {
            type Output = Polynomial;
            fn $f(self, rhs: Polynomial) -> Polynomial {
                (&self).$f(&rhs)
            }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for Polynomial {
    type Output = Polynomial;
    fn neg(self) -> Polynomial {
        -&self
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    fn xy() -> (Polynomial, Polynomial) {
        (Polynomial::var(2, 0), Polynomial::var(2, 1))
    }

    #[test]
    fn arithmetic_and_format() {
        let (x, y) = xy();
        let names = vec!["x".to_string(), "y".to_string()];
        let p = &(&x * &y) - &Polynomial::one(2);
        assert_eq!(p.format(&names), "x*y-1");
        let sq = (&x + &y).pow(2);
        assert_eq!(sq.format(&names), "x^2+2*x*y+y^2");
        assert!((&sq - &sq).is_zero());
    }

    #[test]
    fn exact_division() {
        let (x, y) = xy();
        let f = &(&x * &x) - &(&y * &y);
        let g = &x - &y;
        assert_eq!(f.div_exact(&g).unwrap(), &x + &y);
        assert!(f.div_exact(&(&x + &Polynomial::one(2))).is_none());
    }

    #[test]
    fn compose_and_eval() {
        let (x, y) = xy();
        let f = &(&x * &y) + &x;
        let g = f.compose(&[&y + &Polynomial::one(2), x.clone()]);
        // (y+1)*x + (y+1)
        assert_eq!(g.eval(&[int(2), int(3)]), int(12));
        let part = f.eval_partial(&[Some(int(2)), None]);
        assert_eq!(part, &y.scale(&int(2)) + &Polynomial::constant(2, int(2)));
    }
}
