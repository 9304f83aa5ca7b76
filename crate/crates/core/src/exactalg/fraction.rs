use std::collections::HashMap;

use num_traits::Zero;

use super::ideal::{gcd, Ideal};
use super::polynomial::Polynomial;
use super::scalar::Scalar;
use crate::error::{Error, Result};

/// A quotient of polynomials over a common ring.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Fraction {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl Fraction {
    pub fn new(num: Polynomial, den: Polynomial) -> Self {
        assert_eq!(num.arity(), den.arity(), "fraction arity mismatch");
        assert!(!den.is_zero(), "zero denominator");
        Fraction { num, den }
    }

    pub fn poly(p: Polynomial) -> Self {
        let one = Polynomial::one(p.arity());
        Fraction { num: p, den: one }
    }

    pub fn var(arity: usize, index: usize) -> Self {
        Self::poly(Polynomial::var(arity, index))
    }

    pub fn arity(&self) -> usize {
        self.num.arity()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant()
    }

    /// The polynomial this fraction equals, when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<Polynomial> {
        self.den.constant_value().map(|c| self.num.scale(&c.recip()))
    }

    pub fn eval(&self, point: &[Scalar]) -> Option<Scalar> {
        let d = self.den.eval(point);
        if d.is_zero() {
            None
        } else {
            Some(self.num.eval(point) / d)
        }
    }

    /// Substitutes `images[i]` for variable `i`.
    pub fn compose(&self, images: &[Fraction]) -> Fraction {
        let n = substitute(&self.num, images);
        let d = substitute(&self.den, images);
        Fraction { num: &n.num * &d.den, den: &n.den * &d.num }
    }

    /// Reduces numerator and denominator modulo `ideal`, cancels their gcd
    /// and makes the denominator monic.
    pub fn normalized(&self, ideal: Option<&Ideal>) -> Result<Fraction> {
        let (mut num, mut den) = match ideal {
            Some(i) if !i.is_zero_ideal() => (i.normal_form(&self.num)?, i.normal_form(&self.den)?),
            _ => (self.num.clone(), self.den.clone()),
        };
        if den.is_zero() {
            return Err(Error::ZeroDenominator(format!("{:?}", self.den)));
        }
        if num.is_zero() {
            return Ok(Fraction::poly(num));
        }
        if !den.is_constant() {
            let g = gcd(&num, &den)?;
            if !g.is_constant() {
                num = num.div_exact(&g).expect("gcd divides numerator");
                den = den.div_exact(&g).expect("gcd divides denominator");
            }
        }
        let lc = den.leading_coefficient().cloned().expect("nonzero denominator");
        let inv = lc.recip();
        Ok(Fraction { num: num.scale(&inv), den: den.scale(&inv) })
    }

    /// Cross-multiplied difference `num·other.den − other.num·den`.
    pub fn cross_difference(&self, other: &Fraction) -> Polynomial {
        &(&self.num * &other.den) - &(&other.num * &self.den)
    }

    pub fn format(&self, names: &[String]) -> String {
        let num = self.num.format(names);
        if self.den.is_one() {
            return num;
        }
        if let Some(c) = self.den.constant_value() {
            let p = self.num.scale(&c.recip());
            return p.format(names);
        }
        let num = if self.num.len() > 1 { format!("({num})") } else { num };
        let den_s = self.den.format(names);
        let simple = self.den.len() == 1 && self.den.terms()[0].0.degree() == 1;
        if simple {
            format!("{num}/{den_s}")
        } else {
            format!("{num}/({den_s})")
        }
    }
}

/// Substitutes fractions into a polynomial over a common denominator
/// `Π den_i^{deg_i(p)}`.
pub fn substitute(p: &Polynomial, images: &[Fraction]) -> Fraction {
    assert_eq!(images.len(), p.arity(), "substitution needs one image per variable");
    let target = images.first().map_or(0, |f| f.arity());
    let degs: Vec<u32> = (0..p.arity()).map(|v| p.degree_in(v)).collect();
    let mut npow: HashMap<(usize, u32), Polynomial> = HashMap::new();
    let mut dpow: HashMap<(usize, u32), Polynomial> = HashMap::new();
    let mut num = Polynomial::zero(target);
    for (m, c) in p.terms() {
        let mut t = Polynomial::constant(target, c.clone());
        for (v, &e) in m.exponents().iter().enumerate() {
            if e > 0 {
                let np = npow.entry((v, e)).or_insert_with(|| images[v].num.pow(e));
                t = &t * np;
            }
            let rest = degs[v] - e;
            if rest > 0 && !images[v].den.is_one() {
                let dp = dpow.entry((v, rest)).or_insert_with(|| images[v].den.pow(rest));
                t = &t * dp;
            }
        }
        num = &num + &t;
    }
    let mut den = Polynomial::one(target);
    for (v, &d) in degs.iter().enumerate() {
        if d > 0 && !images[v].den.is_one() {
            den = &den * &images[v].den.pow(d);
        }
    }
    Fraction { num, den }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::scalar::int;

    fn names() -> Vec<String> {
        vec!["u".into(), "t".into()]
    }

    #[test]
    fn compose_cancels_to_simple_form() {
        let u = Polynomial::var(2, 0);
        let t = Polynomial::var(2, 1);
        let one = Polynomial::one(2);
        let up1 = &u + &one;
        // rho_1 = (u+1, u*t/(u+1))
        let rho = [Fraction::poly(up1.clone()), Fraction::new(&u * &t, up1.clone())];
        let twice: Vec<Fraction> = rho.iter().map(|f| f.compose(&rho).normalized(None).unwrap()).collect();
        assert_eq!(twice[0].format(&names()), "u+2");
        assert_eq!(twice[1].format(&names()), "u*t/(u+2)");
    }

    #[test]
    fn inversion_is_involutive() {
        let x = Polynomial::var(2, 0);
        let y = Polynomial::var(2, 1);
        let one = Polynomial::one(2);
        let s = [Fraction::new(one.clone(), x.clone()), Fraction::new(one.clone(), y.clone())];
        let back: Vec<Fraction> = s.iter().map(|f| f.compose(&s).normalized(None).unwrap()).collect();
        assert_eq!(back, vec![Fraction::poly(x), Fraction::poly(y)]);
        assert_eq!(s[0].eval(&[int(2), int(3)]), Some(num_rational::BigRational::new(1.into(), 2.into())));
        assert_eq!(s[0].eval(&[int(0), int(3)]), None);
    }
}
