use std::sync::Arc;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::exactalg::{gcd, Ideal, Polynomial, Scalar};

/// An affine variety: named ambient coordinates and a defining ideal.
///
/// Irreducibility is asserted by the caller, never verified.
#[derive(Clone, Debug)]
pub struct AffineVariety {
    names: Vec<String>,
    ideal: Ideal,
    irreducible: bool,
}

impl AffineVariety {
    pub fn affine_space<S: AsRef<str>>(names: &[S]) -> Self {
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        let n = names.len();
        AffineVariety { names, ideal: Ideal::zero(n), irreducible: true }
    }

    /// Validates that the defining ideal is proper.
    pub fn new(names: Vec<String>, generators: Vec<Polynomial>, irreducible: bool) -> Result<Self> {
        let n = names.len();
        for g in &generators {
            if g.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: g.arity() });
            }
        }
        let ideal = Ideal::new(n, generators);
        if ideal.is_unit()? {
            return Err(Error::Invalid("defining ideal is the unit ideal".into()));
        }
        Ok(AffineVariety { names, ideal, irreducible })
    }

    pub(crate) fn from_parts(names: Vec<String>, ideal: Ideal, irreducible: bool) -> Self {
        AffineVariety { names, ideal, irreducible }
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn arity(&self) -> usize {
        self.names.len()
    }

    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn is_irreducible(&self) -> bool {
        self.irreducible
    }

    pub fn var(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn coordinate(&self, index: usize) -> Polynomial {
        Polynomial::var(self.arity(), index)
    }

    pub fn contains_point(&self, p: &[Scalar]) -> bool {
        p.len() == self.arity() && self.ideal.generators().iter().all(|g| g.eval(p).is_zero())
    }

    /// `self × other`, renaming clashing coordinates of `other` with primes.
    pub fn product(&self, other: &AffineVariety) -> AffineVariety {
        let n = self.arity() + other.arity();
        let mut names = self.names.clone();
        for name in &other.names {
            let mut candidate = name.clone();
            while names.contains(&candidate) {
                candidate.push('\'');
            }
            names.push(candidate);
        }
        let ideal = self.ideal.shift(0, n).sum(&other.ideal.shift(self.arity(), n));
        AffineVariety { names, ideal, irreducible: self.irreducible && other.irreducible }
    }

    /// Same coordinates and same ideal.
    pub fn same_as(&self, other: &AffineVariety) -> Result<bool> {
        if self.names != other.names {
            return Ok(false);
        }
        self.ideal.same_as(&other.ideal)
    }

    pub fn format(&self, p: &Polynomial) -> String {
        p.format(&self.names)
    }
}

/// `a·b / gcd(a, b)`, monic.
pub(crate) fn lcm(a: &Polynomial, b: &Polynomial) -> Result<Polynomial> {
    if a.is_constant() {
        return Ok(b.monic());
    }
    if b.is_constant() {
        return Ok(a.monic());
    }
    let g = gcd(a, b)?;
    Ok((a * &b.div_exact(&g).expect("gcd divides")).monic())
}

/// An open subset `⋃ D(w)` of an affine variety, given by principal-open
/// witnesses. The closed complement is `V(I_host + (w…))`.
#[derive(Clone, Debug)]
pub struct OpenSubset {
    host: Arc<AffineVariety>,
    witnesses: Vec<Polynomial>,
}

impl OpenSubset {
    pub fn whole(host: Arc<AffineVariety>) -> Self {
        let n = host.arity();
        OpenSubset { host, witnesses: vec![Polynomial::one(n)] }
    }

    pub fn principal(host: Arc<AffineVariety>, q: Polynomial) -> Result<Self> {
        Self::from_witnesses(host, vec![q])
    }

    /// Normalizes witnesses modulo the host ideal, dropping those that
    /// vanish identically.
    pub fn from_witnesses(host: Arc<AffineVariety>, witnesses: Vec<Polynomial>) -> Result<Self> {
        let n = host.arity();
        let mut ws: Vec<Polynomial> = Vec::new();
        for w in witnesses {
            if w.arity() != n {
                return Err(Error::ArityMismatch { expected: n, found: w.arity() });
            }
            let r = host.ideal().normal_form(&w)?;
            if r.is_zero() {
                continue;
            }
            if r.is_constant() {
                return Ok(Self::whole(host));
            }
            let w = w.monic();
            if !ws.contains(&w) {
                ws.push(w);
            }
        }
        Ok(OpenSubset { host, witnesses: ws })
    }

    pub fn host(&self) -> &Arc<AffineVariety> {
        &self.host
    }

    pub fn witnesses(&self) -> &[Polynomial] {
        &self.witnesses
    }

    /// Syntactically the whole host.
    pub fn is_whole(&self) -> bool {
        self.witnesses.len() == 1 && self.witnesses[0].is_one()
    }

    pub fn complement_ideal(&self) -> Ideal {
        self.host.ideal().with_generators(self.witnesses.iter().cloned())
    }

    /// Reduced basis of the closed complement.
    pub fn complement_basis(&self) -> Result<Vec<Polynomial>> {
        self.complement_ideal().basis()
    }

    /// Empty over the algebraic closure: every witness lies in the radical
    /// of the host ideal.
    pub fn is_empty(&self) -> Result<bool> {
        for w in &self.witnesses {
            if !self.host.ideal().radical_contains(w)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Nonempty open in an irreducible host is dense.
    pub fn is_dense(&self) -> Result<bool> {
        Ok(self.host.is_irreducible() && !self.is_empty()?)
    }

    /// Membership of a point of the host.
    pub fn contains(&self, p: &[Scalar]) -> bool {
        self.witnesses.iter().any(|w| !w.eval(p).is_zero())
    }

    pub fn intersect(&self, other: &OpenSubset) -> Result<OpenSubset> {
        if self.is_whole() {
            return Ok(OpenSubset { host: self.host.clone(), witnesses: other.witnesses.clone() });
        }
        if other.is_whole() {
            return Ok(self.clone());
        }
        let mut ws = Vec::new();
        for a in &self.witnesses {
            for b in &other.witnesses {
                ws.push(lcm(a, b)?);
            }
        }
        Self::from_witnesses(self.host.clone(), ws)
    }

    pub fn union(&self, other: &OpenSubset) -> Result<OpenSubset> {
        let mut ws = self.witnesses.clone();
        ws.extend(other.witnesses.iter().cloned());
        Self::from_witnesses(self.host.clone(), ws)
    }

    /// The closure of `V(j) ∩ self` inside the host: `⋂_w (j : w^∞)`.
    pub fn restrict_closed(&self, j: &Ideal) -> Result<Ideal> {
        let mut acc: Option<Ideal> = None;
        for w in &self.witnesses {
            let s = j.saturate(w)?;
            acc = Some(match acc {
                None => s,
                Some(a) => a.intersect(&s)?,
            });
        }
        Ok(acc.unwrap_or_else(|| Ideal::unit(j.arity())))
    }

    /// Drops witnesses whose open is contained in another's, preferring
    /// low degree.
    pub fn simplified(&self) -> Result<OpenSubset> {
        if self.witnesses.len() < 2 {
            return Ok(self.clone());
        }
        let mut ws = self.witnesses.clone();
        ws.sort_by_key(|w| (w.total_degree(), w.len()));
        let ideal = self.host.ideal();
        let mut kept: Vec<Polynomial> = Vec::new();
        for (i, w) in ws.iter().enumerate() {
            let mut dominated = false;
            for (j, v) in ws.iter().enumerate() {
                // earlier witnesses that were dropped are covered by a kept one
                if i == j || (j < i && !kept.contains(v)) {
                    continue;
                }
                // D(w) ⊆ D(v) iff w vanishes wherever v does
                if ideal.with_generators([v.clone()]).radical_contains(w)? {
                    let mutual = ideal.with_generators([w.clone()]).radical_contains(v)?;
                    if !mutual || j < i {
                        dominated = true;
                        break;
                    }
                }
            }
            if !dominated {
                kept.push(w.clone());
            }
        }
        Ok(OpenSubset { host: self.host.clone(), witnesses: kept })
    }

    /// Witnesses pulled back along a coordinate embedding into a product:
    /// the open `self × other-factor` inside `product`.
    pub(crate) fn embed(&self, product: Arc<AffineVariety>, offset: usize) -> OpenSubset {
        let n = product.arity();
        let ws = self.witnesses.iter().map(|w| w.shift(offset, n)).collect();
        OpenSubset { host: product, witnesses: ws }
    }
}
