use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::exactalg::{Fraction, Polynomial};
use crate::varmaps::{compose_unchecked, map_residue, maps_equal, vanishes, AffineVariety, OpenSubset, RationalMap};

use super::group::{AlgebraicGroup, GroupPoint, Structure};
use super::locus::GRegularLocus;

/// The action law: one map `G × X ⇢ X`, or one map per element of a
/// finite group.
#[derive(Clone, Debug)]
pub enum ActionLaw {
    Parametric(RationalMap),
    Finite(Vec<RationalMap>),
}

/// `ρ̃` and its inverse: one pair for a parametric action, one pair per
/// element (`ρ_g`, `ρ_{g⁻¹}`) for a finite group.
#[derive(Clone, Debug)]
pub struct Lift {
    pub tilde: Vec<RationalMap>,
    pub inverse: Vec<RationalMap>,
}

/// A validated rational action, possibly restricted to an open subset of
/// its variety.
#[derive(Clone, Debug)]
pub struct RationalAction {
    group: Arc<AlgebraicGroup>,
    space: Arc<AffineVariety>,
    law: ActionLaw,
    domain: OpenSubset,
    lift: OnceLock<Lift>,
    xreg: OnceLock<GRegularLocus>,
}

/// `G × X`, the source of a parametric action law.
pub fn action_space(group: &AlgebraicGroup, space: &AffineVariety) -> Result<Arc<AffineVariety>> {
    let g = group.variety().ok_or_else(|| Error::Invalid("a finite group acts through one map per element".into()))?;
    Ok(Arc::new(g.product(space)))
}

fn not_an_action(law: impl Into<String>, residue: String) -> Error {
    Error::NotAnAction { law: law.into(), residue }
}

/// Applies the first representative whose denominators survive the
/// substitution modulo `ideal`.
fn apply(map: &RationalMap, images: &[Fraction], ideal: &crate::exactalg::Ideal) -> Result<Option<Vec<Fraction>>> {
    'rep: for r in map.representatives() {
        let mut out = Vec::with_capacity(r.len());
        for f in r {
            let c = f.compose(images);
            if ideal.contains(&c.den)? {
                continue 'rep;
            }
            out.push(c);
        }
        return Ok(Some(out));
    }
    Ok(None)
}

fn vars(arity: usize, offset: usize, count: usize) -> Vec<Fraction> {
    (0..count).map(|i| Fraction::var(arity, offset + i)).collect()
}

pub fn make_rational_action(
    group: Arc<AlgebraicGroup>,
    space: Arc<AffineVariety>,
    law: ActionLaw,
) -> Result<RationalAction> {
    let domain = OpenSubset::whole(space.clone());
    let action = RationalAction { group, space, law, domain, lift: OnceLock::new(), xreg: OnceLock::new() };
    match &action.law {
        ActionLaw::Parametric(rho) => action.check_parametric(rho)?,
        ActionLaw::Finite(maps) => action.check_finite(maps)?,
    }
    Ok(action)
}

impl RationalAction {
    fn check_parametric(&self, rho: &RationalMap) -> Result<()> {
        let Structure::Parametric { variety: gv, square, mul, identity, .. } = &self.group.structure else {
            return Err(Error::Invalid("parametric law for a finite group".into()));
        };
        let (ng, nx) = (gv.arity(), self.space.arity());
        let p = action_space(&self.group, &self.space)?;
        if !rho.source().same_as(&p)? || !rho.target().same_as(&self.space)? {
            return Err(Error::Invalid("the action law must be a rational map G × X ⇢ X".into()));
        }
        let ix = self.space.ideal();

        let mut images: Vec<Fraction> =
            identity.iter().map(|c| Fraction::poly(Polynomial::constant(nx, c.clone()))).collect();
        images.extend(vars(nx, 0, nx));
        let at_e = apply(rho, &images, ix)?
            .ok_or_else(|| not_an_action("ρ(e,x) = x", "every representative is undefined at e".into()))?;
        for (k, f) in at_e.iter().enumerate() {
            let x = Fraction::var(nx, k);
            let diff = f.cross_difference(&x);
            if !vanishes(ix, &diff, &f.den)? {
                return Err(not_an_action("ρ(e,x) = x", self.space.format(&ix.normal_form(&diff)?)));
            }
        }

        let triple = square.product(&self.space);
        let total = 2 * ng + nx;
        let it = triple.ideal();
        let gmul: Vec<Fraction> = mul.iter().map(|m| Fraction::poly(m.shift(0, total))).collect();
        let x = vars(total, 2 * ng, nx);
        let undefined =
            |side: &str| not_an_action("ρ(m(g,h),x) = ρ(g,ρ(h,x))", format!("{side} is undefined everywhere"));
        let left = apply(rho, &[gmul, x.clone()].concat(), it)?.ok_or_else(|| undefined("left side"))?;
        let inner = apply(rho, &[vars(total, ng, ng), x].concat(), it)?.ok_or_else(|| undefined("ρ(h,x)"))?;
        let right = apply(rho, &[vars(total, 0, ng), inner].concat(), it)?.ok_or_else(|| undefined("right side"))?;
        for (l, r) in left.iter().zip(&right) {
            let diff = l.cross_difference(r);
            if !vanishes(it, &diff, &(&l.den * &r.den))? {
                return Err(not_an_action("ρ(m(g,h),x) = ρ(g,ρ(h,x))", triple.format(&it.normal_form(&diff)?)));
            }
        }
        Ok(())
    }

    fn check_finite(&self, maps: &[RationalMap]) -> Result<()> {
        let Structure::Finite { elements, table, identity, .. } = &self.group.structure else {
            return Err(Error::Invalid("per-element law for a group variety".into()));
        };
        if maps.len() != elements.len() {
            return Err(Error::ArityMismatch { expected: elements.len(), found: maps.len() });
        }
        for m in maps {
            if !m.source().same_as(&self.space)? || !m.target().same_as(&self.space)? {
                return Err(Error::Invalid("every element must act by a rational self-map of X".into()));
            }
        }
        let residue = |r: Option<(usize, Polynomial)>| r.map(|(_, p)| self.space.format(&p));
        let id = RationalMap::identity(self.space.clone());
        if let Some(r) = residue(map_residue(&maps[*identity], &id)?) {
            return Err(not_an_action(format!("ρ_{} = id", elements[*identity]), r));
        }
        for g in 0..maps.len() {
            for h in 0..maps.len() {
                let law = format!("ρ_{}∘ρ_{} = ρ_{}", elements[g], elements[h], elements[table[g][h]]);
                let gh =
                    compose_unchecked(&maps[h], &maps[g]).map_err(|e| not_an_action(law.clone(), e.to_string()))?;
                if let Some(r) = residue(map_residue(&gh, &maps[table[g][h]])?) {
                    return Err(not_an_action(law, r));
                }
            }
        }
        Ok(())
    }

    pub fn group(&self) -> &Arc<AlgebraicGroup> {
        &self.group
    }

    pub fn space(&self) -> &Arc<AffineVariety> {
        &self.space
    }

    pub fn law(&self) -> &ActionLaw {
        &self.law
    }

    /// The open subset the action was restricted to (the whole variety
    /// unless `restrict_to_open` was used).
    pub fn domain(&self) -> &OpenSubset {
        &self.domain
    }

    /// `G × X` for a parametric action.
    pub fn product_space(&self) -> Option<&Arc<AffineVariety>> {
        match &self.law {
            ActionLaw::Parametric(rho) => Some(rho.source()),
            ActionLaw::Finite(_) => None,
        }
    }

    /// `ρ̃(g, x) = (g, ρ(g, x))` and `ρ̃⁻¹ = τ∘ρ̃∘τ` with `τ(g, x) = (g⁻¹, x)`.
    pub fn lift_tilde(&self) -> Result<&Lift> {
        if let Some(l) = self.lift.get() {
            return Ok(l);
        }
        let lift = match &self.law {
            ActionLaw::Finite(maps) => {
                let Structure::Finite { inverses, .. } = &self.group.structure else { unreachable!() };
                Lift { tilde: maps.clone(), inverse: inverses.iter().map(|&i| maps[i].clone()).collect() }
            }
            ActionLaw::Parametric(rho) => {
                let p = rho.source().clone();
                let n = p.arity();
                let ng = self.group.arity();
                let reps = rho
                    .representatives()
                    .iter()
                    .map(|r| vars(n, 0, ng).into_iter().chain(r.iter().cloned()).collect())
                    .collect();
                let tilde = RationalMap::new(p.clone(), p.clone(), reps)?;
                let inv = self.group.inversion().expect("parametric group");
                let mut tau: Vec<Polynomial> = inv.iter().map(|q| q.shift(0, n)).collect();
                tau.extend((ng..n).map(|i| Polynomial::var(n, i)));
                let tau = RationalMap::polynomial(p.clone(), p.clone(), tau)?;
                let inverse = compose_unchecked(&compose_unchecked(&tau, &tilde)?, &tau)?;
                let id = RationalMap::identity(p);
                if !maps_equal(&compose_unchecked(&tilde, &inverse)?, &id)?
                    || !maps_equal(&compose_unchecked(&inverse, &tilde)?, &id)?
                {
                    return Err(Error::RoundTripFailure("τ∘ρ̃∘τ is not inverse to ρ̃".into()));
                }
                Lift { tilde: vec![tilde], inverse: vec![inverse] }
            }
        };
        let _ = self.lift.set(lift);
        Ok(self.lift.get().expect("just set"))
    }

    /// `ρ_g : X ⇢ X`, checked to be birational with inverse `ρ_{g⁻¹}`.
    pub fn specialize(&self, g: &GroupPoint) -> Result<RationalMap> {
        if !self.group.contains(g) {
            return Err(Error::PointNotOnGroup(self.group.format_point(g)));
        }
        let rho_g = self.specialize_raw(g)?;
        if let ActionLaw::Parametric(_) = self.law {
            let rho_inv = self.specialize_raw(&self.group.invert(g)?)?;
            let id = RationalMap::identity(self.space.clone());
            let there = compose_unchecked(&rho_g, &rho_inv)?;
            let back = compose_unchecked(&rho_inv, &rho_g)?;
            if !maps_equal(&there, &id)? || !maps_equal(&back, &id)? {
                return Err(Error::NotBirational(format!(
                    "ρ at {} is not inverse to ρ at its inverse",
                    self.group.format_point(g)
                )));
            }
        }
        Ok(rho_g)
    }

    fn specialize_raw(&self, g: &GroupPoint) -> Result<RationalMap> {
        match (&self.law, g) {
            (ActionLaw::Finite(maps), GroupPoint::Element(i)) => Ok(maps[*i].clone()),
            (ActionLaw::Parametric(rho), GroupPoint::Coords(c)) => {
                let nx = self.space.arity();
                let mut images: Vec<Fraction> =
                    c.iter().map(|v| Fraction::poly(Polynomial::constant(nx, v.clone()))).collect();
                images.extend(vars(nx, 0, nx));
                let mut reps = Vec::new();
                'rep: for r in rho.representatives() {
                    let mut out = Vec::with_capacity(r.len());
                    for f in r {
                        let s = f.compose(&images);
                        if self.space.ideal().contains(&s.den)? {
                            continue 'rep;
                        }
                        out.push(s);
                    }
                    reps.push(out);
                }
                if reps.is_empty() {
                    return Err(Error::ZeroDenominator(format!(
                        "every representative is undefined along {}",
                        self.group.format_point(g)
                    )));
                }
                RationalMap::new(self.space.clone(), self.space.clone(), reps)
            }
            _ => Err(Error::PointNotOnGroup(self.group.format_point(g))),
        }
    }

    /// The same action on the open subset `domain ∩ u`.
    pub fn restrict_to_open(&self, u: &OpenSubset) -> Result<RationalAction> {
        if !u.host().same_as(&self.space)? {
            return Err(Error::Invalid("the open subset lives on another variety".into()));
        }
        if u.is_empty()? {
            return Err(Error::EmptyOpen);
        }
        let domain = self.domain.intersect(u)?.simplified()?;
        if domain.is_empty()? {
            return Err(Error::EmptyOpen);
        }
        Ok(RationalAction {
            group: self.group.clone(),
            space: self.space.clone(),
            law: self.law.clone(),
            domain,
            lift: self.lift.clone(),
            xreg: OnceLock::new(),
        })
    }

    pub(crate) fn cached_xreg(&self) -> &OnceLock<GRegularLocus> {
        &self.xreg
    }
}
