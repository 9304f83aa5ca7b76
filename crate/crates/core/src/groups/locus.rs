use crate::error::{Error, Result};
use crate::exactalg::{coefficients_wrt, Ideal, MonomialOrder, Polynomial};
use crate::varmaps::{biregular_locus_with, pullback, OpenSubset};

use super::action::{ActionLaw, RationalAction};

/// The G-regular points of an action, with the intermediate loci.
#[derive(Clone, Debug)]
pub struct GRegularLocus {
    /// `X_reg`, inside the action's domain.
    pub open: OpenSubset,
    /// Where `ρ̃` is biregular: one open of `G × X` for a group variety,
    /// one open of `X` per element (`Breg(ρ_g)`) for a finite group.
    pub tilde_breg: Vec<OpenSubset>,
    /// Per component, the ideal of `{x : G_i × {x} ⊆ E}` on `X`.
    pub bad: Vec<Ideal>,
    /// Closure of `domain ∖ X_reg`; the unit ideal when every point of the
    /// domain is G-regular.
    pub complement: Ideal,
}

impl GRegularLocus {
    pub fn all_regular(&self) -> Result<bool> {
        self.complement.is_unit()
    }
}

/// Biregular locus of `ρ̃` restricted to the action's domain:
/// `Breg(ρ̃) ∩ (G × U) ∩ ρ̃⁻¹(G × U)`.
pub fn tilde_biregular_locus(action: &RationalAction) -> Result<Vec<OpenSubset>> {
    let lift = action.lift_tilde()?;
    let dom = action.domain();
    let mut out = Vec::with_capacity(lift.tilde.len());
    for (t, inv) in lift.tilde.iter().zip(&lift.inverse) {
        let b = biregular_locus_with(t, inv)?;
        if dom.is_whole() {
            out.push(b);
            continue;
        }
        let u = match action.law() {
            ActionLaw::Finite(_) => dom.clone(),
            ActionLaw::Parametric(_) => dom.embed(t.source().clone(), action.group().arity()),
        };
        out.push(b.intersect(&u)?.intersect(&pullback(t, &u)?)?.simplified()?);
    }
    Ok(out)
}

/// Computes `X_reg`. For a group variety `G` (irreducible), the bad set is
/// read off the normal forms of the generators of `E` modulo `I_G` under a
/// block order: `G × {x} ⊆ E` iff every coefficient in the group variables
/// vanishes at `x`. For a finite group, `X_reg = ⋂_g Breg(ρ_g)`.
pub fn g_regular_locus(action: &RationalAction) -> Result<&GRegularLocus> {
    if let Some(l) = action.cached_xreg().get() {
        return Ok(l);
    }
    let space = action.space();
    let nx = space.arity();
    let tilde_breg = tilde_biregular_locus(action)?;
    let (open, bad) = match action.law() {
        ActionLaw::Finite(_) => {
            let mut open = action.domain().clone();
            for b in &tilde_breg {
                open = open.intersect(b)?;
            }
            let bad = tilde_breg.iter().map(|b| b.complement_ideal()).collect();
            (open, bad)
        }
        ActionLaw::Parametric(_) => {
            if !action.group().is_irreducible() {
                return Err(Error::Unsupported("X_reg for a reducible group variety".into()));
            }
            let ng = action.group().arity();
            let n = ng + nx;
            let gvars: Vec<usize> = (0..ng).collect();
            let ig = action.group().variety().expect("parametric").ideal().shift(0, n);
            let gb = ig.groebner(&MonomialOrder::Block(vec![gvars.clone()]))?;
            let to_x: Vec<usize> = (0..n).map(|i| i.saturating_sub(ng)).collect();
            let e = &tilde_breg[0];
            let mut coefficients: Vec<Polynomial> = Vec::new();
            for w in e.witnesses() {
                for (_, c) in coefficients_wrt(&gb.reduce(w), &gvars) {
                    let c = c.remap(&to_x, nx);
                    if !coefficients.contains(&c) {
                        coefficients.push(c);
                    }
                }
            }
            let bad = space.ideal().with_generators(coefficients.iter().cloned());
            let open = OpenSubset::from_witnesses(space.clone(), coefficients)?.intersect(action.domain())?;
            (open, vec![bad])
        }
    };
    let open = open.simplified()?;
    if open.is_empty()? {
        return Err(Error::EmptyLocus);
    }
    let complement = action.domain().restrict_closed(&open.complement_ideal())?;
    let locus = GRegularLocus { open, tilde_breg, bad, complement };
    let _ = action.cached_xreg().set(locus);
    Ok(action.cached_xreg().get().expect("just set"))
}
