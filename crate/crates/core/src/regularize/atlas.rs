use crate::error::{Error, Result};
use crate::exactalg::{Ideal, Polynomial};
use crate::groups::{tilde_biregular_locus, ActionLaw, GroupPoint, RationalAction};
use crate::varmaps::{compose, inverse, is_graph_closed, map_residue, RationalMap};

/// Charts `X_0 … X_m`, one per point `g_i` of `S`, glued along
/// `τ_ij = ρ_{g_j⁻¹·g_i}`.
#[derive(Clone, Debug)]
pub struct Atlas {
    action: RationalAction,
    points: Vec<GroupPoint>,
    transitions: Vec<Vec<RationalMap>>,
}

/// Evidence against one of the atlas conditions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    /// Chart indices involved.
    pub charts: Vec<usize>,
    /// Generators of a witness ideal, or a residue.
    pub generators: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CheckOutcome {
    pub witnesses: Vec<Witness>,
}

impl CheckOutcome {
    pub fn passed(&self) -> bool {
        self.witnesses.is_empty()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtlasReport {
    pub symmetry: CheckOutcome,
    pub cocycle: CheckOutcome,
    pub separated: CheckOutcome,
    pub covering: CheckOutcome,
}

impl AtlasReport {
    pub fn all_passed(&self) -> bool {
        self.symmetry.passed() && self.cocycle.passed() && self.separated.passed() && self.covering.passed()
    }
}

/// Builds the transitions; `points[0]` must be the identity.
pub fn build_atlas(action: &RationalAction, points: &[GroupPoint]) -> Result<Atlas> {
    let group = action.group();
    let first = points.first().ok_or_else(|| Error::Invalid("an atlas needs at least one chart".into()))?;
    for g in points {
        if !group.contains(g) {
            return Err(Error::PointNotOnGroup(group.format_point(g)));
        }
    }
    if *first != group.identity() {
        return Err(Error::Invalid(format!("the first chart must be the identity, not {}", group.format_point(first))));
    }
    let mut transitions = Vec::with_capacity(points.len());
    for gi in points {
        let mut row = Vec::with_capacity(points.len());
        for gj in points {
            let h = group.multiply(&group.invert(gj)?, gi)?;
            row.push(action.specialize(&h)?);
        }
        transitions.push(row);
    }
    Ok(Atlas { action: action.clone(), points: points.to_vec(), transitions })
}

impl Atlas {
    pub fn action(&self) -> &RationalAction {
        &self.action
    }

    pub fn points(&self) -> &[GroupPoint] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    /// `τ_ij`, from chart `i` to chart `j`.
    pub fn transition(&self, i: usize, j: usize) -> &RationalMap {
        &self.transitions[i][j]
    }

    /// Runs the four gluing checks.
    pub fn check(&self) -> Result<AtlasReport> {
        Ok(AtlasReport {
            symmetry: self.check_symmetry()?,
            cocycle: self.check_cocycle()?,
            separated: self.check_separated()?,
            covering: self.check_covering()?,
        })
    }

    fn residue_witness(&self, charts: Vec<usize>, a: &RationalMap, b: &RationalMap) -> Result<Option<Witness>> {
        Ok(map_residue(a, b)?.map(|(_, r)| Witness { charts, generators: vec![a.source().format(&r)] }))
    }

    fn check_symmetry(&self) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::default();
        let m = self.len();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                match inverse(&self.transitions[i][j]) {
                    Ok(inv) => out.witnesses.extend(self.residue_witness(vec![i, j], &inv, &self.transitions[j][i])?),
                    Err(Error::NotBirational(msg)) => {
                        out.witnesses.push(Witness { charts: vec![i, j], generators: vec![msg] })
                    }
                    Err(e) => return Err(e),
                }
            }
        }
        Ok(out)
    }

    fn check_cocycle(&self) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::default();
        let m = self.len();
        for i in 0..m {
            for j in 0..m {
                for k in 0..m {
                    if i == j || j == k {
                        continue;
                    }
                    let composite = match compose(&self.transitions[i][j], &self.transitions[j][k]) {
                        Ok(c) => c,
                        Err(Error::NotDominant | Error::ZeroDenominator(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    out.witnesses.extend(self.residue_witness(vec![i, j, k], &composite, &self.transitions[i][k])?);
                }
            }
        }
        Ok(out)
    }

    fn check_separated(&self) -> Result<CheckOutcome> {
        let mut out = CheckOutcome::default();
        let host = self.action.domain();
        let m = self.len();
        for i in 0..m {
            for j in 0..m {
                if i == j {
                    continue;
                }
                let check = is_graph_closed(&self.transitions[i][j], host)?;
                for w in &check.witnesses {
                    let generators = w.basis()?.iter().map(|p| p.format(&check.names)).collect();
                    out.witnesses.push(Witness { charts: vec![i, j], generators });
                }
            }
        }
        Ok(out)
    }

    /// The translates `g_i·D` of the biregular locus `D` of `ρ̃` must cover
    /// `G × X`: the sum over `i` of the ideals of `G × X ∖ g_i·D` is the
    /// unit ideal.
    fn check_covering(&self) -> Result<CheckOutcome> {
        let group = self.action.group();
        let breg = tilde_biregular_locus(&self.action)?;
        let dom = self.action.domain();
        let mut out = CheckOutcome::default();
        match self.action.law() {
            ActionLaw::Finite(_) => {
                let elements = group.elements().expect("finite group");
                for h in 0..elements.len() {
                    let mut sum: Option<Ideal> = None;
                    for g in &self.points {
                        let k = match group.multiply(&group.invert(g)?, &GroupPoint::Element(h))? {
                            GroupPoint::Element(k) => k,
                            _ => unreachable!("finite group"),
                        };
                        let e = dom.restrict_closed(&breg[k].complement_ideal())?;
                        sum = Some(match sum {
                            None => e,
                            Some(s) => s.sum(&e),
                        });
                    }
                    let sum = sum.expect("nonempty atlas");
                    if !sum.is_unit()? {
                        let names = self.action.space().names();
                        let generators = sum.basis()?.iter().map(|p| p.format(names)).collect();
                        out.witnesses.push(Witness { charts: vec![h], generators });
                    }
                }
            }
            ActionLaw::Parametric(rho) => {
                let p = rho.source();
                let n = p.arity();
                let ng = group.arity();
                let host = dom.embed(p.clone(), ng);
                let e = host.restrict_closed(&breg[0].complement_ideal())?;
                let mul = group.multiplication().expect("parametric group");
                let mut sum = p.ideal().clone();
                for g in &self.points {
                    let GroupPoint::Coords(inv) = group.invert(g)? else { unreachable!("parametric group") };
                    // g ↦ m(g_i⁻¹, g) on the group coordinates
                    let mut images: Vec<Polynomial> = inv.iter().map(|c| Polynomial::constant(n, c.clone())).collect();
                    images.extend((0..ng).map(|i| Polynomial::var(n, i)));
                    let shifted: Vec<Polynomial> = mul.iter().map(|q| q.compose(&images)).collect();
                    let mut full = shifted;
                    full.extend((ng..n).map(|i| Polynomial::var(n, i)));
                    sum = sum.with_generators(e.generators().iter().map(|q| q.compose(&full)));
                }
                if !sum.is_unit()? {
                    let generators = sum.basis()?.iter().map(|q| q.format(p.names())).collect();
                    out.witnesses.push(Witness { charts: (0..self.len()).collect(), generators });
                }
            }
        }
        Ok(out)
    }
}

/// Convenience wrapper for [`Atlas::check`].
pub fn check_atlas(atlas: &Atlas) -> Result<AtlasReport> {
    atlas.check()
}
