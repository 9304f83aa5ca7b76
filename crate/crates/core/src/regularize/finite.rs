use std::collections::BTreeMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{linalg, Fraction, Ideal, Monomial, Polynomial, Scalar};
use crate::groups::{ActionLaw, RationalAction};
use crate::varmaps::{compose_unchecked, map_residue, maps_equal, vanishes, AffineVariety, RationalMap};

/// Equal as rational functions on the variety of `ideal`.
fn same_function(a: &Fraction, b: &Fraction, ideal: &Ideal) -> Result<bool> {
    vanishes(ideal, &a.cross_difference(b), &(&a.den * &b.den))
}

fn is_constant(f: &Fraction, ideal: &Ideal) -> Result<Option<Scalar>> {
    let f = f.normalized(Some(ideal))?;
    Ok(match (f.num.constant_value(), f.den.constant_value()) {
        (Some(n), Some(d)) => Some(n / d),
        _ if f.num.is_zero() => Some(Scalar::from_integer(0.into())),
        _ => None,
    })
}

fn finite_maps(action: &RationalAction) -> Result<&[RationalMap]> {
    match action.law() {
        ActionLaw::Finite(maps) => Ok(maps),
        ActionLaw::Parametric(_) => Err(Error::Unsupported("this construction needs a finite group".into())),
    }
}

/// Functions generating the coordinate ring of the action's domain: the
/// coordinates, plus `1/q` when the domain is a proper principal open
/// `D(q)`.
fn base_functions(action: &RationalAction) -> Result<Vec<Fraction>> {
    let x = action.space();
    let n = x.arity();
    let mut base: Vec<Fraction> = (0..n).map(|i| Fraction::var(n, i)).collect();
    let dom = action.domain();
    if !dom.is_whole() {
        match dom.witnesses() {
            [q] => base.push(Fraction::new(Polynomial::one(n), q.clone())),
            _ => return Err(Error::Unsupported("regularization on a domain that is not a principal open".into())),
        }
    }
    Ok(base)
}

/// The orbit of the coordinate functions: for each element (identity
/// first, then in table order) the pullbacks of the coordinates, with
/// duplicates and constants removed.
pub fn stable_generators(action: &RationalAction) -> Result<Vec<Fraction>> {
    let maps = finite_maps(action)?;
    let ideal = action.space().ideal();
    let base = base_functions(action)?;
    let e = match action.group().identity() {
        crate::groups::GroupPoint::Element(i) => i,
        _ => unreachable!("finite group"),
    };
    let order: Vec<usize> = std::iter::once(e).chain((0..maps.len()).filter(|&g| g != e)).collect();
    let mut out: Vec<Fraction> = Vec::new();
    for g in order {
        for f in &base {
            let pulled = pullback_function(f, &maps[g], ideal)?;
            if is_constant(&pulled, ideal)?.is_some() {
                continue;
            }
            let mut known = false;
            for o in &out {
                if same_function(o, &pulled, ideal)? {
                    known = true;
                    break;
                }
            }
            if !known {
                out.push(pulled);
            }
        }
    }
    Ok(out)
}

/// `f ∘ φ`, using the first representative that keeps the denominator
/// nonzero.
fn pullback_function(f: &Fraction, phi: &RationalMap, ideal: &Ideal) -> Result<Fraction> {
    for r in phi.representatives() {
        let c = f.compose(r);
        if !ideal.contains(&c.den)? {
            return c.normalized(Some(ideal));
        }
    }
    Err(Error::ZeroDenominator("pullback undefined on every representative".into()))
}

/// A presented affine model `Y = V(J)` of the subalgebra generated by
/// rational functions, with `ψ: Y → X` and `ψ⁻¹: X ⇢ Y`.
#[derive(Clone, Debug)]
pub struct Presentation {
    pub y: Arc<AffineVariety>,
    pub generators: Vec<Fraction>,
    pub psi: RationalMap,
    pub psi_inv: RationalMap,
}

fn fresh_names(taken: &[String], count: usize) -> Vec<String> {
    let mut prefix = "u".to_string();
    while taken.iter().any(|t| t.starts_with(&prefix) && t[prefix.len()..].chars().all(|c| c.is_ascii_digit())) {
        prefix.push('u');
    }
    (1..=count).map(|i| format!("{prefix}{i}")).collect()
}

/// Presents `𝕜[X][p_1/q_1, …]` as `𝕜[u]/J` with
/// `J = ((I_X + (q_j·u_j − p_j)) : (Π q_j)^∞) ∩ 𝕜[u]`.
pub fn present_subalgebra(x: &Arc<AffineVariety>, gens: &[Fraction]) -> Result<Presentation> {
    let n = x.arity();
    let m = gens.len();
    let total = n + m;
    let mut rel: Vec<Polynomial> = x.ideal().generators().iter().map(|g| g.shift(0, total)).collect();
    let mut q = Polynomial::one(total);
    for (j, f) in gens.iter().enumerate() {
        let u = Polynomial::var(total, n + j);
        rel.push(&(&f.den.shift(0, total) * &u) - &f.num.shift(0, total));
        if !f.den.is_constant() && q.div_exact(&f.den.shift(0, total)).is_none() {
            q = &q * &f.den.shift(0, total);
        }
    }
    let mut ideal = Ideal::new(total, rel);
    if !q.is_constant() {
        ideal = ideal.saturate(&q)?;
    }
    let xs: Vec<usize> = (0..n).collect();
    let to_u: Vec<usize> = (0..total).map(|i| i.saturating_sub(n)).collect();
    let j_gens: Vec<Polynomial> = ideal.eliminate(&xs)?.basis()?.iter().map(|g| g.remap(&to_u, m)).collect();
    let names = fresh_names(x.names(), m);
    let y = Arc::new(AffineVariety::new(names, j_gens, x.is_irreducible())?);

    let psi_inv = RationalMap::new(x.clone(), y.clone(), vec![gens.to_vec()])?;
    let mut coords = Vec::with_capacity(n);
    for i in 0..n {
        let xi = Fraction::var(n, i);
        if let Some(c) = is_constant(&xi, x.ideal())? {
            coords.push(Polynomial::constant(m, c));
            continue;
        }
        let mut found = None;
        for (j, g) in gens.iter().enumerate() {
            if same_function(g, &xi, x.ideal())? {
                found = Some(j);
                break;
            }
        }
        let j = found
            .ok_or_else(|| Error::Invalid(format!("the generators must include the coordinate {}", x.names()[i])))?;
        coords.push(Polynomial::var(m, j));
    }
    let psi = RationalMap::polynomial(y.clone(), x.clone(), coords)?;
    let round_trip = |a: &RationalMap, b: &RationalMap, id: RationalMap, what: &str| -> Result<()> {
        let c = compose_unchecked(a, b).map_err(|e| Error::RoundTripFailure(format!("{what}: {e}")))?;
        if !maps_equal(&c, &id)? {
            return Err(Error::RoundTripFailure(what.to_string()));
        }
        Ok(())
    };
    round_trip(&psi_inv, &psi, RationalMap::identity(x.clone()), "ψ∘ψ⁻¹ ≠ id")?;
    round_trip(&psi, &psi_inv, RationalMap::identity(y.clone()), "ψ⁻¹∘ψ ≠ id")?;
    Ok(Presentation { y, generators: gens.to_vec(), psi, psi_inv })
}

/// Writes `target` as `Σ c_k·gens_k + c_0` on the variety of `ideal`.
fn linear_combination(target: &Fraction, gens: &[Fraction], ideal: &Ideal) -> Result<Option<Vec<Scalar>>> {
    let mut l = target.den.clone();
    for g in gens {
        if l.div_exact(&g.den).is_none() {
            l = &l * &g.den;
        }
    }
    let clear = |f: &Fraction| -> Result<Polynomial> {
        let scaled = (&f.num * &l).div_exact(&f.den).expect("common denominator");
        ideal.normal_form(&scaled)
    };
    let mut polys: Vec<Polynomial> = gens.iter().map(clear).collect::<Result<_>>()?;
    polys.push(ideal.normal_form(&l)?);
    let rhs = clear(target)?;
    let mut monos: BTreeMap<Monomial, usize> = BTreeMap::new();
    for p in polys.iter().chain(std::iter::once(&rhs)) {
        for (mono, _) in p.terms() {
            let k = monos.len();
            monos.entry(mono.clone()).or_insert(k);
        }
    }
    let column = |p: &Polynomial| -> Vec<Scalar> {
        let mut v = vec![Scalar::from_integer(0.into()); monos.len()];
        for (mono, c) in p.terms() {
            v[monos[mono]] = c.clone();
        }
        v
    };
    let columns: Vec<Vec<Scalar>> = polys.iter().map(column).collect();
    Ok(linalg::solve_least(&columns, &column(&rhs)))
}

/// For each element `g`, the endomorphism `μ_g` of `Y` whose `j`-th
/// coordinate expresses `v_j ∘ ρ_g` in the generators.
pub fn induced_regular_action(p: &Presentation, action: &RationalAction) -> Result<Vec<RationalMap>> {
    let maps = finite_maps(action)?;
    let x = action.space();
    let ideal = x.ideal();
    let m = p.generators.len();
    let mut out = Vec::with_capacity(maps.len());
    for phi in maps {
        let mut coords = Vec::with_capacity(m);
        for v in &p.generators {
            let pulled = pullback_function(v, phi, ideal)?;
            let mut found = None;
            for (k, g) in p.generators.iter().enumerate() {
                if same_function(g, &pulled, ideal)? {
                    found = Some(Polynomial::var(m, k));
                    break;
                }
            }
            let coord = match found {
                Some(c) => c,
                None => {
                    let c = linear_combination(&pulled, &p.generators, ideal)?
                        .ok_or_else(|| Error::NotInSpan(pulled.format(x.names())))?;
                    let mut poly = Polynomial::constant(m, c[m].clone());
                    for (k, ck) in c[..m].iter().enumerate() {
                        poly = &poly + &Polynomial::var(m, k).scale(ck);
                    }
                    poly
                }
            };
            coords.push(coord);
        }
        out.push(RationalMap::polynomial(p.y.clone(), p.y.clone(), coords)?);
    }
    Ok(out)
}

/// The output of the finite-group regularization.
#[derive(Clone, Debug)]
pub struct RegularModel {
    pub presentation: Presentation,
    /// `μ_g` per element, in table order.
    pub endomorphisms: Vec<RationalMap>,
    pub elements: Vec<String>,
}

impl RegularModel {
    pub fn y(&self) -> &Arc<AffineVariety> {
        &self.presentation.y
    }

    pub fn psi(&self) -> &RationalMap {
        &self.presentation.psi
    }

    pub fn psi_inv(&self) -> &RationalMap {
        &self.presentation.psi_inv
    }

    /// `ψ` is an isomorphism: its inverse is polynomial.
    pub fn psi_is_isomorphism(&self) -> bool {
        self.presentation.psi_inv.is_polynomial()
    }

    /// Re-checks every invariant of the model: each `μ_g` preserves `J`,
    /// `μ_g∘μ_h = μ_{gh}`, `μ_e = id`, `ψ∘μ_g = ρ_g∘ψ`, and the round trip.
    pub fn verify(&self, action: &RationalAction) -> Result<()> {
        let maps = finite_maps(action)?;
        let y = self.y();
        let fail = |what: String| Error::RoundTripFailure(what);
        for (g, mu) in self.endomorphisms.iter().enumerate() {
            let coords = mu.polynomial_coordinates().ok_or_else(|| fail("μ is not polynomial".into()))?;
            for rel in y.ideal().generators() {
                if !y.ideal().contains(&rel.compose(&coords))? {
                    return Err(fail(format!("μ_{} does not preserve {}", self.elements[g], y.format(rel))));
                }
            }
            let left = compose_unchecked(mu, self.psi())?;
            let right = compose_unchecked(self.psi(), &maps[g])?;
            if let Some((_, r)) = map_residue(&left, &right)? {
                return Err(fail(format!("ψ∘μ_{} ≠ ρ∘ψ: {}", self.elements[g], y.format(&r))));
            }
        }
        let table = action.group();
        let n = self.endomorphisms.len();
        for g in 0..n {
            for h in 0..n {
                let gh = match table
                    .multiply(&crate::groups::GroupPoint::Element(g), &crate::groups::GroupPoint::Element(h))?
                {
                    crate::groups::GroupPoint::Element(k) => k,
                    _ => unreachable!("finite group"),
                };
                let both = compose_unchecked(&self.endomorphisms[h], &self.endomorphisms[g])?;
                if !maps_equal(&both, &self.endomorphisms[gh])? {
                    return Err(fail(format!(
                        "μ_{}∘μ_{} ≠ μ_{}",
                        self.elements[g], self.elements[h], self.elements[gh]
                    )));
                }
            }
        }
        if let crate::groups::GroupPoint::Element(e) = table.identity() {
            if !maps_equal(&self.endomorphisms[e], &RationalMap::identity(y.clone()))? {
                return Err(fail("μ_e ≠ id".into()));
            }
        }
        Ok(())
    }
}

/// Runs the finite-group pipeline on the action's domain and verifies
/// the resulting model.
pub fn regularize_finite(action: &RationalAction) -> Result<RegularModel> {
    let gens = stable_generators(action)?;
    let presentation = present_subalgebra(action.space(), &gens)?;
    let endomorphisms = induced_regular_action(&presentation, action)?;
    let elements = action.group().elements().expect("finite group").to_vec();
    let model = RegularModel { presentation, endomorphisms, elements };
    model.verify(action)?;
    Ok(model)
}
