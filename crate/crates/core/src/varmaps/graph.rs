use crate::error::{Error, Result};
use crate::exactalg::{gcd, Ideal, MonomialOrder, Polynomial, Scalar};

use super::map::{denominator_product, RationalMap};
use super::variety::{AffineVariety, OpenSubset};

/// Closure of the graph of a rational map, as an ideal on
/// `source × target` (source coordinates first).
#[derive(Clone, Debug)]
pub struct GraphClosure {
    ideal: Ideal,
    names: Vec<String>,
    source_arity: usize,
}

impl GraphClosure {
    pub fn ideal(&self) -> &Ideal {
        &self.ideal
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn source_arity(&self) -> usize {
        self.source_arity
    }

    pub fn basis(&self) -> Result<Vec<Polynomial>> {
        self.ideal.basis()
    }
}

/// `I_src + I_tgt + (den_j·y_j − num_j)` saturated by the product of the
/// denominators of the first representative.
pub fn graph_closure(phi: &RationalMap) -> Result<GraphClosure> {
    let (n, m) = (phi.source().arity(), phi.target().arity());
    let total = n + m;
    let product = phi.source().product(phi.target());
    let mut gens: Vec<Polynomial> = Vec::new();
    gens.extend(phi.source().ideal().generators().iter().map(|g| g.shift(0, total)));
    gens.extend(phi.target().ideal().generators().iter().map(|g| g.shift(n, total)));
    let rep = phi.first();
    for (j, f) in rep.iter().enumerate() {
        let y = Polynomial::var(total, n + j);
        gens.push(&(&f.den.shift(0, total) * &y) - &f.num.shift(0, total));
    }
    let q = denominator_product(rep, n).shift(0, total);
    let ideal = Ideal::new(total, gens).saturate(&q)?;
    Ok(GraphClosure { ideal, names: product.names().to_vec(), source_arity: n })
}

/// Eliminates the source coordinates from the graph closure.
pub fn closed_image(phi: &RationalMap) -> Result<AffineVariety> {
    let (n, m) = (phi.source().arity(), phi.target().arity());
    let graph = graph_closure(phi)?;
    let src: Vec<usize> = (0..n).collect();
    let elim = graph.ideal.eliminate(&src)?;
    let to_target: Vec<usize> = (0..n + m).map(|i| i.saturating_sub(n)).collect();
    let ideal = elim.remap(&to_target, m);
    Ok(AffineVariety::from_parts(phi.target().names().to_vec(), ideal, phi.source().is_irreducible()))
}

/// Dominant iff the closed image has the target's ideal.
pub fn is_dominant(phi: &RationalMap) -> Result<bool> {
    let image = closed_image(phi)?;
    phi.target().ideal().contains_ideal(image.ideal())
}

/// Outcome of the closed-graph test.
#[derive(Clone, Debug)]
pub struct GraphCheck {
    pub closed: bool,
    /// Limit components of the graph lying over points where no
    /// representative is defined, one ideal per offending pair of host
    /// witnesses, on `source × target`.
    pub witnesses: Vec<Ideal>,
    pub names: Vec<String>,
}

/// Tests whether the graph of `phi`, restricted to `host × host`, is
/// closed: its closure must not meet `(host ∖ Dom) × host`.
pub fn is_graph_closed(phi: &RationalMap, host: &OpenSubset) -> Result<GraphCheck> {
    let (n, m) = (phi.source().arity(), phi.target().arity());
    if host.host().arity() != n || n != m {
        return Err(Error::Invalid("closed-graph test needs a self-map and a host open in its source".into()));
    }
    let total = n + m;
    let graph = graph_closure(phi)?;
    let undefined: Vec<Polynomial> =
        phi.representatives().iter().map(|r| denominator_product(r, n).shift(0, total)).collect();
    let over_bad = graph.ideal.with_generators(undefined);
    let mut witnesses = Vec::new();
    for a in host.witnesses() {
        for b in host.witnesses() {
            let w = &a.shift(0, total) * &b.shift(n, total);
            if !over_bad.is_empty_on(&w)? {
                witnesses.push(over_bad.saturate(&w)?);
            }
        }
    }
    Ok(GraphCheck { closed: witnesses.is_empty(), witnesses, names: graph.names })
}

/// Tri-state answer to "is the map defined at this point".
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PointStatus {
    Defined(Vec<Scalar>),
    Undefined,
    Unknown,
}

/// Decides definedness at a rational point: `Defined` if a representative
/// applies; `Undefined` if the graph-closure fiber is empty, positive
/// dimensional or has at least two points; `Unknown` for a singleton fiber
/// that no representative reaches.
pub fn point_status(phi: &RationalMap, p: &[Scalar]) -> Result<PointStatus> {
    let (n, m) = (phi.source().arity(), phi.target().arity());
    if !phi.source().contains_point(p) {
        return Err(Error::PointNotOnVariety(format!("{p:?}")));
    }
    if let Some(v) = phi.eval(p) {
        return Ok(PointStatus::Defined(v));
    }
    let graph = graph_closure(phi)?;
    let assign: Vec<Option<Scalar>> = (0..n + m).map(|i| if i < n { Some(p[i].clone()) } else { None }).collect();
    let to_target: Vec<usize> = (0..n + m).map(|i| i.saturating_sub(n)).collect();
    let fiber =
        Ideal::new(m, graph.ideal.generators().iter().map(|g| g.eval_partial(&assign).remap(&to_target, m)).collect());
    if fiber.is_unit()? {
        return Ok(PointStatus::Undefined);
    }
    if !fiber.groebner(&MonomialOrder::GrevLex)?.is_zero_dimensional() {
        return Ok(PointStatus::Undefined);
    }
    for v in 0..m {
        let others: Vec<usize> = (0..m).filter(|&w| w != v).collect();
        let elim = fiber.eliminate(&others)?;
        let basis = elim.basis()?;
        let uni = basis
            .iter()
            .find(|g| !g.is_zero())
            .ok_or_else(|| Error::Invalid("zero-dimensional fiber without a univariate relation".into()))?;
        let sqfree = uni.div_exact(&gcd(uni, &uni.derivative(v))?).expect("gcd divides");
        if sqfree.total_degree() > 1 {
            return Ok(PointStatus::Undefined);
        }
    }
    Ok(PointStatus::Unknown)
}
