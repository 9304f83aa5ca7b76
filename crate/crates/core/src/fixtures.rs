//! The worked examples used throughout tests, benches and sessions.

use std::sync::Arc;

use crate::error::Result;
use crate::exactalg::{read_fraction, Fraction};
use crate::groups::{
    action_space, make_group, make_rational_action, ActionLaw, AlgebraicGroup, GroupSpec, RationalAction,
};
use crate::varmaps::{AffineVariety, RationalMap};

pub fn plane(a: &str, b: &str) -> Arc<AffineVariety> {
    Arc::new(AffineVariety::affine_space(&[a, b]))
}

/// Rational self-map of `x` from coordinate expressions.
pub fn self_map(x: &Arc<AffineVariety>, coords: &[&str]) -> Result<RationalMap> {
    map_between(x, x, coords)
}

pub fn map_between(src: &Arc<AffineVariety>, tgt: &Arc<AffineVariety>, coords: &[&str]) -> Result<RationalMap> {
    let rep = coords.iter().map(|c| read_fraction(c, src.names())).collect::<Result<Vec<_>>>()?;
    RationalMap::new(src.clone(), tgt.clone(), vec![rep])
}

/// The affine Cremona involution `(x, y) ↦ (1/x, 1/y)`.
pub fn cremona() -> RationalMap {
    self_map(&plane("x", "y"), &["1/x", "1/y"]).expect("valid fixture")
}

/// The translation by `c` along the first axis, seen in the blow-up chart
/// `x = u, y = u·t`: `(u, t) ↦ (u + c, u·t/(u + c))`.
pub fn blowup_shift(c: i64) -> RationalMap {
    let a = format!("u+{c}");
    let b = format!("u*t/(u+{c})");
    let a = a.replace("+-", "-");
    let b = b.replace("+-", "-");
    self_map(&plane("u", "t"), &[&a, &b]).expect("valid fixture")
}

pub fn additive(name: &str) -> Arc<AlgebraicGroup> {
    Arc::new(make_group(&GroupSpec::Additive(name.into())).expect("valid group"))
}

pub fn multiplicative(z: &str, w: &str) -> Arc<AlgebraicGroup> {
    Arc::new(make_group(&GroupSpec::Multiplicative(z.into(), w.into())).expect("valid group"))
}

/// `ℤ/2 = {e, s}`.
pub fn z2() -> Arc<AlgebraicGroup> {
    let names = |v: &[&str]| v.iter().map(|s| s.to_string()).collect::<Vec<_>>();
    let spec = GroupSpec::Finite { elements: names(&["e", "s"]), table: vec![names(&["e", "s"]), names(&["s", "e"])] };
    Arc::new(make_group(&spec).expect("valid group"))
}

/// A parametric action from coordinate expressions in the names of
/// `G × X`.
pub fn parametric_action(group: Arc<AlgebraicGroup>, x: Arc<AffineVariety>, coords: &[&str]) -> Result<RationalAction> {
    let p = action_space(&group, &x)?;
    let rho = map_between(&p, &x, coords)?;
    make_rational_action(group, x, ActionLaw::Parametric(rho))
}

/// An involution action of `ℤ/2` on `x`.
pub fn involution_action(x: Arc<AffineVariety>, coords: &[&str]) -> Result<RationalAction> {
    let sigma = self_map(&x, coords)?;
    let law = ActionLaw::Finite(vec![RationalMap::identity(x.clone()), sigma]);
    make_rational_action(z2(), x, law)
}

/// `𝔾_a` on the blow-up chart `(u, t)`: `s·(u, t) = (u + s, u·t/(u + s))`.
pub fn blowup_action() -> RationalAction {
    parametric_action(additive("s"), plane("u", "t"), &["u+s", "u*t/(u+s)"]).expect("valid fixture")
}

/// `𝔾_a` translating along the first axis of `𝔸²(x, y)`.
pub fn translation_action() -> RationalAction {
    parametric_action(additive("s"), plane("x", "y"), &["x+s", "y"]).expect("valid fixture")
}

pub fn cremona_action() -> RationalAction {
    involution_action(plane("x", "y"), &["1/x", "1/y"]).expect("valid fixture")
}

pub fn swap_action() -> RationalAction {
    involution_action(plane("x", "y"), &["y", "x"]).expect("valid fixture")
}

/// `(x, y) ↦ (1/x, y)`.
pub fn half_cremona_action() -> RationalAction {
    involution_action(plane("x", "y"), &["1/x", "y"]).expect("valid fixture")
}

/// `𝔾_m` scaling the line, `g·x`.
pub fn scaling_action() -> RationalAction {
    let line = Arc::new(AffineVariety::affine_space(&["x"]));
    parametric_action(multiplicative("z", "w"), line, &["z*x"]).expect("valid fixture")
}

/// `𝔾_m` scaling presented by the uncancelled representative
/// `z·x·(x + 1)/(x + 1)`, kept raw alongside the validated action.
pub fn inflated_scaling() -> (RationalAction, Vec<Fraction>) {
    let action = scaling_action();
    let p = action.product_space().expect("parametric").clone();
    let raw = read_fraction("z*x*(x+1)/(x+1)", p.names()).expect("valid fixture");
    (action, vec![raw])
}
