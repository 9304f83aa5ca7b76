use crate::error::Result;
use crate::exactalg::substitute;

use super::map::{denominator_product, inverse, RationalMap};
use super::variety::{lcm, OpenSubset};

/// Union over representatives of the principal opens where all of that
/// representative's denominators are nonzero.
pub fn definable_locus(phi: &RationalMap) -> Result<OpenSubset> {
    let n = phi.source().arity();
    let ws = phi.representatives().iter().map(|r| denominator_product(r, n)).collect();
    OpenSubset::from_witnesses(phi.source().clone(), ws)
}

/// Preimage of an open subset of the target: for each representative `r`
/// and witness `q`, the open `{q_r ≠ 0, q(r(x)) ≠ 0}`.
pub fn pullback(phi: &RationalMap, open: &OpenSubset) -> Result<OpenSubset> {
    let n = phi.source().arity();
    let mut ws = Vec::new();
    for r in phi.representatives() {
        let q_r = denominator_product(r, n);
        for q in open.witnesses() {
            if q.is_constant() {
                ws.push(q_r.clone());
                continue;
            }
            let pulled = substitute(q, r);
            ws.push(lcm(&q_r, &pulled.num)?);
        }
    }
    OpenSubset::from_witnesses(phi.source().clone(), ws)
}

/// Locus where `phi` is a local isomorphism, given a verified inverse:
/// the union over representative pairs `(r, r')` of
/// `{q_r ≠ 0, q_{r'}(r(x)) ≠ 0}`.
pub fn biregular_locus_with(phi: &RationalMap, inv: &RationalMap) -> Result<OpenSubset> {
    let target_dom = definable_locus(inv)?;
    pullback(phi, &target_dom)
}

pub fn biregular_locus(phi: &RationalMap) -> Result<OpenSubset> {
    let inv = inverse(phi)?;
    biregular_locus_with(phi, &inv)
}
