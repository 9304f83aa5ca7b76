use std::cmp::Ordering;

use super::monomial::Monomial;

/// Monomial orders supported by the Gröbner engine.
///
/// `Block` compares the listed variable blocks lexicographically, one block
/// after the other, using graded reverse lexicographic order inside each
/// block. Variables not mentioned in any block form a final implicit block.
/// A single block eliminates its variables.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    Lex,
    GrevLex,
    Block(Vec<Vec<usize>>),
}

impl MonomialOrder {
    pub fn eliminating(vars: &[usize]) -> Self {
        let mut v = vars.to_vec();
        v.sort_unstable();
        v.dedup();
        MonomialOrder::Block(vec![v])
    }

    pub fn comparator(&self, arity: usize) -> Comparator {
        let blocks = match self {
            MonomialOrder::Lex => (0..arity).map(|i| vec![i]).collect(),
            MonomialOrder::GrevLex => vec![(0..arity).collect()],
            MonomialOrder::Block(bs) => {
                let mut seen = vec![false; arity];
                let mut out: Vec<Vec<usize>> = Vec::new();
                for b in bs {
                    let block: Vec<usize> =
                        b.iter().copied().filter(|&v| v < arity && !std::mem::replace(&mut seen[v], true)).collect();
                    if !block.is_empty() {
                        out.push(block);
                    }
                }
                let rest: Vec<usize> = (0..arity).filter(|&v| !seen[v]).collect();
                if !rest.is_empty() {
                    out.push(rest);
                }
                out
            }
        };
        Comparator { blocks }
    }
}

/// A monomial order instantiated for a fixed number of variables.
#[derive(Clone, Debug)]
pub struct Comparator {
    blocks: Vec<Vec<usize>>,
}

impl Comparator {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        let (ea, eb) = (a.exponents(), b.exponents());
        for block in &self.blocks {
            let da: u32 = block.iter().map(|&v| ea[v]).sum();
            let db: u32 = block.iter().map(|&v| eb[v]).sum();
            match da.cmp(&db) {
                Ordering::Equal => {}
                o => return o,
            }
            for &v in block.iter().rev() {
                match ea[v].cmp(&eb[v]) {
                    Ordering::Equal => {}
                    o => return o.reverse(),
                }
            }
        }
        Ordering::Equal
    }
}
