use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::{int, Polynomial, Scalar};
use crate::varmaps::AffineVariety;

/// How a factor of a parametric group turns user parameters into points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Factor {
    /// `𝔾_a`: one coordinate, the parameter itself.
    Additive,
    /// `𝔾_m ⊂ 𝔸²` as `V(z·w − 1)`: the parameter `g` gives `(g, 1/g)`.
    Multiplicative,
    /// Any other group: points are entered coordinate by coordinate.
    General(usize),
}

impl Factor {
    pub fn arity(&self) -> usize {
        match self {
            Factor::Additive => 1,
            Factor::Multiplicative => 2,
            Factor::General(n) => *n,
        }
    }
}

/// Description of a group before its axioms are checked.
#[derive(Clone, Debug)]
pub enum GroupSpec {
    Additive(String),
    Multiplicative(String, String),
    /// Element names and the multiplication table by name.
    Finite {
        elements: Vec<String>,
        table: Vec<Vec<String>>,
    },
    Product(Box<GroupSpec>, Box<GroupSpec>),
    /// Arbitrary structure maps: `mul` on `G × G`, `inv` on `G`.
    General {
        variety: AffineVariety,
        mul: Vec<Polynomial>,
        inv: Vec<Polynomial>,
        identity: Vec<Scalar>,
    },
}

#[derive(Clone, Debug)]
pub(crate) enum Structure {
    Parametric {
        variety: Arc<AffineVariety>,
        square: Arc<AffineVariety>,
        mul: Vec<Polynomial>,
        inv: Vec<Polynomial>,
        identity: Vec<Scalar>,
        factors: Vec<Factor>,
    },
    Finite {
        elements: Vec<String>,
        table: Vec<Vec<usize>>,
        identity: usize,
        inverses: Vec<usize>,
    },
}

/// A point of a group: coordinates for a group variety, an index for a
/// finite group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupPoint {
    Coords(Vec<Scalar>),
    Element(usize),
}

/// An affine algebraic group with polynomial structure maps, or a finite
/// group given by its table.
#[derive(Clone, Debug)]
pub struct AlgebraicGroup {
    pub(crate) structure: Structure,
}

fn axiom(law: &str, residue: String) -> Error {
    Error::AxiomFailure { law: law.to_string(), residue }
}

impl AlgebraicGroup {
    pub fn is_finite(&self) -> bool {
        matches!(self.structure, Structure::Finite { .. })
    }

    /// Underlying variety of a parametric group.
    pub fn variety(&self) -> Option<&Arc<AffineVariety>> {
        match &self.structure {
            Structure::Parametric { variety, .. } => Some(variety),
            Structure::Finite { .. } => None,
        }
    }

    /// Number of coordinates (parametric) or zero (finite).
    pub fn arity(&self) -> usize {
        self.variety().map_or(0, |v| v.arity())
    }

    /// Elements of a finite group, in declaration order.
    pub fn elements(&self) -> Option<&[String]> {
        match &self.structure {
            Structure::Finite { elements, .. } => Some(elements),
            Structure::Parametric { .. } => None,
        }
    }

    pub fn element(&self, name: &str) -> Option<usize> {
        self.elements()?.iter().position(|e| e == name)
    }

    pub fn is_irreducible(&self) -> bool {
        match &self.structure {
            Structure::Parametric { variety, .. } => variety.is_irreducible(),
            Structure::Finite { elements, .. } => elements.len() == 1,
        }
    }

    /// Multiplication on `G × G` (first factor's coordinates first).
    pub fn multiplication(&self) -> Option<&[Polynomial]> {
        match &self.structure {
            Structure::Parametric { mul, .. } => Some(mul),
            Structure::Finite { .. } => None,
        }
    }

    pub fn inversion(&self) -> Option<&[Polynomial]> {
        match &self.structure {
            Structure::Parametric { inv, .. } => Some(inv),
            Structure::Finite { .. } => None,
        }
    }

    pub fn identity(&self) -> GroupPoint {
        match &self.structure {
            Structure::Parametric { identity, .. } => GroupPoint::Coords(identity.clone()),
            Structure::Finite { identity, .. } => GroupPoint::Element(*identity),
        }
    }

    pub fn factors(&self) -> &[Factor] {
        match &self.structure {
            Structure::Parametric { factors, .. } => factors,
            Structure::Finite { .. } => &[],
        }
    }

    pub fn contains(&self, g: &GroupPoint) -> bool {
        match (&self.structure, g) {
            (Structure::Parametric { variety, .. }, GroupPoint::Coords(c)) => variety.contains_point(c),
            (Structure::Finite { elements, .. }, GroupPoint::Element(i)) => *i < elements.len(),
            _ => false,
        }
    }

    fn check(&self, g: &GroupPoint) -> Result<()> {
        if self.contains(g) {
            Ok(())
        } else {
            Err(Error::PointNotOnGroup(self.format_point(g)))
        }
    }

    pub fn multiply(&self, a: &GroupPoint, b: &GroupPoint) -> Result<GroupPoint> {
        self.check(a)?;
        self.check(b)?;
        Ok(match (&self.structure, a, b) {
            (Structure::Parametric { mul, .. }, GroupPoint::Coords(x), GroupPoint::Coords(y)) => {
                let xy: Vec<Scalar> = x.iter().chain(y).cloned().collect();
                GroupPoint::Coords(mul.iter().map(|p| p.eval(&xy)).collect())
            }
            (Structure::Finite { table, .. }, GroupPoint::Element(i), GroupPoint::Element(j)) => {
                GroupPoint::Element(table[*i][*j])
            }
            _ => unreachable!("checked above"),
        })
    }

    pub fn invert(&self, a: &GroupPoint) -> Result<GroupPoint> {
        self.check(a)?;
        Ok(match (&self.structure, a) {
            (Structure::Parametric { inv, .. }, GroupPoint::Coords(x)) => {
                GroupPoint::Coords(inv.iter().map(|p| p.eval(x)).collect())
            }
            (Structure::Finite { inverses, .. }, GroupPoint::Element(i)) => GroupPoint::Element(inverses[*i]),
            _ => unreachable!("checked above"),
        })
    }

    /// Point from per-factor parameters (`g ↦ (g, 1/g)` on `𝔾_m`), or from
    /// the full coordinate list.
    pub fn point(&self, params: &[Scalar]) -> Result<GroupPoint> {
        let p = GroupPoint::Coords(params.to_vec());
        if params.len() == self.arity() && self.contains(&p) {
            return Ok(p);
        }
        let mut coords = Vec::with_capacity(self.arity());
        let mut rest = params;
        for f in self.factors() {
            match f {
                Factor::Additive | Factor::Multiplicative if rest.is_empty() => break,
                Factor::Additive => {
                    coords.push(rest[0].clone());
                    rest = &rest[1..];
                }
                Factor::Multiplicative => {
                    if rest[0] == int(0) {
                        return Err(Error::PointNotOnGroup("0 is not a unit".into()));
                    }
                    coords.push(rest[0].clone());
                    coords.push(int(1) / &rest[0]);
                    rest = &rest[1..];
                }
                Factor::General(n) => {
                    let n = (*n).min(rest.len());
                    coords.extend(rest[..n].iter().cloned());
                    rest = &rest[n..];
                }
            }
        }
        let p = GroupPoint::Coords(coords);
        if !rest.is_empty() || !self.contains(&p) {
            return Err(Error::PointNotOnGroup(
                params.iter().map(crate::exactalg::fmt_scalar).collect::<Vec<_>>().join(", "),
            ));
        }
        Ok(p)
    }

    pub fn format_point(&self, g: &GroupPoint) -> String {
        match (g, &self.structure) {
            (GroupPoint::Element(i), Structure::Finite { elements, .. }) if *i < elements.len() => elements[*i].clone(),
            (GroupPoint::Element(i), _) => format!("#{i}"),
            (GroupPoint::Coords(c), _) => {
                let parts: Vec<String> = c.iter().map(crate::exactalg::fmt_scalar).collect();
                format!("({})", parts.join(", "))
            }
        }
    }
}

/// Builds a group and verifies its axioms.
pub fn make_group(spec: &GroupSpec) -> Result<AlgebraicGroup> {
    let group = build(spec)?;
    verify(&group)?;
    Ok(group)
}

fn parametric(
    variety: AffineVariety,
    mul: Vec<Polynomial>,
    inv: Vec<Polynomial>,
    identity: Vec<Scalar>,
    factors: Vec<Factor>,
) -> AlgebraicGroup {
    let square = Arc::new(variety.product(&variety));
    AlgebraicGroup {
        structure: Structure::Parametric { variety: Arc::new(variety), square, mul, inv, identity, factors },
    }
}

fn build(spec: &GroupSpec) -> Result<AlgebraicGroup> {
    Ok(match spec {
        GroupSpec::Additive(s) => {
            let v = AffineVariety::affine_space(&[s.as_str()]);
            let mul = vec![&Polynomial::var(2, 0) + &Polynomial::var(2, 1)];
            let inv = vec![-&Polynomial::var(1, 0)];
            parametric(v, mul, inv, vec![int(0)], vec![Factor::Additive])
        }
        GroupSpec::Multiplicative(z, w) => {
            let rel = &(&Polynomial::var(2, 0) * &Polynomial::var(2, 1)) - &Polynomial::one(2);
            let v = AffineVariety::new(vec![z.clone(), w.clone()], vec![rel], true)?;
            let m = |i: usize| &Polynomial::var(4, i) * &Polynomial::var(4, i + 2);
            let inv = vec![Polynomial::var(2, 1), Polynomial::var(2, 0)];
            parametric(v, vec![m(0), m(1)], inv, vec![int(1), int(1)], vec![Factor::Multiplicative])
        }
        GroupSpec::General { variety, mul, inv, identity } => {
            let n = variety.arity();
            if mul.len() != n || mul.iter().any(|p| p.arity() != 2 * n) {
                return Err(Error::ArityMismatch { expected: n, found: mul.len() });
            }
            if inv.len() != n || inv.iter().any(|p| p.arity() != n) || identity.len() != n {
                return Err(Error::ArityMismatch { expected: n, found: inv.len() });
            }
            parametric(variety.clone(), mul.clone(), inv.clone(), identity.clone(), vec![Factor::General(n)])
        }
        GroupSpec::Finite { elements, table } => finite(elements, table)?,
        GroupSpec::Product(a, b) => product(&build(a)?, &build(b)?)?,
    })
}

fn finite(elements: &[String], table: &[Vec<String>]) -> Result<AlgebraicGroup> {
    let n = elements.len();
    if n == 0 {
        return Err(axiom("nonempty", "no elements".into()));
    }
    for (i, e) in elements.iter().enumerate() {
        if elements[..i].contains(e) {
            return Err(Error::Invalid(format!("element {e} listed twice")));
        }
    }
    if table.len() != n || table.iter().any(|r| r.len() != n) {
        return Err(axiom("closure", format!("table must be {n}×{n}")));
    }
    let mut t = vec![vec![0; n]; n];
    for (i, row) in table.iter().enumerate() {
        for (j, name) in row.iter().enumerate() {
            t[i][j] = elements
                .iter()
                .position(|e| e == name)
                .ok_or_else(|| axiom("closure", format!("{name} is not an element")))?;
        }
    }
    let identity = (0..n)
        .find(|&e| (0..n).all(|g| t[e][g] == g && t[g][e] == g))
        .ok_or_else(|| axiom("identity", "no two-sided identity in the table".into()))?;
    let mut inverses = Vec::with_capacity(n);
    for g in 0..n {
        let h = (0..n)
            .find(|&h| t[g][h] == identity && t[h][g] == identity)
            .ok_or_else(|| axiom("inverse", format!("{} has no inverse", elements[g])))?;
        inverses.push(h);
    }
    Ok(AlgebraicGroup { structure: Structure::Finite { elements: elements.to_vec(), table: t, identity, inverses } })
}

fn product(a: &AlgebraicGroup, b: &AlgebraicGroup) -> Result<AlgebraicGroup> {
    match (&a.structure, &b.structure) {
        (Structure::Finite { elements: ea, table: ta, .. }, Structure::Finite { elements: eb, table: tb, .. }) => {
            let (na, nb) = (ea.len(), eb.len());
            let names: Vec<String> = (0..na * nb).map(|k| format!("{}.{}", ea[k / nb], eb[k % nb])).collect();
            let table = (0..na * nb)
                .map(|k| (0..na * nb).map(|l| names[ta[k / nb][l / nb] * nb + tb[k % nb][l % nb]].clone()).collect())
                .collect::<Vec<Vec<String>>>();
            finite(&names, &table)
        }
        (
            Structure::Parametric { variety: va, mul: ma, inv: ia, identity: ea, factors: fa, .. },
            Structure::Parametric { variety: vb, mul: mb, inv: ib, identity: eb, factors: fb, .. },
        ) => {
            let (n1, n2) = (va.arity(), vb.arity());
            let n = n1 + n2;
            let v = va.product(vb);
            // m_a on (a1, b1), m_b on (a2, b2) inside (a1, a2, b1, b2)
            let map_a: Vec<usize> = (0..2 * n1).map(|i| if i < n1 { i } else { n + i - n1 }).collect();
            let map_b: Vec<usize> = (0..2 * n2).map(|i| if i < n2 { n1 + i } else { n + n1 + i - n2 }).collect();
            let mut mul: Vec<Polynomial> = ma.iter().map(|p| p.remap(&map_a, 2 * n)).collect();
            mul.extend(mb.iter().map(|p| p.remap(&map_b, 2 * n)));
            let mut inv: Vec<Polynomial> = ia.iter().map(|p| p.shift(0, n)).collect();
            inv.extend(ib.iter().map(|p| p.shift(n1, n)));
            let identity = ea.iter().chain(eb).cloned().collect();
            let factors = fa.iter().chain(fb).cloned().collect();
            Ok(parametric(v, mul, inv, identity, factors))
        }
        _ => Err(Error::Unsupported("products mixing finite and positive-dimensional groups".into())),
    }
}

fn verify(group: &AlgebraicGroup) -> Result<()> {
    let Structure::Parametric { variety, square, mul, inv, identity, .. } = &group.structure else {
        return verify_table(group);
    };
    let n = variety.arity();
    let ig = variety.ideal();
    let ig2 = square.ideal();
    let cube = square.product(variety);
    let ig3 = cube.ideal();
    let fmt = |p: &Polynomial, names: &[String]| p.format(names);

    if !variety.contains_point(identity) {
        return Err(axiom("identity lies on G", format!("{identity:?}")));
    }
    for g in ig.generators() {
        let r = ig2.normal_form(&g.compose(mul))?;
        if !r.is_zero() {
            return Err(axiom("m(G×G) ⊆ G", fmt(&r, square.names())));
        }
        let r = ig.normal_form(&g.compose(inv))?;
        if !r.is_zero() {
            return Err(axiom("inv(G) ⊆ G", fmt(&r, variety.names())));
        }
    }
    let vars = |arity: usize, offset: usize| -> Vec<Polynomial> {
        (0..n).map(|i| Polynomial::var(arity, offset + i)).collect()
    };
    let consts: Vec<Polynomial> = identity.iter().map(|c| Polynomial::constant(n, c.clone())).collect();
    let g = vars(n, 0);
    let checks: [(&str, Vec<Polynomial>, Vec<Polynomial>); 4] = [
        ("m(e,g) = g", [consts.clone(), g.clone()].concat(), g.clone()),
        ("m(g,e) = g", [g.clone(), consts.clone()].concat(), g.clone()),
        ("m(inv(g),g) = e", [inv.to_vec(), g.clone()].concat(), consts.clone()),
        ("m(g,inv(g)) = e", [g.clone(), inv.to_vec()].concat(), consts.clone()),
    ];
    for (law, images, expected) in checks {
        for (p, e) in mul.iter().zip(&expected) {
            let r = ig.normal_form(&(&p.compose(&images) - e))?;
            if !r.is_zero() {
                return Err(axiom(law, fmt(&r, variety.names())));
            }
        }
    }
    let (a, b, c) = (vars(3 * n, 0), vars(3 * n, n), vars(3 * n, 2 * n));
    let ab: Vec<Polynomial> = mul.iter().map(|p| p.compose(&[a.clone(), b.clone()].concat())).collect();
    let bc: Vec<Polynomial> = mul.iter().map(|p| p.compose(&[b.clone(), c.clone()].concat())).collect();
    for p in mul {
        let left = p.compose(&[ab.clone(), c.clone()].concat());
        let right = p.compose(&[a.clone(), bc.clone()].concat());
        let r = ig3.normal_form(&(&left - &right))?;
        if !r.is_zero() {
            return Err(axiom("m(m(a,b),c) = m(a,m(b,c))", fmt(&r, cube.names())));
        }
    }
    Ok(())
}

fn verify_table(group: &AlgebraicGroup) -> Result<()> {
    let Structure::Finite { elements, table, .. } = &group.structure else { unreachable!() };
    let n = elements.len();
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if table[table[a][b]][c] != table[a][table[b][c]] {
                    return Err(axiom(
                        "associativity",
                        format!(
                            "({}{}){} ≠ {}({}{})",
                            elements[a], elements[b], elements[c], elements[a], elements[b], elements[c]
                        ),
                    ));
                }
            }
        }
    }
    Ok(())
}
