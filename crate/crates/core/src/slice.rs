//! Slice-regularity certificates: a rational function on `X × Y` whose
//! denominator divides a power of `f` on `Y` and whose slices `F(x_j, ·)`
//! are regular is itself regular, witnessed by an invertible sample matrix.

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exactalg::linalg::{self, Matrix};
use crate::exactalg::{coefficients_wrt, fmt_scalar, int, Fraction, Ideal, MonomialOrder, Polynomial, Scalar};
use crate::groups::{ActionLaw, GroupPoint, RationalAction};
use crate::varmaps::{vanishes, AffineVariety};

/// `a/b` as a polynomial modulo `ideal`, if it is one.
pub fn divide_modulo(a: &Polynomial, b: &Polynomial, ideal: &Ideal) -> Result<Option<Polynomial>> {
    if let Some(q) = a.div_exact(b) {
        return Ok(Some(ideal.normal_form(&q)?));
    }
    if ideal.is_zero_ideal() {
        return Ok(None);
    }
    let n = a.arity();
    let z = Polynomial::var(n + 1, n);
    let rel = &(&b.shift(0, n + 1) * &z) - &a.shift(0, n + 1);
    let j = ideal.shift(0, n + 1).with_generators([rel]).saturate(&b.shift(0, n + 1))?;
    let gb = j.groebner(&MonomialOrder::Block(vec![vec![n]]))?;
    for g in gb.polynomials() {
        let lm = &g.terms()[0].0;
        let leading_is_z = (0..n + 1).all(|v| lm.exponent(v) == u32::from(v == n));
        if leading_is_z && g.degree_in(n) == 1 {
            let (zpart, rest): (Vec<_>, Vec<_>) = g.terms().iter().cloned().partition(|(m, _)| m.exponent(n) == 1);
            if zpart.len() != 1 {
                continue;
            }
            let c = zpart[0].1.clone();
            let p = Polynomial::from_terms(n + 1, rest).truncate(n).scale(&(-c.recip()));
            return Ok(Some(ideal.normal_form(&p)?));
        }
    }
    Ok(None)
}

/// The product `X × Y` on which a function is certified.
#[derive(Clone, Debug)]
pub struct SliceSetting {
    pub x: Arc<AffineVariety>,
    pub y: Arc<AffineVariety>,
    pub product: Arc<AffineVariety>,
}

impl SliceSetting {
    pub fn new(x: Arc<AffineVariety>, y: Arc<AffineVariety>) -> Self {
        let product = Arc::new(x.product(&y));
        SliceSetting { x, y, product }
    }

    fn split(&self) -> usize {
        self.x.arity()
    }

    /// `p` on `X × Y` restricted to `{x} × Y`.
    fn slice(&self, p: &Polynomial, x: &[Scalar]) -> Polynomial {
        let (nx, ny) = (self.x.arity(), self.y.arity());
        let assign: Vec<Option<Scalar>> = (0..nx + ny).map(|i| x.get(i).cloned()).collect();
        let to_y: Vec<usize> = (0..nx + ny).map(|i| i.saturating_sub(nx)).collect();
        p.eval_partial(&assign).remap(&to_y, ny)
    }
}

/// `f^k·F = Σ h_i ⊗ f_i` with the `h_i` standard monomials on `X`, plus
/// the sample data once certified.
#[derive(Clone, Debug)]
pub struct SliceDecomposition {
    pub f: Polynomial,
    pub k: u32,
    /// `(h_i, f_i)`: `h_i` on `X`, `f_i` on `Y`.
    pub terms: Vec<(Polynomial, Polynomial)>,
    pub samples: Vec<Vec<Scalar>>,
    /// `(h_i(x_j))`.
    pub matrix: Matrix,
    /// `λ` with `f_i/f^k = Σ_j λ_ij·F_{x_j}`.
    pub lambdas: Matrix,
    /// The regular slices `F_{x_j}` on `Y`.
    pub slices: Vec<Polynomial>,
    pub regular_form: Option<Polynomial>,
}

/// Finds the least `k` with `f^k/den` regular and writes `f^k·F` in tensor
/// form.
pub fn decompose_tensor(setting: &SliceSetting, big_f: &Fraction, f: &Polynomial) -> Result<SliceDecomposition> {
    let ip = setting.product.ideal();
    let n = setting.product.arity();
    let nx = setting.split();
    let f_p = f.shift(nx, n);
    let bound = big_f.den.total_degree() + 1;
    let mut power = Polynomial::one(n);
    let mut found = None;
    for k in 0..=bound {
        if let Some(q) = divide_modulo(&power, &big_f.den, ip)? {
            found = Some((k, q));
            break;
        }
        power = &power * &f_p;
    }
    let Some((k, q)) = found else {
        return Err(Error::NotFPower { denominator: setting.product.format(&big_f.den), f: setting.y.format(f) });
    };
    let whole = ip.normal_form(&(&big_f.num * &q))?;
    let xs: Vec<usize> = (0..nx).collect();
    let to_y: Vec<usize> = (0..n).map(|i| i.saturating_sub(nx)).collect();
    let terms = coefficients_wrt(&whole, &xs)
        .into_iter()
        .map(|(m, c)| (Polynomial::monomial(m, int(1)).truncate(nx), c.remap(&to_y, setting.y.arity())))
        .collect();
    Ok(SliceDecomposition {
        f: f.clone(),
        k,
        terms,
        samples: Vec::new(),
        matrix: Vec::new(),
        lambdas: Vec::new(),
        slices: Vec::new(),
        regular_form: None,
    })
}

/// Integer points of `𝔸^dim` in growing boxes `[-r, r]^dim`, each shell in
/// lexicographic order.
pub fn box_points(dim: usize) -> Box<dyn Iterator<Item = Vec<Scalar>>> {
    if dim == 0 {
        return Box::new(std::iter::once(Vec::new()));
    }
    Box::new((0i64..).flat_map(move |r| {
        let side = (2 * r + 1) as usize;
        (0..side.pow(dim as u32)).filter_map(move |mut idx| {
            let mut p = vec![0i64; dim];
            for c in p.iter_mut().rev() {
                *c = (idx % side) as i64 - r;
                idx /= side;
            }
            p.iter().any(|c| c.abs() == r).then(|| p.into_iter().map(int).collect())
        })
    }))
}

/// Greedy choice of points making `(h_i(x_j))` invertible: each new point
/// violates the linear relation fitted on the points chosen so far. The
/// points come back in candidate order.
pub fn find_unimodular_samples<I>(h: &[Polynomial], candidates: I, budget: usize) -> Result<Vec<Vec<Scalar>>>
where
    I: IntoIterator<Item = Vec<Scalar>>,
{
    let pool: Vec<Vec<Scalar>> = candidates.into_iter().take(budget).collect();
    let mut chosen: Vec<usize> = Vec::new();
    for m in 0..h.len() {
        // λ with Σ_j λ_j h_j(x_i) = h_m(x_i) on the chosen points
        let minor: Matrix = chosen.iter().map(|&c| (0..m).map(|j| h[j].eval(&pool[c])).collect()).collect();
        let rhs: Vec<Scalar> = chosen.iter().map(|&c| h[m].eval(&pool[c])).collect();
        let lambda = if m == 0 { Vec::new() } else { linalg::solve(&minor, &rhs).ok_or(Error::SingularSamples)? };
        let next = (0..pool.len()).find(|i| {
            !chosen.contains(i) && {
                let fitted: Scalar = (0..m).map(|j| &lambda[j] * h[j].eval(&pool[*i])).sum();
                h[m].eval(&pool[*i]) != fitted
            }
        });
        match next {
            Some(i) => chosen.push(i),
            None => return Err(Error::BudgetExhausted { tried: pool.len() }),
        }
    }
    chosen.sort_unstable();
    Ok(chosen.into_iter().map(|i| pool[i].clone()).collect())
}

/// Certifies that `F` is regular on `X × Y` from regular slices at sample
/// points, returning the decomposition with its regular form. Without
/// explicit samples, integer points of `X` are enumerated.
pub fn certify_regular(
    setting: &SliceSetting,
    big_f: &Fraction,
    f: &Polynomial,
    samples: Option<&[Vec<Scalar>]>,
    budget: usize,
) -> Result<SliceDecomposition> {
    let mut d = decompose_tensor(setting, big_f, f)?;
    let h: Vec<Polynomial> = d.terms.iter().map(|(h, _)| h.clone()).collect();
    let on_x = |p: &Vec<Scalar>| setting.x.contains_point(p);
    // the budget bounds enumerated candidates, including those off X
    let points = match samples {
        Some(s) => find_unimodular_samples(&h, s.iter().take(budget).filter(|p| on_x(p)).cloned(), budget)?,
        None => find_unimodular_samples(&h, box_points(setting.x.arity()).take(budget).filter(on_x), budget)?,
    };
    let n = h.len();
    let matrix: Matrix = h.iter().map(|hi| points.iter().map(|x| hi.eval(x)).collect()).collect();
    let transposed: Matrix = (0..n).map(|j| (0..n).map(|i| matrix[i][j].clone()).collect()).collect();
    let lambdas = if n == 0 { Vec::new() } else { linalg::inverse(&transposed).ok_or(Error::SingularSamples)? };

    let iy = setting.y.ideal();
    let mut slices = Vec::with_capacity(n);
    for (j, x) in points.iter().enumerate() {
        let num = setting.slice(&big_f.num, x);
        let den = setting.slice(&big_f.den, x);
        let text =
            || Fraction::new(num.clone(), if den.is_zero() { Polynomial::one(den.arity()) } else { den.clone() });
        if den.is_zero() || iy.contains(&den)? {
            return Err(Error::SliceNotRegular {
                sample: j,
                slice: format!("{} undefined", setting.y.format(&big_f.den)),
            });
        }
        match divide_modulo(&num, &den, iy)? {
            Some(p) => slices.push(p),
            None => return Err(Error::SliceNotRegular { sample: j, slice: text().format(setting.y.names()) }),
        }
    }

    let ny = setting.y.arity();
    let fk = d.f.pow(d.k);
    let nx = setting.split();
    let total = setting.product.arity();
    let mut form = Polynomial::zero(total);
    for (i, (hi, fi)) in d.terms.iter().enumerate() {
        let mut r = Polynomial::zero(ny);
        for (j, s) in slices.iter().enumerate() {
            r = &r + &s.scale(&lambdas[i][j]);
        }
        let residue = iy.normal_form(&(fi - &(&fk * &r)))?;
        if !residue.is_zero() {
            let shown = Fraction::new(fi.clone(), fk.clone()).format(setting.y.names());
            return Err(Error::NonPolynomialResidue { index: i, residue: shown });
        }
        form = &form + &(&hi.shift(0, total) * &r.shift(nx, total));
    }
    let form = setting.product.ideal().normal_form(&form)?;
    let diff = &big_f.num - &(&big_f.den * &form);
    if !vanishes(setting.product.ideal(), &diff, &big_f.den)? {
        return Err(Error::NonPolynomialResidue { index: n, residue: setting.product.format(&diff) });
    }
    d.samples = points;
    d.matrix = matrix;
    d.lambdas = lambdas;
    d.slices = slices;
    d.regular_form = Some(form);
    Ok(d)
}

/// Polynomial coordinates for an action certified regular, one
/// decomposition per target coordinate.
#[derive(Clone, Debug)]
pub struct RegularActionData {
    pub coordinates: Vec<Polynomial>,
    pub certificates: Vec<SliceDecomposition>,
}

/// Certifies that a parametric action is regular from sample group points
/// whose specializations are regular automorphisms. `representative`, when
/// given, must agree with the action's law; it lets a deliberately
/// uncancelled presentation run through the certifier.
pub fn regularity_from_subgroup(
    action: &RationalAction,
    representative: Option<&[Fraction]>,
    samples: &[GroupPoint],
    budget: usize,
) -> Result<RegularActionData> {
    let ActionLaw::Parametric(rho) = action.law() else {
        return Err(Error::Unsupported("regularity from a subgroup needs a group variety".into()));
    };
    let group = action.group();
    let mut coords = Vec::with_capacity(samples.len());
    for g in samples {
        let point = || group.format_point(g);
        let rho_g = action.specialize(g).map_err(|_| Error::NotRegularOnSample { point: point() })?;
        let rho_inv = action.specialize(&group.invert(g)?).map_err(|_| Error::NotRegularOnSample { point: point() })?;
        if !rho_g.is_polynomial() || !rho_inv.is_polynomial() {
            return Err(Error::NotRegularOnSample { point: point() });
        }
        match g {
            GroupPoint::Coords(c) => coords.push(c.clone()),
            GroupPoint::Element(_) => unreachable!("parametric group"),
        }
    }
    let p = rho.source();
    let rep: Vec<Fraction> = match representative {
        Some(r) => {
            if r.len() != rho.first().len() {
                return Err(Error::ArityMismatch { expected: rho.first().len(), found: r.len() });
            }
            for (a, b) in r.iter().zip(rho.first()) {
                if !vanishes(p.ideal(), &a.cross_difference(b), &(&a.den * &b.den))? {
                    return Err(Error::Invalid("the representative differs from the action law".into()));
                }
            }
            r.to_vec()
        }
        None => rho.first().to_vec(),
    };
    let gx = group.variety().expect("parametric group").clone();
    let setting = SliceSetting::new(gx, action.space().clone());
    let ng = group.arity();
    let nx = action.space().arity();
    let GroupPoint::Coords(e) = group.identity() else { unreachable!("parametric group") };
    // f: the denominators with the group coordinates at the identity
    let assign: Vec<Option<Scalar>> = (0..ng + nx).map(|i| e.get(i).cloned()).collect();
    let to_x: Vec<usize> = (0..ng + nx).map(|i| i.saturating_sub(ng)).collect();
    let mut f = Polynomial::one(nx);
    for c in &rep {
        let d = c.den.eval_partial(&assign).remap(&to_x, nx);
        if !d.is_constant() && f.div_exact(&d).is_none() {
            f = &f * &d;
        }
    }
    let f = if f.is_zero() { Polynomial::one(nx) } else { f.monic() };
    let mut certificates = Vec::with_capacity(rep.len());
    let mut coordinates = Vec::with_capacity(rep.len());
    for c in &rep {
        let d = certify_regular(&setting, c, &f, Some(&coords), budget)?;
        coordinates.push(d.regular_form.clone().expect("certified"));
        certificates.push(d);
    }
    Ok(RegularActionData { coordinates, certificates })
}

/// Formats a matrix row by row.
pub fn format_matrix(m: &Matrix) -> Vec<Vec<String>> {
    m.iter().map(|r| r.iter().map(fmt_scalar).collect()).collect()
}
