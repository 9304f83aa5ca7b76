//! End-to-end acceptance checks, one printed line per criterion. Runs with
//! its own `main` so each criterion reports even when another fails.

use std::collections::HashMap;
use std::panic::{self, AssertUnwindSafe};
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use weilreg::exactalg::{
    int, ratio, read_fraction, read_polynomial, Comparator, Fraction, Monomial, MonomialOrder, Scalar,
};
use weilreg::fixtures::*;
use weilreg::groups::*;
use weilreg::regularize::*;
use weilreg::slice::*;
use weilreg::varmaps::*;
use weilreg::{Error, Ideal, Polynomial};
use weilreg_cli::{run_text, RunOptions};

type Outcome = Result<(), String>;
type Criterion = (&'static str, fn() -> Outcome);

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn ok<T>(r: weilreg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ideal(names: &[String], gens: &[&str]) -> Ideal {
    Ideal::new(names.len(), gens.iter().map(|g| read_polynomial(g, names).unwrap()).collect())
}

fn coords(m: &RationalMap) -> Vec<String> {
    m.format()[0].clone()
}

fn ga(v: &[i64]) -> Vec<GroupPoint> {
    v.iter().map(|&k| GroupPoint::Coords(vec![int(k)])).collect()
}

fn cremona_pipeline() -> Outcome {
    let sigma = cremona();
    let xy = sigma.source().names().to_vec();
    let axes = ideal(&xy, &["x*y"]);
    let breg = ok(biregular_locus(&sigma))?;
    ensure!(ok(breg.complement_ideal().same_as(&axes))?, "Breg(σ) complement is not V(xy)");

    let action = cremona_action();
    let reg = ok(g_regular_locus(&action))?;
    ensure!(ok(reg.open.complement_ideal().same_as(&axes))?, "X_reg is not {{xy ≠ 0}}");
    ensure!(ok(reg.complement.same_as(&axes))?, "closure of X ∖ X_reg is not V(xy)");

    let model = ok(regularize_finite(&action))?;
    let y = model.y();
    ensure!(ok(y.ideal().same_as(&ideal(y.names(), &["u1*u3-1", "u2*u4-1"])))?, "J = {:?}", y.ideal());
    let s = action.group().element("s").ok_or("no element s")?;
    let mu = coords(&model.endomorphisms[s]);
    ensure!(mu == ["u3", "u4", "u1", "u2"], "μ_s = {mu:?}");
    let e = action.group().element("e").ok_or("no element e")?;
    ensure!(ok(maps_equal(&model.endomorphisms[e], &RationalMap::identity(y.clone())))?, "μ_e ≠ id");
    ok(model.verify(&action))?;

    // ψ is birational: both round trips are identities
    let on_x = ok(compose_unchecked(model.psi_inv(), model.psi()))?;
    ensure!(ok(maps_equal(&on_x, &RationalMap::identity(sigma.source().clone())))?, "ψ∘ψ⁻¹ ≠ id");
    let on_y = ok(compose_unchecked(model.psi(), model.psi_inv()))?;
    ensure!(ok(maps_equal(&on_y, &RationalMap::identity(y.clone())))?, "ψ⁻¹∘ψ ≠ id");
    Ok(())
}

fn blowup_locus() -> Outcome {
    let action = blowup_action();
    let reg = ok(g_regular_locus(&action))?;
    let u = read_polynomial("u", action.space().names()).unwrap();
    let gen_u = Ideal::new(2, vec![u.clone()]);
    ensure!(ok(reg.complement.radical_contains(&u))?, "u ∉ rad(complement)");
    for g in reg.complement.generators() {
        ensure!(ok(gen_u.radical_contains(g))?, "{g:?} ∉ rad(u)");
    }
    ensure!(!ok(reg.all_regular())?, "every point reported regular");
    Ok(())
}

fn closed_graph() -> Outcome {
    let rho1 = blowup_shift(1);
    let x = rho1.source().clone();
    let whole = OpenSubset::whole(x.clone());
    let check = ok(is_graph_closed(&rho1, &whole))?;
    ensure!(!check.closed, "graph reported closed on 𝔸²");
    // a witness must meet the fiber over u = −1, t = 0
    let fiber: Vec<Polynomial> = ["u+1", "t"].iter().map(|g| read_polynomial(g, &check.names).unwrap()).collect();
    let mut meets = false;
    for w in &check.witnesses {
        if !ok(w.with_generators(fiber.clone()).is_unit())? {
            meets = true;
        }
    }
    ensure!(meets, "no witness meets {{u = -1, t = 0}}");

    let xreg = ok(OpenSubset::principal(x.clone(), read_polynomial("u", x.names()).unwrap()))?;
    let check = ok(is_graph_closed(&rho1, &xreg))?;
    ensure!(check.closed, "graph not closed on {{u ≠ 0}}: {:?}", check.witnesses);
    Ok(())
}

fn atlas_checks() -> Outcome {
    let action = blowup_action();
    let open = ok(g_regular_locus(&action))?.open.clone();
    let r = ok(action.restrict_to_open(&open))?;
    let report = ok(check_atlas(&ok(build_atlas(&r, &ga(&[0, 1])))?))?;
    ensure!(report.all_passed(), "atlas on X_reg: {report:?}");

    // the covering certificate: E = V(u + s) over {u ≠ 0} and its translate
    // by g₁ = 1 have no common point
    let tilde = ok(tilde_biregular_locus(&r))?;
    let names = r.product_space().unwrap().names().to_vec();
    let u = read_polynomial("u", &names).unwrap();
    let e0 = ok(tilde[0].complement_ideal().saturate(&u))?;
    ensure!(ok(e0.same_as(&ideal(&names, &["u+s"])))?, "E over X_reg is {e0:?}");
    let shift: Vec<Polynomial> = ["s-1", "u", "t"].iter().map(|g| read_polynomial(g, &names).unwrap()).collect();
    let e1 = Ideal::new(3, e0.generators().iter().map(|g| g.compose(&shift)).collect());
    ensure!(ok(e1.same_as(&ideal(&names, &["u+s-1"])))?, "translated E is {e1:?}");
    ensure!(ok(e0.sum(&e1).is_unit())?, "1 ∉ (u+s, u+s-1)");

    let full = ok(check_atlas(&ok(build_atlas(&action, &ga(&[0, 1])))?))?;
    ensure!(!full.separated.passed(), "separatedness passed on 𝔸²");
    ensure!(full.separated.witnesses.iter().all(|w| !w.generators.is_empty()), "empty separatedness witness");
    Ok(())
}

fn action_laws() -> Outcome {
    let action = blowup_action();
    let ActionLaw::Parametric(rho) = action.law() else { return Err("blow-up law is not parametric".into()) };
    let x = action.space().clone();
    let gg = Arc::new(AffineVariety::affine_space(&["s", "s2", "u", "t"]));
    let v = |i| Fraction::var(4, i);
    let law = rho.first();
    let apply = |g: Fraction, p: &[Fraction]| -> Vec<Fraction> {
        let args = [g, p[0].clone(), p[1].clone()];
        law.iter().map(|c| c.compose(&args)).collect()
    };
    let inner = apply(v(0), &[v(2), v(3)]);
    let left = apply(v(1), &inner);
    let sum = Fraction::poly(&Polynomial::var(4, 0) + &Polynomial::var(4, 1));
    let right = apply(sum, &[v(2), v(3)]);
    let left = ok(RationalMap::new(gg.clone(), x.clone(), vec![left]))?;
    let right = ok(RationalMap::new(gg, x, vec![right]))?;
    ensure!(ok(maps_equal(&left, &right))?, "ρ(s′,ρ(s,x)) ≠ ρ(s+s′,x): {:?}", ok(map_residue(&left, &right))?);

    let sigma = cremona();
    let twice = ok(compose(&sigma, &sigma))?;
    ensure!(ok(maps_equal(&twice, &RationalMap::identity(sigma.source().clone())))?, "σ∘σ ≠ id");

    match parametric_action(additive("s"), plane("u", "t"), &["u+s", "u*t/(u+2*s)"]) {
        Err(Error::NotAnAction { residue, .. }) => {
            ensure!(!residue.is_empty() && residue != "0", "residue {residue:?}");
        }
        other => return Err(format!("mutated action accepted: {other:?}")),
    }
    Ok(())
}

fn slice_certifier() -> Outcome {
    let line = |n: &str| Arc::new(AffineVariety::affine_space(&[n]));
    let setting = SliceSetting::new(line("a"), line("y"));
    let f = read_polynomial("y", &["y"]).unwrap();
    let big_f = read_fraction("(a*y^2+y)/y", &["a", "y"]).unwrap();
    let samples = vec![vec![int(0)], vec![int(1)]];
    let d = ok(certify_regular(&setting, &big_f, &f, Some(&samples), 100))?;
    let form = d.regular_form.as_ref().ok_or("no regular form")?;
    ensure!(setting.product.format(form) == "a*y+1", "form {}", setting.product.format(form));

    // F_j = F(x_j, y) computed directly
    let fy = |a: i64| {
        let at = read_fraction(&format!("(({a})*y^2+y)/y"), &["y"]).unwrap();
        at.num.div_exact(&at.den).expect("slice is regular")
    };
    let (f0, f1) = (fy(0), fy(1));
    let fk = f.pow(d.k);
    let h = |i: usize| setting.x.format(&d.terms[i].0);
    let i1 = (0..d.terms.len()).find(|&i| h(i) == "a").ok_or("no a-term")?;
    let i2 = (0..d.terms.len()).find(|&i| h(i) == "1").ok_or("no constant term")?;
    // f₁/f = F₁ − F₀ and f₂/f = F₀
    ensure!(d.terms[i1].1 == &fk * &(&f1 - &f0), "f₁ ≠ f·(F₁ − F₀)");
    ensure!(d.terms[i2].1 == &fk * &f0, "f₂ ≠ f·F₀");
    let lam = &d.lambdas;
    ensure!(lam[i1] == [int(-1), int(1)] && lam[i2] == [int(1), int(0)], "λ = {lam:?}");

    let inv = read_fraction("1/y", &["a", "y"]).unwrap();
    match certify_regular(&setting, &inv, &f, Some(&samples), 100) {
        Err(Error::SliceNotRegular { .. }) => {}
        other => return Err(format!("1/y: {other:?}")),
    }

    let (action, raw) = inflated_scaling();
    let g = action.group().clone();
    let pts: Vec<GroupPoint> = [1, 2, 3].iter().map(|&k| g.point(&[int(k)]).unwrap()).collect();
    let data = ok(regularity_from_subgroup(&action, Some(&raw), &pts, 100))?;
    let p = action.product_space().unwrap();
    let got: Vec<String> = data.coordinates.iter().map(|c| p.format(c)).collect();
    ensure!(got == ["z*x"], "inflated 𝔾_m coordinates {got:?}");
    Ok(())
}

// An independent division algorithm, written against nothing but the
// monomial order, to audit the engine's bases.

fn lead(p: &Polynomial, cmp: &Comparator) -> (Monomial, Scalar) {
    p.terms().iter().max_by(|a, b| cmp.cmp(&a.0, &b.0)).cloned().expect("nonzero")
}

fn divide(f: &Polynomial, basis: &[Polynomial], cmp: &Comparator) -> Polynomial {
    let n = f.arity();
    let leads: Vec<(Monomial, Scalar)> = basis.iter().map(|g| lead(g, cmp)).collect();
    let mut p = f.clone();
    let mut rem = Polynomial::zero(n);
    while !p.is_zero() {
        let (m, c) = lead(&p, cmp);
        match leads.iter().position(|(lm, _)| lm.divides(&m)) {
            Some(i) => {
                let (lm, lc) = &leads[i];
                p = &p - &basis[i].mul_monomial(&lm.quotient_of(&m), &(&c / lc));
            }
            None => {
                let t = Polynomial::monomial(m, c);
                rem = &rem + &t;
                p = &p - &t;
            }
        }
    }
    rem
}

fn s_poly(f: &Polynomial, g: &Polynomial, cmp: &Comparator) -> Polynomial {
    let (mf, cf) = lead(f, cmp);
    let (mg, cg) = lead(g, cmp);
    let l = mf.lcm(&mg);
    &f.mul_monomial(&mf.quotient_of(&l), &(Scalar::one() / cf))
        - &g.mul_monomial(&mg.quotient_of(&l), &(Scalar::one() / cg))
}

fn random_poly(rng: &mut ChaCha8Rng, n: usize, max_deg: u32, max_terms: usize) -> Polynomial {
    let count = rng.gen_range(1..=max_terms);
    let terms = (0..count).map(|_| {
        let deg = rng.gen_range(0..=max_deg);
        let mut e = vec![0u32; n];
        for _ in 0..deg {
            e[rng.gen_range(0..n)] += 1;
        }
        let mut c = rng.gen_range(-5i64..=4);
        if c >= 0 {
            c += 1;
        }
        (Monomial::from_exponents(e), int(c))
    });
    Polynomial::from_terms(n, terms)
}

fn groebner_instance(rng: &mut ChaCha8Rng, k: usize) -> Outcome {
    let n = rng.gen_range(1..=3);
    let order = match k % 3 {
        0 => MonomialOrder::Lex,
        1 => MonomialOrder::GrevLex,
        _ => MonomialOrder::Block(vec![vec![n - 1]]),
    };
    let count = rng.gen_range(1..=3);
    let gens: Vec<Polynomial> = (0..count).map(|_| random_poly(rng, n, 4, 3)).filter(|p| !p.is_zero()).collect();
    let id = Ideal::new(n, gens.clone());
    let gb = ok(id.groebner(&order))?;
    let basis = gb.polynomials();
    let cmp = order.comparator(n);
    for (i, f) in basis.iter().enumerate() {
        for g in &basis[i + 1..] {
            let r = divide(&s_poly(f, g, &cmp), &basis, &cmp);
            ensure!(r.is_zero(), "instance {k}: S-polynomial does not reduce to 0 ({r:?})");
        }
        let (m, c) = lead(f, &cmp);
        ensure!(c.is_one(), "instance {k}: basis element not monic");
        for (j, g) in basis.iter().enumerate() {
            if i != j {
                ensure!(g.terms().iter().all(|(t, _)| !m.divides(t)), "instance {k}: basis not reduced");
            }
        }
    }
    for g in &gens {
        ensure!(divide(g, &basis, &cmp).is_zero(), "instance {k}: generator outside the basis span");
    }
    let f = random_poly(rng, n, 5, 4);
    let nf = gb.reduce(&f);
    ensure!(gb.reduce(&nf) == nf, "instance {k}: normal form not idempotent");
    ensure!(divide(&f, &basis, &cmp) == nf, "instance {k}: normal form disagrees with division");
    Ok(())
}

/// Fraction-free (Bareiss) determinant of a matrix over `𝕜[y]`.
fn bareiss(mut m: Vec<Vec<Polynomial>>, arity: usize) -> Polynomial {
    let n = m.len();
    let mut sign = Scalar::one();
    let mut prev = Polynomial::one(arity);
    for k in 0..n {
        if m[k][k].is_zero() {
            match (k + 1..n).find(|&i| !m[i][k].is_zero()) {
                Some(i) => {
                    m.swap(k, i);
                    sign = -sign;
                }
                None => return Polynomial::zero(arity),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let t = &(&m[i][j] * &m[k][k]) - &(&m[i][k] * &m[k][j]);
                m[i][j] = t.div_exact(&prev).expect("Bareiss division is exact");
            }
        }
        prev = m[k][k].clone();
    }
    prev.scale(&sign)
}

/// Coefficients of `f` in `x = var 0`, lowest degree first.
fn x_coefficients(f: &Polynomial) -> Vec<Polynomial> {
    let n = f.arity();
    let deg = f.degree_in(0) as usize;
    let mut out = vec![Polynomial::zero(n); deg + 1];
    for (m, c) in f.terms() {
        let mut e = m.exponents().to_vec();
        let d = std::mem::take(&mut e[0]) as usize;
        out[d] = &out[d] + &Polynomial::monomial(Monomial::from_exponents(e), c.clone());
    }
    out
}

fn resultant(f: &Polynomial, g: &Polynomial) -> Polynomial {
    let (a, b) = (x_coefficients(f), x_coefficients(g));
    let (m, n) = (a.len() - 1, b.len() - 1);
    let size = m + n;
    let zero = Polynomial::zero(f.arity());
    let mut rows = Vec::with_capacity(size);
    for shift in 0..n {
        let mut row = vec![zero.clone(); size];
        for (i, c) in a.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    for shift in 0..m {
        let mut row = vec![zero.clone(); size];
        for (i, c) in b.iter().rev().enumerate() {
            row[shift + i] = c.clone();
        }
        rows.push(row);
    }
    bareiss(rows, f.arity())
}

fn elimination_instance(rng: &mut ChaCha8Rng) -> Result<bool, String> {
    // f monic in x, so the projection of V(f, g) is closed
    let m = rng.gen_range(1..=2u32);
    let lower = random_poly(rng, 2, 3, 3);
    let lower = Polynomial::from_terms(2, lower.terms().iter().filter(|(t, _)| t.exponent(0) < m).cloned());
    let f = &Polynomial::monomial(Monomial::from_exponents(vec![m, 0]), int(1)) + &lower;
    let g = random_poly(rng, 2, 3, 3);
    if g.degree_in(0) == 0 {
        return Ok(false);
    }
    let res = resultant(&f, &g);
    if res.is_zero() {
        return Ok(false);
    }
    let j = ok(Ideal::new(2, vec![f.clone(), g.clone()]).eliminate(&[0]))?;
    ensure!(ok(j.contains(&res))?, "Res(f, g) ∉ J for f = {f:?}, g = {g:?}");
    let r = Ideal::new(2, vec![res.clone()]);
    for p in j.generators() {
        ensure!(ok(r.radical_contains(p))?, "{p:?} ∉ rad(Res) for f = {f:?}, g = {g:?}");
    }
    Ok(true)
}

fn groebner_properties() -> Outcome {
    let start = Instant::now();
    // the oracle must see that (x² − y, xy − 1) is not a lex basis
    let names = ["x", "y"];
    let fake: Vec<Polynomial> = ["x^2-y", "x*y-1"].iter().map(|g| read_polynomial(g, &names).unwrap()).collect();
    let lex = MonomialOrder::Lex.comparator(2);
    ensure!(!divide(&s_poly(&fake[0], &fake[1], &lex), &fake, &lex).is_zero(), "oracle accepts a non-basis");

    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0007);
    for k in 0..1000 {
        groebner_instance(&mut rng, k)?;
    }
    let mut done = 0;
    let mut tries = 0;
    while done < 100 {
        tries += 1;
        ensure!(tries < 2000, "too many degenerate resultant instances");
        if elimination_instance(&mut rng)? {
            done += 1;
        }
    }
    let secs = start.elapsed().as_secs();
    ensure!(secs <= 300, "property suite took {secs}s");
    Ok(())
}

// Pointwise checks of the G-regular lemmas on sampled rational points.

const SAMPLES: usize = 200;
const ATTEMPTS: usize = 5000;

fn small_rational(rng: &mut ChaCha8Rng) -> Scalar {
    ratio(rng.gen_range(-6..=6), rng.gen_range(1..=3))
}

struct Fixture {
    name: &'static str,
    action: RationalAction,
    /// A pool of group points to draw `g` and `h` from.
    pool: Vec<GroupPoint>,
}

impl Fixture {
    fn new(name: &'static str, action: RationalAction) -> Self {
        let group = action.group().clone();
        let pool = if group.is_finite() {
            (0..group.elements().unwrap().len()).map(GroupPoint::Element).collect()
        } else {
            [-3, -2, -1, 1, 2, 3, 5]
                .iter()
                .flat_map(|&a| [ratio(a, 1), ratio(a, 2)])
                .map(|p| group.point(&[p]).unwrap())
                .collect()
        };
        Fixture { name, action, pool }
    }

    fn point(&self, rng: &mut ChaCha8Rng) -> Vec<Scalar> {
        (0..self.action.space().arity()).map(|_| small_rational(rng)).collect()
    }

    fn pick(&self, rng: &mut ChaCha8Rng) -> GroupPoint {
        self.pool[rng.gen_range(0..self.pool.len())].clone()
    }
}

/// Membership in the biregular locus of `ρ̃` at `(g, x)`.
fn in_tilde(tilde: &[OpenSubset], g: &GroupPoint, x: &[Scalar]) -> bool {
    match g {
        GroupPoint::Element(i) => tilde[*i].contains(x),
        GroupPoint::Coords(c) => {
            let p: Vec<Scalar> = c.iter().chain(x).cloned().collect();
            tilde[0].contains(&p)
        }
    }
}

/// Specializations and their biregular loci, memoized per group point.
struct Specials<'a> {
    action: &'a RationalAction,
    cache: HashMap<usize, (RationalMap, OpenSubset)>,
    pool: &'a [GroupPoint],
}

impl<'a> Specials<'a> {
    fn get(&mut self, g: &GroupPoint) -> Result<&(RationalMap, OpenSubset), String> {
        let i = self.pool.iter().position(|p| p == g).ok_or("point outside the pool")?;
        if !self.cache.contains_key(&i) {
            let m = ok(self.action.specialize(g))?;
            let b = ok(biregular_locus(&m))?;
            self.cache.insert(i, (m, b));
        }
        Ok(&self.cache[&i])
    }
}

fn lemma_suite(fx: &Fixture, rng: &mut ChaCha8Rng) -> Outcome {
    let name = fx.name;
    let action = &fx.action;
    let group = action.group().clone();
    let reg = ok(g_regular_locus(action))?;
    let xreg = reg.open.clone();
    let tilde = ok(tilde_biregular_locus(action))?;
    let mut specials = Specials { action, cache: HashMap::new(), pool: &fx.pool };

    // main.prop(b): x ∈ X_reg, (g, x) ∈ Breg(ρ̃) ⟹ g·x ∈ X_reg
    let mut hits = 0;
    for _ in 0..ATTEMPTS {
        if hits == SAMPLES {
            break;
        }
        let (g, x) = (fx.pick(rng), fx.point(rng));
        if !xreg.contains(&x) || !in_tilde(&tilde, &g, &x) {
            continue;
        }
        let gx = specials.get(&g)?.0.eval(&x).ok_or(format!("{name}: ρ̃ biregular but ρ_g undefined at {x:?}"))?;
        ensure!(xreg.contains(&gx), "{name}: g·x = {gx:?} ∉ X_reg for x = {x:?}");
        hits += 1;
    }
    ensure!(hits == SAMPLES, "{name}: only {hits} samples for main.prop(b)");

    // biregular.lem(b): (g, x) ∈ Breg(ρ̃), g·x ∈ Breg(ρ_h) ⟹ (hg, x) ∈ Breg(ρ̃)
    let mut hits = 0;
    for _ in 0..ATTEMPTS {
        if hits == SAMPLES {
            break;
        }
        let (g, h, x) = (fx.pick(rng), fx.pick(rng), fx.point(rng));
        if !in_tilde(&tilde, &g, &x) {
            continue;
        }
        let Some(gx) = specials.get(&g)?.0.eval(&x) else { continue };
        if !specials.get(&h)?.1.contains(&gx) {
            continue;
        }
        let hg = ok(group.multiply(&h, &g))?;
        ensure!(in_tilde(&tilde, &hg, &x), "{name}: ρ̃ not biregular at (hg, x), x = {x:?}");
        hits += 1;
    }
    ensure!(hits == SAMPLES, "{name}: only {hits} samples for biregular.lem(b)");

    // def-bireg.lem on the action restricted to X_reg
    let restricted = ok(action.restrict_to_open(&xreg))?;
    ensure!(ok(ok(g_regular_locus(&restricted))?.all_regular())?, "{name}: restriction to X_reg not G-regular");
    let mut specials = Specials { action: &restricted, cache: HashMap::new(), pool: &fx.pool };
    let mut hits = 0;
    for _ in 0..ATTEMPTS {
        if hits == SAMPLES {
            break;
        }
        let (g, x) = (fx.pick(rng), fx.point(rng));
        if !xreg.contains(&x) {
            continue;
        }
        let (rho_g, breg) = specials.get(&g)?;
        let PointStatus::Defined(y) = ok(point_status(rho_g, &x))? else { continue };
        if !xreg.contains(&y) {
            continue;
        }
        ensure!(breg.contains(&x), "{name}: ρ_g defined but not biregular at {x:?}");
        hits += 1;
    }
    ensure!(hits == SAMPLES, "{name}: only {hits} samples for def-bireg.lem");
    Ok(())
}

fn pointwise_lemmas() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_0008);
    let fixtures = [
        Fixture::new("blow-up", blowup_action()),
        Fixture::new("translation", translation_action()),
        Fixture::new("scaling", scaling_action()),
        Fixture::new("cremona", cremona_action()),
        Fixture::new("half-cremona", half_cremona_action()),
    ];
    for fx in &fixtures {
        lemma_suite(fx, &mut rng)?;
    }
    Ok(())
}

fn goldens() -> Outcome {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    let mut sessions: Vec<PathBuf> = std::fs::read_dir(root.join("sessions"))
        .map_err(|e| e.to_string())?
        .map(|e| e.unwrap().path())
        .filter(|p| p.extension().is_some_and(|e| e == "wr"))
        .collect();
    sessions.sort();
    ensure!(sessions.len() == 6, "expected 6 sessions, found {}", sessions.len());
    for s in sessions {
        let golden = root.join("tests/golden").join(s.file_stem().unwrap()).with_extension("json");
        let text = std::fs::read_to_string(&s).map_err(|e| e.to_string())?;
        let name = s.file_name().unwrap().to_string_lossy();
        let report = run_text(&text, &name, &RunOptions::default()).map_err(|d| d.to_string())?;
        let want = std::fs::read_to_string(&golden).map_err(|e| format!("{}: {e}", golden.display()))?;
        ensure!(report.to_golden() == want, "{} differs from {}", s.display(), golden.display());
    }
    Ok(())
}

fn main() {
    let criteria: [Criterion; 9] = [
        ("Cremona pipeline", cremona_pipeline),
        ("blow-up G-regular locus", blowup_locus),
        ("closed-graph dichotomy", closed_graph),
        ("atlas checks", atlas_checks),
        ("action-law verification", action_laws),
        ("slice certifier", slice_certifier),
        ("Gröbner engine properties", groebner_properties),
        ("pointwise lemma suite", pointwise_lemmas),
        ("CLI golden reports", goldens),
    ];
    panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(check)).unwrap_or_else(|p| {
            let msg = p.downcast_ref::<String>().cloned().or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()));
            Err(format!("panicked: {}", msg.unwrap_or_default()))
        });
        let ms = start.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("criterion {}: {name} ... PASS ({ms} ms)", i + 1),
            Err(e) => {
                failed += 1;
                println!("criterion {}: {name} ... FAIL ({ms} ms): {e}", i + 1);
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
