//! Executes the commands of a checked session. Every command builds the
//! objects it needs from the declarations afresh, so records do not
//! depend on command order and can be computed in parallel.

use std::collections::HashMap;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Arc;
use std::time::Instant;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde_json::{json, Value as Json};
use weilreg::exactalg::budget;
use weilreg::groups::{
    action_space, g_regular_locus, make_group, make_rational_action, ActionLaw, AlgebraicGroup, GroupPoint, GroupSpec,
    RationalAction,
};
use weilreg::regularize::{build_atlas, check_atlas, regularize_finite, CheckOutcome};
use weilreg::slice::{certify_regular, format_matrix, regularity_from_subgroup, SliceDecomposition, SliceSetting};
use weilreg::varmaps::{
    biregular_locus, closed_image, compose, definable_locus, graph_closure, inverse, is_graph_closed,
};
use weilreg::{AffineVariety, Error, Fraction, Ideal, OpenSubset, Polynomial, RationalMap, Result, Scalar};

use crate::dsl::{check, is_xreg, print_item, ActionBody, Diagnostic, Expr, GroupExpr, Item, Session, Symbols, Value};
use crate::report::{Record, Report, Status};

/// Candidate sample points tried by `certify` when no budget is given.
pub const DEFAULT_SAMPLE_BUDGET: usize = 1000;

#[derive(Clone, Debug)]
pub struct RunOptions {
    pub max_steps: u64,
    pub parallel: bool,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions { max_steps: budget::DEFAULT_MAX_STEPS, parallel: false }
    }
}

/// Evaluates an expression to a fraction over `names`, keeping the
/// numerator and denominator exactly as written.
pub fn fraction(e: &Expr, names: &[String]) -> Result<Fraction> {
    let n = names.len();
    Ok(match e {
        Expr::Int(d) => {
            let v: BigInt = d.parse().map_err(|_| Error::Invalid(format!("bad integer {d}")))?;
            Fraction::poly(Polynomial::constant(n, Scalar::from_integer(v)))
        }
        Expr::Var(id) => {
            let i = names
                .iter()
                .position(|v| *v == id.name)
                .ok_or_else(|| Error::Invalid(format!("unknown variable {}", id.name)))?;
            Fraction::var(n, i)
        }
        Expr::Neg(a) => {
            let a = fraction(a, names)?;
            Fraction::new(-&a.num, a.den)
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            let (a, b) = (fraction(a, names)?, fraction(b, names)?);
            let (l, r) = (&a.num * &b.den, &b.num * &a.den);
            let num = if matches!(e, Expr::Add(..)) { &l + &r } else { &l - &r };
            Fraction::new(num, &a.den * &b.den)
        }
        Expr::Mul(a, b) => {
            let (a, b) = (fraction(a, names)?, fraction(b, names)?);
            Fraction::new(&a.num * &b.num, &a.den * &b.den)
        }
        Expr::Div(a, b) => {
            let (a, b) = (fraction(a, names)?, fraction(b, names)?);
            if b.num.is_zero() {
                return Err(Error::ZeroDenominator(crate::dsl::print_expr(e)));
            }
            Fraction::new(&a.num * &b.den, &a.den * &b.num)
        }
        Expr::Pow(a, k) => {
            let a = fraction(a, names)?;
            Fraction::new(a.num.pow(*k), a.den.pow(*k))
        }
        Expr::Paren(a) => fraction(a, names)?,
    })
}

fn polynomial(e: &Expr, names: &[String]) -> Result<Polynomial> {
    let f = fraction(e, names)?;
    f.normalized(None)?
        .as_polynomial()
        .ok_or_else(|| Error::Invalid(format!("{} is not a polynomial", crate::dsl::print_expr(e))))
}

fn scalar(e: &Expr) -> Result<Scalar> {
    let f = fraction(e, &[])?;
    let (n, d) = (f.num.constant_value(), f.den.constant_value());
    match (n, d) {
        (Some(n), Some(d)) => Ok(n / d),
        _ => Err(Error::Invalid(format!("{} is not a number", crate::dsl::print_expr(e)))),
    }
}

fn exprs(v: &Value) -> Vec<&Expr> {
    match v {
        Value::Expr(e) => vec![e],
        Value::Tuple(items) => items.iter().flat_map(exprs).collect(),
    }
}

/// A point given as a number or a tuple of numbers.
fn point(v: &Value) -> Result<Vec<Scalar>> {
    match v {
        Value::Expr(e) => Ok(vec![scalar(e)?]),
        Value::Tuple(items) => items
            .iter()
            .map(|i| match i {
                Value::Expr(e) => scalar(e),
                Value::Tuple(_) => Err(Error::Invalid("nested tuple in a point".into())),
            })
            .collect(),
    }
}

/// A list of points: a tuple of points, or one bare point.
fn points(v: &Value) -> Vec<&Value> {
    match v {
        Value::Tuple(items) => items.iter().collect(),
        single => vec![single],
    }
}

fn group_point(group: &AlgebraicGroup, v: &Value) -> Result<GroupPoint> {
    if group.is_finite() {
        if let Value::Expr(Expr::Var(id)) = v {
            let i = group.element(&id.name).ok_or_else(|| Error::PointNotOnGroup(id.name.clone()))?;
            return Ok(GroupPoint::Element(i));
        }
        return Err(Error::Invalid("points of a finite group are element names".into()));
    }
    group.point(&point(v)?)
}

fn open(host: &Arc<AffineVariety>, v: &Value) -> Result<OpenSubset> {
    let ws = exprs(v).into_iter().map(|e| polynomial(e, host.names())).collect::<Result<Vec<_>>>()?;
    OpenSubset::from_witnesses(host.clone(), ws)
}

fn fmt_polys(ps: &[Polynomial], names: &[String]) -> Vec<String> {
    ps.iter().map(|p| p.format(names)).collect()
}

fn fmt_ideal(i: &Ideal, names: &[String]) -> Result<Vec<String>> {
    Ok(fmt_polys(&i.basis()?, names))
}

fn fmt_scalars(p: &[Scalar]) -> Vec<String> {
    p.iter().map(weilreg::exactalg::fmt_scalar).collect()
}

fn open_payload(o: &OpenSubset) -> Result<Json> {
    let o = o.simplified()?;
    let names = o.host().names();
    Ok(json!({
        "witnesses": fmt_polys(o.witnesses(), names),
        "complement": fmt_polys(&o.complement_basis()?, names),
    }))
}

fn outcome(o: &CheckOutcome) -> Json {
    let ws: Vec<Json> = o.witnesses.iter().map(|w| json!({"charts": w.charts, "generators": w.generators})).collect();
    json!({"passed": o.passed(), "witnesses": ws})
}

fn law_payload(action: &RationalAction) -> Json {
    match action.law() {
        ActionLaw::Parametric(m) => json!(m.format()[0]),
        ActionLaw::Finite(maps) => {
            let names = action.group().elements().expect("finite group");
            let rows: Vec<Json> =
                names.iter().zip(maps).map(|(n, m)| json!({"element": n, "map": m.format()[0]})).collect();
            json!(rows)
        }
    }
}

fn slice_payload(s: &SliceSetting, d: &SliceDecomposition) -> Json {
    let terms: Vec<[String; 2]> = d.terms.iter().map(|(h, f)| [s.x.format(h), s.y.format(f)]).collect();
    let samples: Vec<Vec<String>> = d.samples.iter().map(|p| fmt_scalars(p)).collect();
    json!({
        "f": s.y.format(&d.f),
        "k": d.k,
        "terms": terms,
        "samples": samples,
        "matrix": format_matrix(&d.matrix),
        "lambdas": format_matrix(&d.lambdas),
        "slices": fmt_polys(&d.slices, s.y.names()),
        "form": d.regular_form.as_ref().map(|p| s.product.format(p)),
    })
}

/// Objects built for one command, keyed by declared name.
struct Env<'a> {
    session: &'a Session,
    symbols: &'a Symbols,
    varieties: HashMap<String, Arc<AffineVariety>>,
}

impl<'a> Env<'a> {
    fn item(&self, name: &str) -> &'a Item {
        let entry = self.symbols.get(name).expect("checked session");
        &self.session.stmts[entry.stmt].item
    }

    fn variety(&mut self, name: &str) -> Result<Arc<AffineVariety>> {
        if let Some(v) = self.varieties.get(name) {
            return Ok(v.clone());
        }
        let Item::Variety { coords, relations, .. } = self.item(name) else { unreachable!("checked kind") };
        let names: Vec<String> = coords.iter().map(|c| c.name.clone()).collect();
        let gens = relations.iter().map(|r| polynomial(r, &names)).collect::<Result<Vec<_>>>()?;
        let v = Arc::new(AffineVariety::new(names, gens, true)?);
        self.varieties.insert(name.to_string(), v.clone());
        Ok(v)
    }

    fn map(&mut self, name: &str) -> Result<RationalMap> {
        let Item::Map { source, target, reps, .. } = self.item(name) else { unreachable!("checked kind") };
        let src = self.variety(&source.name)?;
        let tgt = self.variety(&target.name)?;
        let reps = reps
            .iter()
            .map(|r| r.iter().map(|e| fraction(e, src.names())).collect::<Result<Vec<_>>>())
            .collect::<Result<Vec<_>>>()?;
        RationalMap::new(src, tgt, reps)
    }

    fn group_spec(&self, g: &GroupExpr) -> GroupSpec {
        match g {
            GroupExpr::Additive(s) => GroupSpec::Additive(s.name.clone()),
            GroupExpr::Multiplicative(z, w) => GroupSpec::Multiplicative(z.name.clone(), w.name.clone()),
            GroupExpr::Finite { elements, table } => GroupSpec::Finite {
                elements: elements.iter().map(|e| e.name.clone()).collect(),
                table: table.iter().map(|r| r.iter().map(|e| e.name.clone()).collect()).collect(),
            },
            GroupExpr::Named(id) => {
                let Item::Group { expr, .. } = self.item(&id.name) else { unreachable!("checked kind") };
                self.group_spec(expr)
            }
            GroupExpr::Product(a, b) => GroupSpec::Product(Box::new(self.group_spec(a)), Box::new(self.group_spec(b))),
        }
    }

    fn group(&self, name: &str) -> Result<Arc<AlgebraicGroup>> {
        let Item::Group { expr, .. } = self.item(name) else { unreachable!("checked kind") };
        Ok(Arc::new(make_group(&self.group_spec(expr))?))
    }

    /// The action and, for a parametric law, its representative exactly
    /// as written.
    fn action(&mut self, name: &str) -> Result<(RationalAction, Option<Vec<Fraction>>)> {
        let Item::Action { group, space, body, .. } = self.item(name) else { unreachable!("checked kind") };
        let g = self.group(&group.name)?;
        let x = self.variety(&space.name)?;
        match body {
            ActionBody::Parametric(exprs) => {
                let p = action_space(&g, &x)?;
                let raw = exprs.iter().map(|e| fraction(e, p.names())).collect::<Result<Vec<_>>>()?;
                let law = RationalMap::new(p, x.clone(), vec![raw.clone()])?;
                Ok((make_rational_action(g, x, ActionLaw::Parametric(law))?, Some(raw)))
            }
            ActionBody::PerElement(entries) => {
                let names = g
                    .elements()
                    .ok_or_else(|| Error::Invalid(format!("{} is not a finite group", group.name)))?
                    .to_vec();
                let mut maps = Vec::with_capacity(names.len());
                for n in &names {
                    let (_, exprs) = entries
                        .iter()
                        .find(|(e, _)| e.name == *n)
                        .ok_or_else(|| Error::Invalid(format!("no map given for element {n}")))?;
                    let rep = exprs.iter().map(|e| fraction(e, x.names())).collect::<Result<Vec<_>>>()?;
                    maps.push(RationalMap::new(x.clone(), x.clone(), vec![rep])?);
                }
                Ok((make_rational_action(g, x, ActionLaw::Finite(maps))?, None))
            }
        }
    }

    fn function(&mut self, name: &str) -> Result<(SliceSetting, Fraction)> {
        let Item::Function { left, right, expr, .. } = self.item(name) else { unreachable!("checked kind") };
        let setting = SliceSetting::new(self.variety(&left.name)?, self.variety(&right.name)?);
        let f = fraction(expr, setting.product.names())?;
        Ok((setting, f))
    }
}

fn option<'v>(options: &'v [(crate::dsl::Ident, Value)], key: &str) -> Option<&'v Value> {
    options.iter().find(|(k, _)| k.name == key).map(|(_, v)| v)
}

fn sample_budget(options: &[(crate::dsl::Ident, Value)]) -> Result<usize> {
    match option(options, "budget") {
        None => Ok(DEFAULT_SAMPLE_BUDGET),
        Some(v) => {
            let p = point(v)?;
            match p.as_slice() {
                [s] if s.is_integer() && *s >= Scalar::from_integer(0.into()) => {
                    s.to_integer().try_into().map_err(|_| Error::Invalid("budget too large".into()))
                }
                _ => Err(Error::Invalid("budget must be a nonnegative integer".into())),
            }
        }
    }
}

fn restricted(env: &mut Env, name: &str, restrict: Option<&Value>) -> Result<(RationalAction, Option<Vec<Fraction>>)> {
    let (action, raw) = env.action(name)?;
    let Some(v) = restrict else { return Ok((action, raw)) };
    let u = if is_xreg(v) { g_regular_locus(&action)?.open.clone() } else { open(action.space(), v)? };
    Ok((action.restrict_to_open(&u)?, raw))
}

fn execute(
    env: &mut Env,
    keyword: &str,
    args: &[String],
    options: &[(crate::dsl::Ident, Value)],
) -> Result<(Status, Json)> {
    let ok = |v: Json| Ok((Status::Ok, v));
    match keyword {
        "dom" => ok(open_payload(&definable_locus(&env.map(&args[0])?)?)?),
        "breg" => ok(open_payload(&biregular_locus(&env.map(&args[0])?)?)?),
        "graph" => {
            let g = graph_closure(&env.map(&args[0])?)?;
            ok(json!({"names": g.names(), "generators": fmt_polys(&g.basis()?, g.names())}))
        }
        "image" => {
            let m = env.map(&args[0])?;
            let image = closed_image(&m)?;
            let dominant = m.target().ideal().contains_ideal(image.ideal())?;
            ok(json!({"generators": fmt_ideal(image.ideal(), image.names())?, "dominant": dominant}))
        }
        "invert" => ok(json!({"map": inverse(&env.map(&args[0])?)?.format()})),
        "compose" => {
            let (a, b) = (env.map(&args[0])?, env.map(&args[1])?);
            ok(json!({"map": compose(&a, &b)?.format()}))
        }
        "closedgraph" => {
            let m = env.map(&args[0])?;
            let host = match option(options, "open") {
                Some(v) => open(m.source(), v)?,
                None => OpenSubset::whole(m.source().clone()),
            };
            let check = is_graph_closed(&m, &host)?;
            let ws = check.witnesses.iter().map(|w| fmt_ideal(w, &check.names)).collect::<Result<Vec<_>>>()?;
            let status = if check.closed { Status::Ok } else { Status::Fail };
            Ok((status, json!({"closed": check.closed, "names": check.names, "witnesses": ws})))
        }
        "checkaction" => {
            let (action, _) = env.action(&args[0])?;
            ok(json!({"law": law_payload(&action)}))
        }
        "xreg" => {
            let (action, _) = restricted(env, &args[0], option(options, "restrict"))?;
            let locus = g_regular_locus(&action)?;
            let mut payload = open_payload(&locus.open)?;
            payload["complement"] = json!(fmt_ideal(&locus.complement, action.space().names())?);
            payload["all_regular"] = json!(locus.all_regular()?);
            ok(payload)
        }
        "regularize" => {
            let (action, _) = restricted(env, &args[0], option(options, "restrict"))?;
            let model = regularize_finite(&action)?;
            let x = action.space().names();
            let y = model.y().names();
            let table: Vec<Json> = model
                .elements
                .iter()
                .zip(&model.endomorphisms)
                .map(|(n, m)| json!({"element": n, "map": m.format()[0]}))
                .collect();
            let payload = json!({
                "generators": model.presentation.generators.iter().map(|f| f.format(x)).collect::<Vec<_>>(),
                "names": y,
                "presentation": fmt_ideal(model.y().ideal(), y)?,
                "table": table,
                "psi": model.psi().format()[0],
                "psi_inverse": model.psi_inv().format()[0],
                "psi_isomorphism": model.psi_is_isomorphism(),
            });
            match model.verify(&action) {
                Ok(()) => ok(payload),
                Err(e) if e.is_verdict() => Ok((Status::Fail, payload)),
                Err(e) => Err(e),
            }
        }
        "atlas" => {
            let (action, _) = restricted(env, &args[0], option(options, "restrict"))?;
            let group = action.group().clone();
            let s = option(options, "S").expect("checked option");
            let pts = points(s).into_iter().map(|v| group_point(&group, v)).collect::<Result<Vec<_>>>()?;
            let report = check_atlas(&build_atlas(&action, &pts)?)?;
            let status = if report.all_passed() { Status::Ok } else { Status::Fail };
            Ok((
                status,
                json!({
                    "points": pts.iter().map(|p| group.format_point(p)).collect::<Vec<_>>(),
                    "symmetry": outcome(&report.symmetry),
                    "cocycle": outcome(&report.cocycle),
                    "separated": outcome(&report.separated),
                    "covering": outcome(&report.covering),
                }),
            ))
        }
        "certify" => {
            let budget = sample_budget(options)?;
            let is_function = matches!(env.item(&args[0]), Item::Function { .. });
            if is_function {
                let (setting, big_f) = env.function(&args[0])?;
                let fv = option(options, "f").expect("checked option");
                let Value::Expr(fe) = fv else { return Err(Error::Invalid("f must be one polynomial".into())) };
                let f = polynomial(fe, setting.y.names())?;
                let samples = match option(options, "samples") {
                    Some(v) => Some(points(v).into_iter().map(point).collect::<Result<Vec<_>>>()?),
                    None => None,
                };
                let d = certify_regular(&setting, &big_f, &f, samples.as_deref(), budget)?;
                return ok(slice_payload(&setting, &d));
            }
            let (action, raw) = env.action(&args[0])?;
            let group = action.group().clone();
            let s = option(options, "samples").expect("checked option");
            let pts = points(s).into_iter().map(|v| group_point(&group, v)).collect::<Result<Vec<_>>>()?;
            let data = regularity_from_subgroup(&action, raw.as_deref(), &pts, budget)?;
            let gv = group.variety().expect("parametric group").clone();
            let setting = SliceSetting::new(gv, action.space().clone());
            let certs: Vec<Json> = data.certificates.iter().map(|d| slice_payload(&setting, d)).collect();
            ok(json!({
                "coordinates": fmt_polys(&data.coordinates, setting.product.names()),
                "certificates": certs,
            }))
        }
        other => Err(Error::Invalid(format!("unknown command {other}"))),
    }
}

fn error_payload(e: &Error) -> Json {
    json!({"error": e.kind(), "message": e.to_string()})
}

fn panic_message(p: &(dyn std::any::Any + Send)) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "panic".into())
}

/// A checked session ready to run.
pub struct Runner<'a> {
    session: &'a Session,
    symbols: Symbols,
}

impl<'a> Runner<'a> {
    pub fn new(session: &'a Session) -> std::result::Result<Self, Diagnostic> {
        let symbols = check(session)?;
        Ok(Runner { session, symbols })
    }

    /// Runs the command at statement `index`.
    pub fn run_command(&self, index: usize, opts: &RunOptions) -> Record {
        let item = &self.session.stmts[index].item;
        let Item::Command { keyword, args, options } = item else {
            panic!("statement {index} is not a command");
        };
        let command = print_item(item).trim_start_matches("cmd ").to_string();
        let args: Vec<String> = args.iter().map(|a| a.name.clone()).collect();
        let start = Instant::now();
        let steps0 = budget::total_steps();
        let result = budget::with_max_steps(opts.max_steps, || {
            catch_unwind(AssertUnwindSafe(|| {
                let mut env = Env { session: self.session, symbols: &self.symbols, varieties: HashMap::new() };
                execute(&mut env, &keyword.name, &args, options)
            }))
        });
        let groebner_steps = budget::total_steps() - steps0;
        let millis = start.elapsed().as_millis() as u64;
        let (status, payload) = match result {
            Ok(Ok(r)) => r,
            Ok(Err(e)) if e.is_verdict() => (Status::Fail, error_payload(&e)),
            Ok(Err(e)) => (Status::Error, error_payload(&e)),
            Err(p) => (Status::Error, json!({"error": "Panic", "message": panic_message(p.as_ref())})),
        };
        log::info!("{command}: {} ({millis} ms, {groebner_steps} steps)", status.as_str());
        Record { command, status, payload, millis, groebner_steps }
    }

    pub fn run(&self, name: &str, opts: &RunOptions) -> Report {
        let commands: Vec<usize> = self
            .session
            .stmts
            .iter()
            .enumerate()
            .filter(|(_, s)| matches!(s.item, Item::Command { .. }))
            .map(|(i, _)| i)
            .collect();
        let records = if opts.parallel {
            commands.par_iter().map(|&i| self.run_command(i, opts)).collect()
        } else {
            commands.iter().map(|&i| self.run_command(i, opts)).collect()
        };
        Report::new(name, records)
    }
}

/// Parses, checks and runs session text.
pub fn run_text(text: &str, name: &str, opts: &RunOptions) -> std::result::Result<Report, Diagnostic> {
    let session = crate::dsl::parse_syntax(text)?;
    let runner = Runner::new(&session)?;
    Ok(runner.run(name, opts))
}
