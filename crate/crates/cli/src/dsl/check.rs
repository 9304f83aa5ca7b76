use std::collections::HashMap;
use std::fmt;

use super::ast::*;
use super::{Diagnostic, DiagnosticKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Var,
    Variety,
    Map,
    Group,
    Action,
    Function,
}

impl fmt::Display for Kind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Kind::Var => "variable",
            Kind::Variety => "variety",
            Kind::Map => "map",
            Kind::Group => "group",
            Kind::Action => "action",
            Kind::Function => "function",
        };
        f.write_str(s)
    }
}

#[derive(Clone, Debug)]
pub struct Entry {
    pub kind: Kind,
    /// Index of the declaring statement.
    pub stmt: usize,
    /// Coordinates of a variety, parameters of a group, or the source
    /// coordinates of a map.
    pub coords: Vec<String>,
    /// Element names of a finite group.
    pub elements: Vec<String>,
    /// How many leading coordinates of a function belong to its left factor.
    pub left: usize,
}

/// Declared names, each bound to its declaring statement.
#[derive(Clone, Debug, Default)]
pub struct Symbols {
    entries: HashMap<String, Entry>,
}

impl Symbols {
    pub fn get(&self, name: &str) -> Option<&Entry> {
        self.entries.get(name)
    }

    fn declare(
        &mut self,
        id: &Ident,
        kind: Kind,
        stmt: usize,
        coords: Vec<String>,
        elements: Vec<String>,
    ) -> Result<&mut Entry, Diagnostic> {
        if let Some(prev) = self.entries.get(&id.name) {
            return Err(Diagnostic::new(
                DiagnosticKind::Duplicate,
                id.span,
                format!("`{}` is already declared as a {}", id.name, prev.kind),
            ));
        }
        let entry = Entry { kind, stmt, coords, elements, left: 0 };
        Ok(self.entries.entry(id.name.clone()).or_insert(entry))
    }

    fn lookup(&self, id: &Ident, allowed: &[Kind]) -> Result<&Entry, Diagnostic> {
        let entry = self.entries.get(&id.name).ok_or_else(|| {
            Diagnostic::new(DiagnosticKind::UseBeforeDeclare, id.span, format!("`{}` is not declared", id.name))
        })?;
        if !allowed.contains(&entry.kind) {
            let want: Vec<String> = allowed.iter().map(|k| k.to_string()).collect();
            return Err(Diagnostic::new(
                DiagnosticKind::WrongKind,
                id.span,
                format!("`{}` is a {}, expected a {}", id.name, entry.kind, want.join(" or ")),
            ));
        }
        Ok(entry)
    }

    /// Every identifier in `e` must be one of `scope`.
    fn in_scope(&self, e: &Expr, scope: &[String], owner: &str) -> Result<(), Diagnostic> {
        for id in e.idents() {
            if scope.contains(&id.name) {
                continue;
            }
            if self.entries.contains_key(&id.name) {
                return Err(Diagnostic::new(
                    DiagnosticKind::WrongKind,
                    id.span,
                    format!("`{}` is not a coordinate of {owner}", id.name),
                ));
            }
            return Err(Diagnostic::new(
                DiagnosticKind::UseBeforeDeclare,
                id.span,
                format!("`{}` is not declared", id.name),
            ));
        }
        Ok(())
    }
}

/// Accepted arguments and options of one command keyword.
#[derive(Clone, Copy, Debug)]
pub struct CommandSpec {
    pub keyword: &'static str,
    /// Allowed kinds per positional argument.
    pub args: &'static [&'static [Kind]],
    pub options: &'static [&'static str],
}

const MAP: &[Kind] = &[Kind::Map];
const ACTION: &[Kind] = &[Kind::Action];

const COMMANDS: &[CommandSpec] = &[
    CommandSpec { keyword: "dom", args: &[MAP], options: &[] },
    CommandSpec { keyword: "breg", args: &[MAP], options: &[] },
    CommandSpec { keyword: "graph", args: &[MAP], options: &[] },
    CommandSpec { keyword: "image", args: &[MAP], options: &[] },
    CommandSpec { keyword: "invert", args: &[MAP], options: &[] },
    CommandSpec { keyword: "compose", args: &[MAP, MAP], options: &[] },
    CommandSpec { keyword: "closedgraph", args: &[MAP], options: &["open"] },
    CommandSpec { keyword: "checkaction", args: &[ACTION], options: &[] },
    CommandSpec { keyword: "xreg", args: &[ACTION], options: &["restrict"] },
    CommandSpec { keyword: "regularize", args: &[ACTION], options: &["restrict"] },
    CommandSpec { keyword: "atlas", args: &[ACTION], options: &["S", "restrict"] },
    CommandSpec { keyword: "certify", args: &[&[Kind::Function, Kind::Action]], options: &["f", "samples", "budget"] },
];

pub fn command_spec(keyword: &str) -> Option<&'static CommandSpec> {
    COMMANDS.iter().find(|c| c.keyword == keyword)
}

fn numeric(v: &Value) -> Result<(), Diagnostic> {
    match v {
        Value::Expr(e) => match e.idents().first() {
            Some(id) => Err(Diagnostic::new(
                DiagnosticKind::WrongKind,
                id.span,
                format!("expected a rational number, found `{}`", id.name),
            )),
            None => Ok(()),
        },
        Value::Tuple(items) => items.iter().try_for_each(numeric),
    }
}

fn value_exprs(v: &Value) -> Vec<&Expr> {
    match v {
        Value::Expr(e) => vec![e],
        Value::Tuple(items) => items.iter().flat_map(value_exprs).collect(),
    }
}

fn check_group(symbols: &Symbols, g: &GroupExpr) -> Result<(Vec<String>, Vec<String>), Diagnostic> {
    match g {
        GroupExpr::Additive(s) => {
            symbols.lookup(s, &[Kind::Var])?;
            Ok((vec![s.name.clone()], Vec::new()))
        }
        GroupExpr::Multiplicative(z, w) => {
            symbols.lookup(z, &[Kind::Var])?;
            symbols.lookup(w, &[Kind::Var])?;
            Ok((vec![z.name.clone(), w.name.clone()], Vec::new()))
        }
        GroupExpr::Finite { elements, table } => {
            let names: Vec<String> = elements.iter().map(|e| e.name.clone()).collect();
            for id in table.iter().flatten() {
                if !names.contains(&id.name) {
                    return Err(Diagnostic::new(
                        DiagnosticKind::UseBeforeDeclare,
                        id.span,
                        format!("`{}` is not an element of this group", id.name),
                    ));
                }
            }
            Ok((Vec::new(), names))
        }
        GroupExpr::Named(id) => {
            let e = symbols.lookup(id, &[Kind::Group])?;
            Ok((e.coords.clone(), e.elements.clone()))
        }
        GroupExpr::Product(a, b) => {
            let (mut ca, ea) = check_group(symbols, a)?;
            let (cb, eb) = check_group(symbols, b)?;
            ca.extend(cb);
            let elements = if ea.is_empty() || eb.is_empty() {
                Vec::new()
            } else {
                ea.iter().flat_map(|x| eb.iter().map(move |y| format!("{x}.{y}"))).collect()
            };
            Ok((ca, elements))
        }
    }
}

fn check_command(
    symbols: &Symbols,
    keyword: &Ident,
    args: &[Ident],
    options: &[(Ident, Value)],
) -> Result<(), Diagnostic> {
    let sig = command_spec(&keyword.name).ok_or_else(|| {
        let known: Vec<String> = COMMANDS.iter().map(|c| format!("`{}`", c.keyword)).collect();
        Diagnostic::new(DiagnosticKind::Syntax, keyword.span, format!("unknown command `{}`", keyword.name))
            .with_expected(known)
    })?;
    if args.len() != sig.args.len() {
        let span = args.get(sig.args.len()).map_or(keyword.span, |a| a.span);
        return Err(Diagnostic::new(
            DiagnosticKind::Syntax,
            span,
            format!("`{}` takes {} argument(s), found {}", sig.keyword, sig.args.len(), args.len()),
        ));
    }
    let mut entries = Vec::new();
    for (a, allowed) in args.iter().zip(sig.args) {
        entries.push(symbols.lookup(a, allowed)?);
    }
    let subject = entries.first().copied();
    for (i, (key, value)) in options.iter().enumerate() {
        if !sig.options.contains(&key.name.as_str()) {
            let known: Vec<String> = sig.options.iter().map(|o| format!("`{o}`")).collect();
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                key.span,
                format!("`{}` has no option `{}`", sig.keyword, key.name),
            )
            .with_expected(known));
        }
        if options[..i].iter().any(|(k, _)| k.name == key.name) {
            return Err(Diagnostic::new(
                DiagnosticKind::Duplicate,
                key.span,
                format!("option `{}` given twice", key.name),
            ));
        }
        let subject = subject.expect("every command has a subject");
        let owner = &args[0].name;
        match key.name.as_str() {
            "open" | "restrict" => {
                if key.name == "restrict" && sig.keyword == "atlas" && is_xreg(value) {
                    continue;
                }
                for e in value_exprs(value) {
                    symbols.in_scope(e, &subject.coords, owner)?;
                }
            }
            "f" => {
                if subject.kind != Kind::Function {
                    return Err(Diagnostic::new(DiagnosticKind::WrongKind, key.span, "`f` applies to functions only"));
                }
                let right = &subject.coords[subject.left..];
                for e in value_exprs(value) {
                    symbols.in_scope(e, right, owner)?;
                }
            }
            // group points may name elements of a finite group
            "S" | "samples" if subject.kind == Kind::Action => {}
            _ => numeric(value)?,
        }
    }
    let has = |k: &str| options.iter().any(|(o, _)| o.name == k);
    let missing = match (sig.keyword, subject.map(|s| s.kind)) {
        ("atlas", _) if !has("S") => Some("S"),
        ("certify", Some(Kind::Function)) if !has("f") => Some("f"),
        ("certify", Some(Kind::Action)) if !has("samples") => Some("samples"),
        _ => None,
    };
    if let Some(m) = missing {
        return Err(Diagnostic::new(
            DiagnosticKind::Syntax,
            keyword.span,
            format!("`{}` needs the option `{m}`", sig.keyword),
        )
        .with_expected(vec![format!("`{m}`")]));
    }
    Ok(())
}

/// `restrict=xreg` on an atlas means the computed G-regular locus.
pub fn is_xreg(v: &Value) -> bool {
    matches!(v, Value::Expr(Expr::Var(id)) if id.name == "xreg")
}

/// Resolves names in declaration order and checks argument kinds.
pub fn check(session: &Session) -> Result<Symbols, Diagnostic> {
    let mut symbols = Symbols::default();
    for (i, stmt) in session.stmts.iter().enumerate() {
        match &stmt.item {
            Item::Blank | Item::Comment(_) => {}
            Item::Var(names) => {
                for n in names {
                    symbols.declare(n, Kind::Var, i, Vec::new(), Vec::new())?;
                }
            }
            Item::Variety { name, coords, relations } => {
                let mut names: Vec<String> = Vec::new();
                for c in coords {
                    symbols.lookup(c, &[Kind::Var])?;
                    if names.contains(&c.name) {
                        return Err(Diagnostic::new(
                            DiagnosticKind::Duplicate,
                            c.span,
                            format!("coordinate `{}` repeated", c.name),
                        ));
                    }
                    names.push(c.name.clone());
                }
                for r in relations {
                    symbols.in_scope(r, &names, &name.name)?;
                }
                symbols.declare(name, Kind::Variety, i, names, Vec::new())?;
            }
            Item::Map { name, source, target, reps } => {
                let coords = symbols.lookup(source, &[Kind::Variety])?.coords.clone();
                symbols.lookup(target, &[Kind::Variety])?;
                for e in reps.iter().flatten() {
                    symbols.in_scope(e, &coords, &source.name)?;
                }
                symbols.declare(name, Kind::Map, i, coords, Vec::new())?;
            }
            Item::Group { name, expr } => {
                let (coords, elements) = check_group(&symbols, expr)?;
                symbols.declare(name, Kind::Group, i, coords, elements)?;
            }
            Item::Action { name, group, space, target, body } => {
                let g = symbols.lookup(group, &[Kind::Group])?.clone();
                let x = symbols.lookup(space, &[Kind::Variety])?.coords.clone();
                symbols.lookup(target, &[Kind::Variety])?;
                if target.name != space.name {
                    return Err(Diagnostic::new(
                        DiagnosticKind::WrongKind,
                        target.span,
                        format!("an action maps {} to itself", space.name),
                    ));
                }
                match body {
                    ActionBody::Parametric(exprs) => {
                        let scope: Vec<String> = g.coords.iter().chain(&x).cloned().collect();
                        let owner = format!("{} x {}", group.name, space.name);
                        for e in exprs {
                            symbols.in_scope(e, &scope, &owner)?;
                        }
                    }
                    ActionBody::PerElement(entries) => {
                        for (elem, exprs) in entries {
                            if !g.elements.contains(&elem.name) {
                                return Err(Diagnostic::new(
                                    DiagnosticKind::WrongKind,
                                    elem.span,
                                    format!("`{}` is not an element of {}", elem.name, group.name),
                                ));
                            }
                            for e in exprs {
                                symbols.in_scope(e, &x, &space.name)?;
                            }
                        }
                    }
                }
                symbols.declare(name, Kind::Action, i, x, Vec::new())?;
            }
            Item::Function { name, left, right, expr } => {
                let a = symbols.lookup(left, &[Kind::Variety])?.coords.clone();
                let b = symbols.lookup(right, &[Kind::Variety])?.coords.clone();
                if let Some(c) = a.iter().find(|c| b.contains(c)) {
                    return Err(Diagnostic::new(
                        DiagnosticKind::Duplicate,
                        right.span,
                        format!("{} and {} share the coordinate `{c}`", left.name, right.name),
                    ));
                }
                let scope: Vec<String> = a.iter().chain(&b).cloned().collect();
                symbols.in_scope(expr, &scope, &format!("{} x {}", left.name, right.name))?;
                symbols.declare(name, Kind::Function, i, scope, Vec::new())?.left = a.len();
            }
            Item::Command { keyword, args, options } => check_command(&symbols, keyword, args, options)?,
        }
    }
    Ok(symbols)
}
