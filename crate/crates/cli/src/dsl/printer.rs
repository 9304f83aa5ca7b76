use std::fmt::Write;

use super::ast::*;

fn prec(e: &Expr) -> u8 {
    match e {
        Expr::Neg(_) | Expr::Add(..) | Expr::Sub(..) => 1,
        Expr::Mul(..) | Expr::Div(..) => 2,
        Expr::Pow(..) => 3,
        Expr::Int(_) | Expr::Var(_) | Expr::Paren(_) => 4,
    }
}

fn write_expr(e: &Expr, min: u8, out: &mut String) {
    let wrap = prec(e) < min;
    if wrap {
        out.push('(');
    }
    match e {
        Expr::Int(d) => out.push_str(d),
        Expr::Var(id) => out.push_str(&id.name),
        Expr::Neg(a) => {
            out.push('-');
            write_expr(a, 2, out);
        }
        Expr::Add(a, b) | Expr::Sub(a, b) => {
            write_expr(a, 1, out);
            out.push_str(if matches!(e, Expr::Add(..)) { " + " } else { " - " });
            write_expr(b, 2, out);
        }
        Expr::Mul(a, b) | Expr::Div(a, b) => {
            write_expr(a, 2, out);
            out.push(if matches!(e, Expr::Mul(..)) { '*' } else { '/' });
            write_expr(b, 3, out);
        }
        Expr::Pow(a, k) => {
            write_expr(a, 4, out);
            let _ = write!(out, "^{k}");
        }
        Expr::Paren(a) => {
            out.push('(');
            write_expr(a, 1, out);
            out.push(')');
        }
    }
    if wrap {
        out.push(')');
    }
}

pub fn print_expr(e: &Expr) -> String {
    let mut out = String::new();
    write_expr(e, 1, &mut out);
    out
}

fn tuple(exprs: &[Expr]) -> String {
    let items: Vec<String> = exprs.iter().map(print_expr).collect();
    format!("({})", items.join(", "))
}

fn names(ids: &[Ident], sep: &str) -> String {
    ids.iter().map(|i| i.name.as_str()).collect::<Vec<_>>().join(sep)
}

pub fn print_value(v: &Value) -> String {
    match v {
        Value::Expr(e) => print_expr(e),
        Value::Tuple(items) if items.len() == 1 => format!("({},)", print_value(&items[0])),
        Value::Tuple(items) => {
            let parts: Vec<String> = items.iter().map(print_value).collect();
            format!("({})", parts.join(", "))
        }
    }
}

fn print_group(g: &GroupExpr) -> String {
    match g {
        GroupExpr::Additive(s) => format!("Ga({})", s.name),
        GroupExpr::Multiplicative(z, w) => format!("Gm({}, {})", z.name, w.name),
        GroupExpr::Finite { elements, table } => {
            let rows: Vec<String> = table.iter().map(|r| format!("[{}]", names(r, ", "))).collect();
            format!("finite({}) [{}]", names(elements, ", "), rows.join(", "))
        }
        GroupExpr::Named(id) => id.name.clone(),
        GroupExpr::Product(a, b) => {
            let rhs = print_group(b);
            let rhs = if matches!(**b, GroupExpr::Product(..)) { format!("({rhs})") } else { rhs };
            format!("{} * {rhs}", print_group(a))
        }
    }
}

pub fn print_item(item: &Item) -> String {
    match item {
        Item::Blank => String::new(),
        Item::Comment(text) => format!("#{text}"),
        Item::Var(ids) => format!("var {}", names(ids, " ")),
        Item::Variety { name, coords, relations } => {
            let mut s = format!("variety {} = affine({})", name.name, names(coords, ", "));
            if !relations.is_empty() {
                let _ = write!(s, " / {}", tuple(relations));
            }
            s
        }
        Item::Map { name, source, target, reps } => {
            let reps: Vec<String> = reps.iter().map(|r| tuple(r)).collect();
            format!("map {} : {} -> {} = {}", name.name, source.name, target.name, reps.join(" | "))
        }
        Item::Group { name, expr } => format!("group {} = {}", name.name, print_group(expr)),
        Item::Action { name, group, space, target, body } => {
            let body = match body {
                ActionBody::Parametric(exprs) => tuple(exprs),
                ActionBody::PerElement(entries) => {
                    let parts: Vec<String> = entries.iter().map(|(e, t)| format!("{}: {}", e.name, tuple(t))).collect();
                    format!("{{{}}}", parts.join(", "))
                }
            };
            format!("action {} : {} x {} -> {} = {body}", name.name, group.name, space.name, target.name)
        }
        Item::Function { name, left, right, expr } => {
            format!("function {} : {} x {} = {}", name.name, left.name, right.name, print_expr(expr))
        }
        Item::Command { keyword, args, options } => {
            let mut s = format!("cmd {}", keyword.name);
            for a in args {
                let _ = write!(s, " {}", a.name);
            }
            for (k, v) in options {
                let _ = write!(s, " {}={}", k.name, print_value(v));
            }
            s
        }
    }
}

/// Canonical text of a session, one statement per line.
pub fn print_session(session: &Session) -> String {
    let mut out = String::new();
    for stmt in &session.stmts {
        out.push_str(&print_item(&stmt.item));
        out.push('\n');
    }
    out
}
