use std::collections::BTreeSet;

use super::ast::*;
use super::lexer::{tokenize, Span, Tok, Token};
use super::{Diagnostic, DiagnosticKind};

/// Deepest nesting of parentheses and operators accepted in one expression.
pub const MAX_DEPTH: usize = 64;

/// Largest exponent accepted after `^`.
pub const MAX_EXPONENT: u32 = 1000;

type PResult<T> = Result<T, Diagnostic>;

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    depth: usize,
    expected: BTreeSet<String>,
}

/// Drops line breaks and comments inside brackets so tuples and tables can
/// span lines.
fn join_bracketed(toks: Vec<Token>) -> Vec<Token> {
    let mut depth = 0usize;
    let mut out = Vec::with_capacity(toks.len());
    for t in toks {
        match &t.tok {
            Tok::Sym("(" | "[" | "{") => depth += 1,
            Tok::Sym(")" | "]" | "}") => depth = depth.saturating_sub(1),
            Tok::Newline | Tok::Comment(_) if depth > 0 => continue,
            Tok::Newline => depth = 0,
            _ => {}
        }
        out.push(t);
    }
    out
}

impl Parser {
    fn peek(&self) -> &Token {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        self.expected.clear();
        t
    }

    fn at_sym(&mut self, s: &str) -> bool {
        self.expected.insert(format!("`{s}`"));
        matches!(self.peek().tok, Tok::Sym(t) if t == s)
    }

    fn eat_sym(&mut self, s: &str) -> bool {
        if self.at_sym(s) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn error(&self) -> Diagnostic {
        let t = self.peek();
        let expected: Vec<String> = self.expected.iter().cloned().collect();
        Diagnostic::new(DiagnosticKind::Syntax, t.span, format!("unexpected {}", t.tok)).with_expected(expected)
    }

    fn expect_sym(&mut self, s: &str) -> PResult<Span> {
        if self.at_sym(s) {
            Ok(self.bump().span)
        } else {
            Err(self.error())
        }
    }

    fn ident(&mut self, what: &str) -> PResult<Ident> {
        if let Tok::Ident(name) = &self.peek().tok {
            let name = name.clone();
            let span = self.bump().span;
            return Ok(Ident { name, span });
        }
        self.expected.insert(what.to_string());
        Err(self.error())
    }

    fn keyword(&mut self, kw: &str) -> PResult<Span> {
        if matches!(&self.peek().tok, Tok::Ident(n) if n == kw) {
            return Ok(self.bump().span);
        }
        self.expected.insert(format!("`{kw}`"));
        Err(self.error())
    }

    fn end_of_statement(&mut self) -> PResult<()> {
        match self.peek().tok {
            Tok::Newline | Tok::Eof | Tok::Comment(_) => Ok(()),
            _ => {
                self.expected.insert("end of line".into());
                Err(self.error())
            }
        }
    }

    fn enter(&mut self) -> PResult<()> {
        self.depth += 1;
        if self.depth > MAX_DEPTH {
            let span = self.peek().span;
            return Err(Diagnostic::new(
                DiagnosticKind::Syntax,
                span,
                format!("expression nested deeper than {MAX_DEPTH} levels"),
            ));
        }
        Ok(())
    }

    fn session(&mut self) -> PResult<Session> {
        let mut stmts = Vec::new();
        // a blank line directly after a statement only terminates it
        let mut after_stmt = false;
        loop {
            let line = self.peek().span.line;
            match self.peek().tok.clone() {
                Tok::Eof => break,
                Tok::Newline => {
                    self.bump();
                    if !after_stmt {
                        stmts.push(Stmt { item: Item::Blank, line });
                    }
                    after_stmt = false;
                }
                Tok::Comment(text) => {
                    self.bump();
                    stmts.push(Stmt { item: Item::Comment(text), line });
                    after_stmt = true;
                }
                _ => {
                    let item = self.statement()?;
                    self.end_of_statement()?;
                    stmts.push(Stmt { item, line });
                    after_stmt = true;
                }
            }
        }
        while matches!(stmts.last(), Some(Stmt { item: Item::Blank, .. })) {
            stmts.pop();
        }
        Ok(Session { stmts })
    }

    fn statement(&mut self) -> PResult<Item> {
        let kw = match &self.peek().tok {
            Tok::Ident(k) => k.clone(),
            _ => String::new(),
        };
        match kw.as_str() {
            "var" => {
                self.bump();
                let mut names = vec![self.ident("variable name")?];
                loop {
                    self.eat_sym(",");
                    if !matches!(self.peek().tok, Tok::Ident(_)) {
                        break;
                    }
                    names.push(self.ident("variable name")?);
                }
                Ok(Item::Var(names))
            }
            "variety" => {
                self.bump();
                let name = self.ident("variety name")?;
                self.expect_sym("=")?;
                self.keyword("affine")?;
                let coords = self.ident_tuple("coordinate")?;
                let relations = if self.eat_sym("/") { self.expr_tuple()? } else { Vec::new() };
                Ok(Item::Variety { name, coords, relations })
            }
            "map" => {
                self.bump();
                let name = self.ident("map name")?;
                self.expect_sym(":")?;
                let source = self.ident("source variety")?;
                self.expect_sym("->")?;
                let target = self.ident("target variety")?;
                self.expect_sym("=")?;
                let mut reps = vec![self.expr_tuple()?];
                while self.eat_sym("|") {
                    reps.push(self.expr_tuple()?);
                }
                Ok(Item::Map { name, source, target, reps })
            }
            "group" => {
                self.bump();
                let name = self.ident("group name")?;
                self.expect_sym("=")?;
                let expr = self.group_expr()?;
                Ok(Item::Group { name, expr })
            }
            "action" => {
                self.bump();
                let name = self.ident("action name")?;
                self.expect_sym(":")?;
                let group = self.ident("group name")?;
                self.keyword("x")?;
                let space = self.ident("variety name")?;
                self.expect_sym("->")?;
                let target = self.ident("variety name")?;
                self.expect_sym("=")?;
                let body = if self.eat_sym("{") {
                    let mut entries = Vec::new();
                    loop {
                        let elem = self.ident("group element")?;
                        self.expect_sym(":")?;
                        entries.push((elem, self.expr_tuple()?));
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                    self.expect_sym("}")?;
                    ActionBody::PerElement(entries)
                } else if self.at_sym("(") {
                    ActionBody::Parametric(self.expr_tuple()?)
                } else {
                    self.expected.insert("`{`".into());
                    return Err(self.error());
                };
                Ok(Item::Action { name, group, space, target, body })
            }
            "function" => {
                self.bump();
                let name = self.ident("function name")?;
                self.expect_sym(":")?;
                let left = self.ident("variety name")?;
                self.keyword("x")?;
                let right = self.ident("variety name")?;
                self.expect_sym("=")?;
                let expr = self.expr()?;
                Ok(Item::Function { name, left, right, expr })
            }
            "cmd" => {
                self.bump();
                let keyword = self.ident("command keyword")?;
                let mut args = Vec::new();
                let mut options = Vec::new();
                while let Tok::Ident(_) = self.peek().tok {
                    let id = self.ident("argument")?;
                    if self.eat_sym("=") {
                        options.push((id, self.value()?));
                    } else if options.is_empty() {
                        args.push(id);
                    } else {
                        let msg = format!("argument `{}` after options", id.name);
                        return Err(
                            Diagnostic::new(DiagnosticKind::Syntax, id.span, msg).with_expected(vec!["`=`".into()])
                        );
                    }
                }
                Ok(Item::Command { keyword, args, options })
            }
            _ => {
                for k in ["var", "variety", "map", "group", "action", "function", "cmd"] {
                    self.expected.insert(format!("`{k}`"));
                }
                Err(self.error())
            }
        }
    }

    fn ident_tuple(&mut self, what: &str) -> PResult<Vec<Ident>> {
        self.expect_sym("(")?;
        let mut out = Vec::new();
        if self.eat_sym(")") {
            return Ok(out);
        }
        loop {
            out.push(self.ident(what)?);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(")")?;
        Ok(out)
    }

    fn expr_tuple(&mut self) -> PResult<Vec<Expr>> {
        self.expect_sym("(")?;
        let mut out = Vec::new();
        if self.eat_sym(")") {
            return Ok(out);
        }
        loop {
            out.push(self.expr()?);
            if !self.eat_sym(",") {
                break;
            }
        }
        self.expect_sym(")")?;
        Ok(out)
    }

    fn group_expr(&mut self) -> PResult<GroupExpr> {
        let mut acc = self.group_atom()?;
        while self.eat_sym("*") {
            let rhs = self.group_atom()?;
            acc = GroupExpr::Product(Box::new(acc), Box::new(rhs));
        }
        Ok(acc)
    }

    fn group_atom(&mut self) -> PResult<GroupExpr> {
        let head = self.ident("`Ga`, `Gm`, `finite` or a group name")?;
        match head.name.as_str() {
            "Ga" => {
                self.expect_sym("(")?;
                let s = self.ident("parameter")?;
                self.expect_sym(")")?;
                Ok(GroupExpr::Additive(s))
            }
            "Gm" => {
                self.expect_sym("(")?;
                let z = self.ident("parameter")?;
                self.expect_sym(",")?;
                let w = self.ident("parameter")?;
                self.expect_sym(")")?;
                Ok(GroupExpr::Multiplicative(z, w))
            }
            "finite" => {
                let elements = self.ident_tuple("element name")?;
                self.expect_sym("[")?;
                let mut table = Vec::new();
                loop {
                    self.expect_sym("[")?;
                    let mut row = Vec::new();
                    loop {
                        row.push(self.ident("element name")?);
                        if !self.eat_sym(",") {
                            break;
                        }
                    }
                    self.expect_sym("]")?;
                    table.push(row);
                    if !self.eat_sym(",") {
                        break;
                    }
                }
                self.expect_sym("]")?;
                Ok(GroupExpr::Finite { elements, table })
            }
            _ => Ok(GroupExpr::Named(head)),
        }
    }

    fn value(&mut self) -> PResult<Value> {
        if !self.at_sym("(") {
            return Ok(Value::Expr(self.expr()?));
        }
        // a parenthesized group is a tuple when it holds a comma or nests
        // another tuple
        let save = self.pos;
        self.bump();
        if self.eat_sym(")") {
            return Ok(Value::Tuple(Vec::new()));
        }
        self.enter()?;
        let first = self.value()?;
        if self.eat_sym(",") {
            let mut items = vec![first];
            while !self.at_sym(")") {
                items.push(self.value()?);
                if !self.eat_sym(",") {
                    break;
                }
            }
            self.expect_sym(")")?;
            self.depth -= 1;
            return Ok(Value::Tuple(items));
        }
        self.depth -= 1;
        if matches!(first, Value::Tuple(_)) {
            self.expect_sym(")")?;
            return Ok(Value::Tuple(vec![first]));
        }
        self.pos = save;
        Ok(Value::Expr(self.expr()?))
    }

    fn expr(&mut self) -> PResult<Expr> {
        self.enter()?;
        let mut acc = if self.eat_sym("-") { Expr::Neg(Box::new(self.term()?)) } else { self.term()? };
        loop {
            if self.eat_sym("+") {
                acc = Expr::Add(Box::new(acc), Box::new(self.term()?));
            } else if self.eat_sym("-") {
                acc = Expr::Sub(Box::new(acc), Box::new(self.term()?));
            } else {
                break;
            }
        }
        self.depth -= 1;
        Ok(acc)
    }

    fn term(&mut self) -> PResult<Expr> {
        let mut acc = self.power()?;
        loop {
            if self.eat_sym("*") {
                acc = Expr::Mul(Box::new(acc), Box::new(self.power()?));
            } else if self.eat_sym("/") {
                acc = Expr::Div(Box::new(acc), Box::new(self.power()?));
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn power(&mut self) -> PResult<Expr> {
        let base = self.atom()?;
        if !self.eat_sym("^") {
            return Ok(base);
        }
        if let Tok::Int(digits) = &self.peek().tok {
            let span = self.peek().span;
            let e = digits.parse::<u32>().ok().filter(|&e| e <= MAX_EXPONENT).ok_or_else(|| {
                Diagnostic::new(DiagnosticKind::Syntax, span, format!("exponent above {MAX_EXPONENT}"))
            })?;
            self.bump();
            return Ok(Expr::Pow(Box::new(base), e));
        }
        self.expected.insert("exponent".into());
        Err(self.error())
    }

    fn atom(&mut self) -> PResult<Expr> {
        match self.peek().tok.clone() {
            Tok::Int(digits) => {
                self.bump();
                Ok(Expr::Int(digits))
            }
            Tok::Ident(name) => {
                let span = self.bump().span;
                Ok(Expr::Var(Ident { name, span }))
            }
            Tok::Sym("(") => {
                self.bump();
                let inner = self.expr()?;
                self.expect_sym(")")?;
                Ok(Expr::Paren(Box::new(inner)))
            }
            _ => {
                self.expected.insert("identifier".into());
                self.expected.insert("integer".into());
                self.expected.insert("`(`".into());
                Err(self.error())
            }
        }
    }
}

/// Parses session text without resolving names.
pub fn parse_syntax(text: &str) -> Result<Session, Diagnostic> {
    let toks = tokenize(text).map_err(|(span, msg)| Diagnostic::new(DiagnosticKind::Syntax, span, msg))?;
    let mut p = Parser { toks: join_bracketed(toks), pos: 0, depth: 0, expected: BTreeSet::new() };
    p.session()
}
