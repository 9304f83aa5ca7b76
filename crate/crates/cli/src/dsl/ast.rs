use super::lexer::Span;

#[derive(Clone, Debug)]
pub struct Ident {
    pub name: String,
    pub span: Span,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum Expr {
    Int(String),
    Var(Ident),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Div(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
    Paren(Box<Expr>),
}

impl Expr {
    /// Identifiers in order of appearance.
    pub fn idents(&self) -> Vec<&Ident> {
        let mut out = Vec::new();
        self.collect(&mut out);
        out
    }

    fn collect<'a>(&'a self, out: &mut Vec<&'a Ident>) {
        match self {
            Expr::Int(_) => {}
            Expr::Var(id) => out.push(id),
            Expr::Neg(e) | Expr::Pow(e, _) | Expr::Paren(e) => e.collect(out),
            Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) | Expr::Div(a, b) => {
                a.collect(out);
                b.collect(out);
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub enum GroupExpr {
    Additive(Ident),
    Multiplicative(Ident, Ident),
    Finite { elements: Vec<Ident>, table: Vec<Vec<Ident>> },
    Named(Ident),
    Product(Box<GroupExpr>, Box<GroupExpr>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum ActionBody {
    /// One tuple in the coordinates of `G × X`.
    Parametric(Vec<Expr>),
    /// One tuple per group element.
    PerElement(Vec<(Ident, Vec<Expr>)>),
}

/// A command option value.
#[derive(Clone, Debug, PartialEq)]
pub enum Value {
    Expr(Expr),
    Tuple(Vec<Value>),
}

#[derive(Clone, Debug, PartialEq)]
pub enum Item {
    Blank,
    Comment(String),
    Var(Vec<Ident>),
    Variety { name: Ident, coords: Vec<Ident>, relations: Vec<Expr> },
    Map { name: Ident, source: Ident, target: Ident, reps: Vec<Vec<Expr>> },
    Group { name: Ident, expr: GroupExpr },
    Action { name: Ident, group: Ident, space: Ident, target: Ident, body: ActionBody },
    Function { name: Ident, left: Ident, right: Ident, expr: Expr },
    Command { keyword: Ident, args: Vec<Ident>, options: Vec<(Ident, Value)> },
}

/// A statement and the line it starts on. Equality ignores the line.
#[derive(Clone, Debug)]
pub struct Stmt {
    pub item: Item,
    pub line: usize,
}

impl PartialEq for Stmt {
    fn eq(&self, other: &Self) -> bool {
        self.item == other.item
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Session {
    pub stmts: Vec<Stmt>,
}

impl Session {
    pub fn commands(&self) -> impl Iterator<Item = &Stmt> {
        self.stmts.iter().filter(|s| matches!(s.item, Item::Command { .. }))
    }
}
