use std::fmt;

use crate::status::{Status, Unary};

/// Line and column, both 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Pos {
    pub line: u32,
    pub column: u32,
}

impl Pos {
    pub const fn new(line: u32, column: u32) -> Self {
        Pos { line, column }
    }
}

impl fmt::Display for Pos {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.column)
    }
}

/// Binary status operators, loosest-binding first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BinaryOp {
    /// `||`, selector
    Disj,
    /// `&&`, sequence
    Conj,
    /// `+`, parallel-any
    Lenient,
    /// `*`, parallel-all
    Strict,
    /// `%`, keep the left status
    Disregard,
}

impl BinaryOp {
    pub const ALL: [BinaryOp; 5] = [
        BinaryOp::Disj,
        BinaryOp::Conj,
        BinaryOp::Lenient,
        BinaryOp::Strict,
        BinaryOp::Disregard,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            BinaryOp::Disj => "||",
            BinaryOp::Conj => "&&",
            BinaryOp::Lenient => "+",
            BinaryOp::Strict => "*",
            BinaryOp::Disregard => "%",
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            BinaryOp::Disj => "disj",
            BinaryOp::Conj => "conj",
            BinaryOp::Lenient => "lenient",
            BinaryOp::Strict => "strict",
            BinaryOp::Disregard => "disregard",
        }
    }

    /// Binding strength; higher binds tighter. All binary operators are
    /// left-associative.
    pub fn precedence(self) -> u8 {
        match self {
            BinaryOp::Disj => 1,
            BinaryOp::Conj => 2,
            BinaryOp::Lenient => 3,
            BinaryOp::Strict | BinaryOp::Disregard => 4,
        }
    }
}

/// An identifier occurrence. Equality ignores the source position.
#[derive(Debug, Clone)]
pub struct Ident {
    pub name: String,
    pub pos: Option<Pos>,
}

impl PartialEq for Ident {
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name
    }
}

impl Eq for Ident {}

/// A status expression.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StatusExpr {
    Literal(Status),
    Ident(Ident),
    Unary(Unary, Box<StatusExpr>),
    Binary(BinaryOp, Box<StatusExpr>, Box<StatusExpr>),
}

impl StatusExpr {
    pub fn lit(s: Status) -> Self {
        StatusExpr::Literal(s)
    }

    pub fn ident(name: impl Into<String>) -> Self {
        StatusExpr::Ident(Ident {
            name: name.into(),
            pos: None,
        })
    }

    pub fn unary(op: Unary, operand: StatusExpr) -> Self {
        StatusExpr::Unary(op, Box::new(operand))
    }

    pub fn binary(op: BinaryOp, left: StatusExpr, right: StatusExpr) -> Self {
        StatusExpr::Binary(op, Box::new(left), Box::new(right))
    }

    pub fn conj(left: StatusExpr, right: StatusExpr) -> Self {
        Self::binary(BinaryOp::Conj, left, right)
    }

    pub fn disj(left: StatusExpr, right: StatusExpr) -> Self {
        Self::binary(BinaryOp::Disj, left, right)
    }

    /// Left fold of `op` over `items`; `None` when empty.
    pub fn fold(op: BinaryOp, items: impl IntoIterator<Item = StatusExpr>) -> Option<Self> {
        items.into_iter().reduce(|acc, e| Self::binary(op, acc, e))
    }

    /// Short label used for trace paths.
    pub fn label(&self) -> String {
        match self {
            StatusExpr::Literal(s) => s.symbol().to_string(),
            StatusExpr::Ident(id) => id.name.clone(),
            StatusExpr::Unary(op, _) => op.name().to_string(),
            StatusExpr::Binary(op, _, _) => op.name().to_string(),
        }
    }

    pub fn depth(&self) -> usize {
        match self {
            StatusExpr::Literal(_) | StatusExpr::Ident(_) => 1,
            StatusExpr::Unary(_, e) => 1 + e.depth(),
            StatusExpr::Binary(_, l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Identifiers in left-to-right order, with repeats.
    pub fn idents(&self) -> Vec<&Ident> {
        fn walk<'a>(e: &'a StatusExpr, out: &mut Vec<&'a Ident>) {
            match e {
                StatusExpr::Literal(_) => {}
                StatusExpr::Ident(id) => out.push(id),
                StatusExpr::Unary(_, e) => walk(e, out),
                StatusExpr::Binary(_, l, r) => {
                    walk(l, out);
                    walk(r, out);
                }
            }
        }
        let mut out = Vec::new();
        walk(self, &mut out);
        out
    }
}

impl fmt::Display for StatusExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::pretty_print(self))
    }
}
