#![allow(dead_code)]

use std::cell::Cell;
use std::rc::Rc;

use proptest::prelude::*;
use proptest::sample::select;

use status_logic::dsl::{is_keyword, BinaryOp, StatusExpr};
use status_logic::status::{Status, Unary};

pub const F: Status = Status::FAILING;
pub const U: Status = Status::RUNNING;
pub const T: Status = Status::COMPLETE;

fn from_char(c: char) -> Status {
    match c {
        'F' => F,
        'U' => U,
        'T' => T,
        _ => unreachable!(),
    }
}

fn index(s: Status) -> usize {
    (s.rank() + 1) as usize
}

/// Binary tables transcribed by hand: rows are x, columns are y, both in
/// F, U, T order. The disregard table is its defining projection x % y = x.
pub fn table_rows(op: BinaryOp) -> [&'static str; 3] {
    match op {
        BinaryOp::Conj => ["FFF", "UUU", "FUT"],
        BinaryOp::Disj => ["FUT", "UUU", "TTT"],
        BinaryOp::Lenient => ["FUT", "UUT", "TTT"],
        BinaryOp::Strict => ["FFF", "FUU", "FUT"],
        BinaryOp::Disregard => ["FFF", "UUU", "TTT"],
    }
}

pub fn table(op: BinaryOp, x: Status, y: Status) -> Status {
    from_char(table_rows(op)[index(x)].as_bytes()[index(y)] as char)
}

/// Unary table columns `!x +x -x ~x` for rows F, U, T.
pub fn unary_table(op: Unary, x: Status) -> Status {
    let rows = ["TUFT", "UTFU", "FTUT"];
    let col = Unary::ALL.iter().position(|&o| o == op).unwrap();
    from_char(rows[index(x)].as_bytes()[col] as char)
}

/// Kleene's strong connectives, for contrast.
pub fn kleene_and(x: Status, y: Status) -> Status {
    if x == F || y == F {
        F
    } else if x == T && y == T {
        T
    } else {
        U
    }
}

pub fn kleene_or(x: Status, y: Status) -> Status {
    if x == T || y == T {
        T
    } else if x == F && y == F {
        F
    } else {
        U
    }
}

/// Evaluates a literal-only tree purely by table lookup.
pub fn table_eval(expr: &StatusExpr) -> Status {
    match expr {
        StatusExpr::Literal(s) => *s,
        StatusExpr::Ident(id) => panic!("identifier {} in literal tree", id.name),
        StatusExpr::Unary(op, e) => unary_table(*op, table_eval(e)),
        StatusExpr::Binary(op, l, r) => table(*op, table_eval(l), table_eval(r)),
    }
}

/// Every status assignment of length `n`, in lexicographic F < U < T order.
pub fn assignments(n: usize) -> Vec<Vec<Status>> {
    (0..n).fold(vec![vec![]], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                Status::ALL.into_iter().map(move |s| {
                    let mut v = prefix.clone();
                    v.push(s);
                    v
                })
            })
            .collect()
    })
}

/// A constant task that counts how often it is ticked.
pub fn counted<W>(status: Status) -> (Rc<Cell<usize>>, impl FnMut(&mut W) -> Status) {
    let count = Rc::new(Cell::new(0));
    let c = count.clone();
    (count, move |_: &mut W| {
        c.set(c.get() + 1);
        status
    })
}

pub fn arb_status() -> impl Strategy<Value = Status> {
    select(Status::ALL.to_vec())
}

pub fn arb_ident() -> impl Strategy<Value = String> {
    "[A-Za-z_][A-Za-z0-9_]{0,6}".prop_filter("keywords lex as literals", |s| !is_keyword(s))
}

/// Expressions of depth at most `max_depth` (leaves have depth 1).
pub fn arb_expr(max_depth: u32) -> impl Strategy<Value = StatusExpr> {
    let leaf = prop_oneof![
        arb_status().prop_map(StatusExpr::Literal),
        arb_ident().prop_map(StatusExpr::ident),
    ];
    leaf.prop_recursive(max_depth - 1, 64, 2, |inner| {
        prop_oneof![
            (select(Unary::ALL.to_vec()), inner.clone())
                .prop_map(|(op, e)| StatusExpr::unary(op, e)),
            (select(BinaryOp::ALL.to_vec()), inner.clone(), inner)
                .prop_map(|(op, l, r)| StatusExpr::binary(op, l, r)),
        ]
    })
}

/// Literal-only expressions of depth at most `max_depth`.
pub fn arb_literal_expr(max_depth: u32) -> impl Strategy<Value = StatusExpr> {
    arb_status()
        .prop_map(StatusExpr::Literal)
        .prop_recursive(max_depth - 1, 64, 2, |inner| {
            prop_oneof![
                (select(Unary::ALL.to_vec()), inner.clone())
                    .prop_map(|(op, e)| StatusExpr::unary(op, e)),
                (select(BinaryOp::ALL.to_vec()), inner.clone(), inner)
                    .prop_map(|(op, l, r)| StatusExpr::binary(op, l, r)),
            ]
        })
}
