//! Text syntax for status expressions.
//!
//! Operators, tightest first: prefix `!` `~` `+` `-`; then `*` and `%`;
//! then `+`; then `&&`; then `||`. Binary operators are left-associative.
//! Literals are `F`, `U`, `T` (or `failing`, `running`, `complete`) and `#`
//! starts a comment that runs to the end of the line.

mod ast;
mod error;
mod lexer;
mod parser;
mod printer;

pub use ast::{BinaryOp, Ident, Pos, StatusExpr};
pub use error::{ErrorKind, SourceError};
pub use lexer::{is_keyword, tokenize, Token, TokenKind, KEYWORDS};
pub use parser::parse;
pub use printer::pretty_print;

use crate::engine::{tick_expr, Bindings, Ctx, NullSink, WorldView};
use crate::status::Status;

/// Tokenizes and parses `source`.
pub fn parse_str(source: &str) -> Result<StatusExpr, SourceError> {
    parse(&tokenize(source)?)
}

/// Evaluates `expr` once against `world`, without recording a trace.
pub fn evaluate<W: WorldView>(
    expr: &StatusExpr,
    bindings: &mut Bindings<W>,
    world: &mut W,
) -> Result<Status, SourceError> {
    tick_expr(expr, bindings, &mut Ctx::new(world, 0, &mut NullSink))
}
