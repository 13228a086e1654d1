//! Recursive-descent parser.
//!
//! Grammar, loosest first:
//!
//! ```text
//! expr    := conj ( "||" conj )*
//! conj    := sum ( "&&" sum )*
//! sum     := product ( "+" product )*
//! product := prefix ( ( "*" | "%" ) prefix )*
//! prefix  := ( "!" | "~" | "+" | "-" ) prefix | atom
//! atom    := literal | ident | "(" expr ")"
//! ```

use super::ast::{BinaryOp, Ident, StatusExpr};
use super::error::SourceError;
use super::lexer::{Token, TokenKind};
use crate::status::Unary;

pub fn parse(tokens: &[Token]) -> Result<StatusExpr, SourceError> {
    let mut parser = Parser { tokens, at: 0 };
    let expr = parser.expr()?;
    let tok = parser.peek();
    match &tok.kind {
        TokenKind::Eof => Ok(expr),
        TokenKind::Minus => Err(SourceError::parse(
            tok.pos,
            "`-` is a prefix operator only; there is no binary minus",
        )),
        TokenKind::RParen => Err(SourceError::parse(tok.pos, "unbalanced `)`")),
        other => Err(SourceError::parse(
            tok.pos,
            format!("expected an operator or end of input, found {other}"),
        )),
    }
}

struct Parser<'t> {
    tokens: &'t [Token],
    at: usize,
}

impl<'t> Parser<'t> {
    fn peek(&self) -> &'t Token {
        // tokenize always terminates the stream with Eof
        let last = self.tokens.len().saturating_sub(1);
        &self.tokens[self.at.min(last)]
    }

    fn advance(&mut self) -> &'t Token {
        let tok = self.peek();
        if tok.kind != TokenKind::Eof {
            self.at += 1;
        }
        tok
    }

    fn binary_level(
        &mut self,
        ops: &[(TokenKind, BinaryOp)],
        next: fn(&mut Self) -> Result<StatusExpr, SourceError>,
    ) -> Result<StatusExpr, SourceError> {
        let mut left = next(self)?;
        while let Some(&(_, op)) = ops.iter().find(|(k, _)| *k == self.peek().kind) {
            self.advance();
            let right = next(self)?;
            left = StatusExpr::binary(op, left, right);
        }
        Ok(left)
    }

    fn expr(&mut self) -> Result<StatusExpr, SourceError> {
        self.binary_level(&[(TokenKind::OrOr, BinaryOp::Disj)], Self::conj)
    }

    fn conj(&mut self) -> Result<StatusExpr, SourceError> {
        self.binary_level(&[(TokenKind::AndAnd, BinaryOp::Conj)], Self::sum)
    }

    fn sum(&mut self) -> Result<StatusExpr, SourceError> {
        self.binary_level(&[(TokenKind::Plus, BinaryOp::Lenient)], Self::product)
    }

    fn product(&mut self) -> Result<StatusExpr, SourceError> {
        self.binary_level(
            &[
                (TokenKind::Star, BinaryOp::Strict),
                (TokenKind::Percent, BinaryOp::Disregard),
            ],
            Self::prefix,
        )
    }

    fn prefix(&mut self) -> Result<StatusExpr, SourceError> {
        let op = match self.peek().kind {
            TokenKind::Bang => Unary::Negate,
            TokenKind::Tilde => Unary::Condone,
            TokenKind::Plus => Unary::Promote,
            TokenKind::Minus => Unary::Demote,
            _ => return self.atom(),
        };
        self.advance();
        Ok(StatusExpr::unary(op, self.prefix()?))
    }

    fn atom(&mut self) -> Result<StatusExpr, SourceError> {
        let tok = self.advance();
        match &tok.kind {
            TokenKind::Literal(s) => Ok(StatusExpr::Literal(*s)),
            TokenKind::Ident(name) => Ok(StatusExpr::Ident(Ident {
                name: name.clone(),
                pos: Some(tok.pos),
            })),
            TokenKind::LParen => {
                let inner = self.expr()?;
                let close = self.advance();
                if close.kind == TokenKind::RParen {
                    Ok(inner)
                } else {
                    Err(SourceError::parse(
                        close.pos,
                        format!("unbalanced `(` opened at {}: found {}", tok.pos, close.kind),
                    ))
                }
            }
            other => Err(SourceError::parse(
                tok.pos,
                format!("expected an operand, found {other}"),
            )),
        }
    }
}
