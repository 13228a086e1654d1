use std::fmt;

use super::ast::Pos;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Lex,
    Parse,
    UnboundIdentifier,
}

impl fmt::Display for ErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ErrorKind::Lex => "lex",
            ErrorKind::Parse => "parse",
            ErrorKind::UnboundIdentifier => "unbound identifier",
        })
    }
}

/// An error tied to a position in DSL source.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("{kind} error at {pos}: {message}")]
pub struct SourceError {
    pub kind: ErrorKind,
    pub pos: Pos,
    pub message: String,
}

impl SourceError {
    pub fn lex(pos: Pos, message: impl Into<String>) -> Self {
        SourceError {
            kind: ErrorKind::Lex,
            pos,
            message: message.into(),
        }
    }

    pub fn parse(pos: Pos, message: impl Into<String>) -> Self {
        SourceError {
            kind: ErrorKind::Parse,
            pos,
            message: message.into(),
        }
    }

    pub fn unbound(pos: Pos, message: impl Into<String>) -> Self {
        SourceError {
            kind: ErrorKind::UnboundIdentifier,
            pos,
            message: message.into(),
        }
    }
}
