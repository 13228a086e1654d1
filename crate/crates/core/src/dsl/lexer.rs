use std::fmt;

use super::ast::Pos;
use super::error::SourceError;
use crate::status::Status;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TokenKind {
    Ident(String),
    Literal(Status),
    AndAnd,
    OrOr,
    Star,
    Plus,
    Percent,
    Bang,
    Tilde,
    Minus,
    LParen,
    RParen,
    Eof,
}

impl fmt::Display for TokenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TokenKind::Ident(name) => write!(f, "identifier `{name}`"),
            TokenKind::Literal(s) => write!(f, "literal `{s}`"),
            TokenKind::AndAnd => f.write_str("`&&`"),
            TokenKind::OrOr => f.write_str("`||`"),
            TokenKind::Star => f.write_str("`*`"),
            TokenKind::Plus => f.write_str("`+`"),
            TokenKind::Percent => f.write_str("`%`"),
            TokenKind::Bang => f.write_str("`!`"),
            TokenKind::Tilde => f.write_str("`~`"),
            TokenKind::Minus => f.write_str("`-`"),
            TokenKind::LParen => f.write_str("`(`"),
            TokenKind::RParen => f.write_str("`)`"),
            TokenKind::Eof => f.write_str("end of input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub kind: TokenKind,
    pub pos: Pos,
}

/// Words that lex as status literals rather than identifiers.
pub const KEYWORDS: [&str; 6] = ["F", "U", "T", "failing", "running", "complete"];

pub fn is_keyword(word: &str) -> bool {
    KEYWORDS.contains(&word)
}

/// Splits `input` into tokens. The result always ends with an `Eof` token.
pub fn tokenize(input: &str) -> Result<Vec<Token>, SourceError> {
    let mut tokens = Vec::new();
    let mut chars = input.chars().peekable();
    let (mut line, mut column) = (1u32, 1u32);

    while let Some(&c) = chars.peek() {
        let pos = Pos::new(line, column);
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                column = 1;
            } else {
                column += 1;
            }
            c
        };

        if c.is_whitespace() {
            bump(&mut chars);
            continue;
        }
        if c == '#' {
            while chars.peek().is_some_and(|&c| c != '\n') {
                bump(&mut chars);
            }
            continue;
        }
        if c.is_ascii_alphabetic() || c == '_' {
            let mut word = String::new();
            while let Some(&c) = chars.peek() {
                if c.is_ascii_alphanumeric() || c == '_' {
                    word.push(c);
                    bump(&mut chars);
                } else {
                    break;
                }
            }
            let kind = match word.parse::<Status>() {
                Ok(s) => TokenKind::Literal(s),
                Err(_) => TokenKind::Ident(word),
            };
            tokens.push(Token { kind, pos });
            continue;
        }

        bump(&mut chars);
        let kind = match c {
            '&' | '|' => {
                if chars.peek() == Some(&c) {
                    bump(&mut chars);
                    if c == '&' {
                        TokenKind::AndAnd
                    } else {
                        TokenKind::OrOr
                    }
                } else {
                    return Err(SourceError::lex(
                        pos,
                        format!("expected `{c}{c}`, found a single `{c}`"),
                    ));
                }
            }
            '*' => TokenKind::Star,
            '+' => TokenKind::Plus,
            '%' => TokenKind::Percent,
            '!' => TokenKind::Bang,
            '~' => TokenKind::Tilde,
            '-' => TokenKind::Minus,
            '(' => TokenKind::LParen,
            ')' => TokenKind::RParen,
            other => {
                return Err(SourceError::lex(
                    pos,
                    format!("unexpected character {other:?}"),
                ))
            }
        };
        tokens.push(Token { kind, pos });
    }

    tokens.push(Token {
        kind: TokenKind::Eof,
        pos: Pos::new(line, column),
    });
    Ok(tokens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dsl::error::ErrorKind;

    fn kinds(src: &str) -> Vec<TokenKind> {
        tokenize(src).unwrap().into_iter().map(|t| t.kind).collect()
    }

    fn ident(s: &str) -> TokenKind {
        TokenKind::Ident(s.to_string())
    }

    #[test]
    fn simple_conjunction() {
        assert_eq!(
            kinds("a && b"),
            vec![ident("a"), TokenKind::AndAnd, ident("b"), TokenKind::Eof]
        );
    }

    #[test]
    fn unary_and_disjunction() {
        assert_eq!(
            kinds("!x || ~y"),
            vec![
                TokenKind::Bang,
                ident("x"),
                TokenKind::OrOr,
                TokenKind::Tilde,
                ident("y"),
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn literals_and_long_names() {
        assert_eq!(
            kinds("F U T failing running complete Fx _u1"),
            vec![
                TokenKind::Literal(Status::FAILING),
                TokenKind::Literal(Status::RUNNING),
                TokenKind::Literal(Status::COMPLETE),
                TokenKind::Literal(Status::FAILING),
                TokenKind::Literal(Status::RUNNING),
                TokenKind::Literal(Status::COMPLETE),
                ident("Fx"),
                ident("_u1"),
                TokenKind::Eof
            ]
        );
    }

    #[test]
    fn comments_and_positions() {
        let toks = tokenize("# header\n  a %\n-b # tail").unwrap();
        let summary: Vec<_> = toks
            .iter()
            .map(|t| (t.kind.clone(), t.pos.line, t.pos.column))
            .collect();
        assert_eq!(
            summary,
            vec![
                (ident("a"), 2, 3),
                (TokenKind::Percent, 2, 5),
                (TokenKind::Minus, 3, 1),
                (ident("b"), 3, 2),
                (TokenKind::Eof, 3, 10),
            ]
        );
    }

    #[test]
    fn unknown_character() {
        let err = tokenize("a ? b").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Lex);
        assert_eq!(err.pos, Pos::new(1, 3));
    }

    #[test]
    fn single_ampersand() {
        let err = tokenize("a & b").unwrap_err();
        assert_eq!(err.kind, ErrorKind::Lex);
        assert_eq!(err.pos, Pos::new(1, 3));
        assert!(tokenize("a |").is_err());
    }
}
