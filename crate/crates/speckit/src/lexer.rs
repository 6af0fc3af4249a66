//! Tokens with line/column positions.

use std::fmt;

use num::BigInt;

use crate::error::DslError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Token {
    Ident(String),
    Int(BigInt),
    Str(String),
    Semi,
    Comma,
    Colon,
    Assign,
    EqEq,
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    At,
    Arrow,
    LParen,
    RParen,
    LBracket,
    RBracket,
    Eof,
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Token::Ident(s) => write!(f, "`{s}`"),
            Token::Int(n) => write!(f, "`{n}`"),
            Token::Str(s) => write!(f, "{s:?}"),
            Token::Eof => f.write_str("end of input"),
            other => write!(f, "`{}`", other.symbol()),
        }
    }
}

impl Token {
    pub fn symbol(&self) -> &'static str {
        match self {
            Token::Semi => ";",
            Token::Comma => ",",
            Token::Colon => ":",
            Token::Assign => "=",
            Token::EqEq => "==",
            Token::Plus => "+",
            Token::Minus => "-",
            Token::Star => "*",
            Token::Slash => "/",
            Token::Caret => "^",
            Token::At => "@",
            Token::Arrow => "->",
            Token::LParen => "(",
            Token::RParen => ")",
            Token::LBracket => "[",
            Token::RBracket => "]",
            Token::Ident(_) => "identifier",
            Token::Int(_) => "integer",
            Token::Str(_) => "string",
            Token::Eof => "end of input",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub col: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Spanned {
    pub token: Token,
    pub pos: Pos,
}

/// Splits `text` into tokens. `#` starts a comment running to end of line.
pub fn tokenize(text: &str) -> Result<Vec<Spanned>, DslError> {
    let mut out = Vec::new();
    let mut chars = text.chars().peekable();
    let (mut line, mut col) = (1, 1);
    let syntax = |pos: Pos, expected: &str, found: String| DslError::Syntax {
        line: pos.line,
        col: pos.col,
        expected: vec![expected.to_string()],
        found,
    };

    while let Some(&c) = chars.peek() {
        let pos = Pos { line, col };
        let mut bump = |chars: &mut std::iter::Peekable<std::str::Chars<'_>>| {
            let c = chars.next();
            if c == Some('\n') {
                line += 1;
                col = 1;
            } else {
                col += 1;
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
        let token = if c.is_ascii_alphabetic() || c == '_' {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_alphanumeric() || *c == '_') {
                s.push(bump(&mut chars).unwrap());
            }
            Token::Ident(s)
        } else if c.is_ascii_digit() {
            let mut s = String::new();
            while chars.peek().is_some_and(|c| c.is_ascii_digit()) {
                s.push(bump(&mut chars).unwrap());
            }
            Token::Int(s.parse().expect("digits form an integer"))
        } else if c == '"' {
            bump(&mut chars);
            let mut s = String::new();
            loop {
                match bump(&mut chars) {
                    Some('"') => break,
                    Some('\\') => match bump(&mut chars) {
                        Some('n') => s.push('\n'),
                        Some(e @ ('"' | '\\')) => s.push(e),
                        _ => return Err(syntax(pos, "escape `\\\"`, `\\\\` or `\\n`", "bad escape".into())),
                    },
                    Some('\n') | None => return Err(syntax(pos, "closing `\"`", "end of line".into())),
                    Some(other) => s.push(other),
                }
            }
            Token::Str(s)
        } else {
            bump(&mut chars);
            match c {
                ';' => Token::Semi,
                ',' => Token::Comma,
                ':' => Token::Colon,
                '+' => Token::Plus,
                '*' => Token::Star,
                '/' => Token::Slash,
                '^' => Token::Caret,
                '@' => Token::At,
                '(' => Token::LParen,
                ')' => Token::RParen,
                '[' => Token::LBracket,
                ']' => Token::RBracket,
                '=' if chars.peek() == Some(&'=') => {
                    bump(&mut chars);
                    Token::EqEq
                }
                '=' => Token::Assign,
                '-' if chars.peek() == Some(&'>') => {
                    bump(&mut chars);
                    Token::Arrow
                }
                '-' => Token::Minus,
                other => return Err(syntax(pos, "a token", format!("`{other}`"))),
            }
        };
        out.push(Spanned { token, pos });
    }
    out.push(Spanned {
        token: Token::Eof,
        pos: Pos { line, col },
    });
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn kinds(text: &str) -> Vec<Token> {
        tokenize(text).unwrap().into_iter().map(|s| s.token).collect()
    }

    #[test]
    fn punctuation_and_arrows() {
        assert_eq!(
            kinds("D[x->y] @ f == -1/2;"),
            vec![
                Token::Ident("D".into()),
                Token::LBracket,
                Token::Ident("x".into()),
                Token::Arrow,
                Token::Ident("y".into()),
                Token::RBracket,
                Token::At,
                Token::Ident("f".into()),
                Token::EqEq,
                Token::Minus,
                Token::Int(1.into()),
                Token::Slash,
                Token::Int(2.into()),
                Token::Semi,
                Token::Eof,
            ]
        );
    }

    #[test]
    fn positions_and_comments() {
        let toks = tokenize("# note\n  let").unwrap();
        assert_eq!(toks[0].pos, Pos { line: 2, col: 3 });
    }

    #[test]
    fn strings_with_escapes() {
        assert_eq!(kinds(r#""a\"b""#)[0], Token::Str("a\"b".into()));
        assert!(tokenize("\"open").is_err());
        assert!(tokenize("$").is_err());
    }
}
