//! Recursive-descent parser with name resolution and type checking.
//!
//! ```text
//! script  := stmt*
//! stmt    := "let" IDENT "=" expr ";"
//!          | "check" [STRING] expr "==" expr "upto" caps ";"
//!          | "emit" expr ["upto" caps] ["as" ("text" | "json")] ";"
//!          | "verify" NAME ["upto" caps] ";"
//! caps    := IDENT ":" INT ("," IDENT ":" INT)*
//! expr    := product (("+" | "-") product)*
//! product := prefix ("*" prefix)*
//! prefix  := "-" prefix | OPNAME "[" opargs "]" "@" prefix | power
//! power   := atom ["^" INT]
//! atom    := INT ["/" INT] | IDENT | IDENT "(" args ")" | "(" expr ")"
//! ```
//!
//! Every expression is a series, a class, or both (plain polynomials).
//! Class constructors and names bound to classes are class-only; functions,
//! operators, subtraction and negation are series-only.

use std::collections::HashMap;

use num::{BigInt, ToPrimitive, Zero};
use speckit_core::identities::Identity;
use speckit_core::{Rational, TruncationSpec, Var};

use crate::ast::{Construct, Expr, Format, Func, Operator, Param, Script, Stmt};
use crate::error::DslError;
use crate::lexer::{tokenize, Pos, Spanned, Token};

/// Which contexts an expression may be used in.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Kind {
    pub series: bool,
    pub class: bool,
}

impl Kind {
    const BOTH: Kind = Kind { series: true, class: true };
    const SERIES: Kind = Kind { series: true, class: false };
    const CLASS: Kind = Kind { series: false, class: true };

    fn describe(self) -> &'static str {
        match (self.series, self.class) {
            (true, true) => "polynomial",
            (true, false) => "series",
            (false, true) => "class",
            (false, false) => "nothing",
        }
    }
}

const KEYWORDS: [&str; 8] = ["let", "check", "emit", "verify", "upto", "as", "text", "json"];

/// Parses a whole script.
pub fn parse(text: &str) -> Result<Script, DslError> {
    let mut p = Parser::new(text)?;
    let mut statements = Vec::new();
    while p.peek() != &Token::Eof {
        statements.push(p.statement()?);
    }
    Ok(Script { statements })
}

/// Parses a single series expression with no bound names.
pub fn parse_expr(text: &str) -> Result<Expr, DslError> {
    let mut p = Parser::new(text)?;
    let (e, kind, pos) = p.expr()?;
    p.require_series(kind, pos)?;
    p.expect(Token::Eof)?;
    Ok(e)
}

struct Parser {
    tokens: Vec<Spanned>,
    at: usize,
    env: HashMap<String, Kind>,
}

impl Parser {
    fn new(text: &str) -> Result<Self, DslError> {
        Ok(Parser {
            tokens: tokenize(text)?,
            at: 0,
            env: HashMap::new(),
        })
    }

    fn peek(&self) -> &Token {
        &self.tokens[self.at].token
    }

    fn peek_at(&self, offset: usize) -> &Token {
        let i = (self.at + offset).min(self.tokens.len() - 1);
        &self.tokens[i].token
    }

    fn pos(&self) -> Pos {
        self.tokens[self.at].pos
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.at].token.clone();
        if self.at + 1 < self.tokens.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> DslError {
        let pos = self.pos();
        DslError::Syntax {
            line: pos.line,
            col: pos.col,
            expected: expected.iter().map(|s| s.to_string()).collect(),
            found: self.peek().to_string(),
        }
    }

    fn expect(&mut self, token: Token) -> Result<(), DslError> {
        if *self.peek() == token {
            self.advance();
            Ok(())
        } else {
            let expected = format!("`{}`", token.symbol());
            Err(self.error(&[if token == Token::Eof { "end of input" } else { &expected }]))
        }
    }

    fn eat(&mut self, token: &Token) -> bool {
        if self.peek() == token {
            self.advance();
            true
        } else {
            false
        }
    }

    fn is_word(&self, word: &str) -> bool {
        matches!(self.peek(), Token::Ident(s) if s == word)
    }

    fn expect_word(&mut self, word: &str) -> Result<(), DslError> {
        if self.is_word(word) {
            self.advance();
            Ok(())
        } else {
            Err(self.error(&[&format!("`{word}`")]))
        }
    }

    fn ident(&mut self) -> Result<String, DslError> {
        match self.peek().clone() {
            Token::Ident(s) => {
                self.advance();
                Ok(s)
            }
            _ => Err(self.error(&["identifier"])),
        }
    }

    /// A formal variable name: any identifier that is not reserved.
    fn variable(&mut self) -> Result<Var, DslError> {
        let pos = self.pos();
        let name = self.ident()?;
        if is_reserved(&name) {
            return Err(DslError::Syntax {
                line: pos.line,
                col: pos.col,
                expected: vec!["variable".into()],
                found: format!("`{name}`"),
            });
        }
        Ok(Var::new(&name))
    }

    fn integer(&mut self) -> Result<BigInt, DslError> {
        match self.peek().clone() {
            Token::Int(n) => {
                self.advance();
                Ok(n)
            }
            _ => Err(self.error(&["integer"])),
        }
    }

    fn small(&mut self) -> Result<u32, DslError> {
        let pos = self.pos();
        let n = self.integer()?;
        n.to_u32().ok_or(DslError::Syntax {
            line: pos.line,
            col: pos.col,
            expected: vec!["integer below 2^32".into()],
            found: format!("`{n}`"),
        })
    }

    fn caps(&mut self) -> Result<TruncationSpec, DslError> {
        let mut caps = TruncationSpec::new();
        loop {
            let var = self.variable()?;
            self.expect(Token::Colon)?;
            caps.set_cap(var, self.small()?);
            if !self.eat(&Token::Comma) {
                return Ok(caps);
            }
        }
    }

    fn optional_caps(&mut self) -> Result<Option<TruncationSpec>, DslError> {
        if self.is_word("upto") {
            self.advance();
            Ok(Some(self.caps()?))
        } else {
            Ok(None)
        }
    }

    fn statement(&mut self) -> Result<Stmt, DslError> {
        let keyword = match self.peek() {
            Token::Ident(s) if ["let", "check", "emit", "verify"].contains(&s.as_str()) => s.clone(),
            _ => return Err(self.error(&["`let`", "`check`", "`emit`", "`verify`"])),
        };
        self.advance();
        let stmt = match keyword.as_str() {
            "let" => {
                let pos = self.pos();
                let name = self.variable()?;
                let name = name.as_str().to_string();
                if self.env.contains_key(&name) {
                    return Err(DslError::DuplicateName {
                        line: pos.line,
                        col: pos.col,
                        name,
                    });
                }
                self.expect(Token::Assign)?;
                let (value, kind, _) = self.expr()?;
                self.env.insert(name.clone(), kind);
                Stmt::Let { name, value }
            }
            "check" => {
                let label = match self.peek().clone() {
                    Token::Str(s) => {
                        self.advance();
                        Some(s)
                    }
                    _ => None,
                };
                let lhs = self.series_expr()?;
                self.expect(Token::EqEq)?;
                let rhs = self.series_expr()?;
                self.expect_word("upto")?;
                let caps = self.caps()?;
                Stmt::Check { label, lhs, rhs, caps }
            }
            "emit" => {
                let expr = self.series_expr()?;
                let caps = self.optional_caps()?;
                let format = if self.is_word("as") {
                    self.advance();
                    let format = match self.peek() {
                        Token::Ident(s) if s == "text" => Format::Text,
                        Token::Ident(s) if s == "json" => Format::Json,
                        _ => return Err(self.error(&["`text`", "`json`"])),
                    };
                    self.advance();
                    format
                } else {
                    Format::Text
                };
                Stmt::Emit { expr, caps, format }
            }
            _ => {
                let pos = self.pos();
                let mut name = self.ident()?;
                while self.peek() == &Token::Minus && matches!(self.peek_at(1), Token::Ident(_)) {
                    self.advance();
                    name.push('-');
                    name.push_str(&self.ident()?);
                }
                let identity: Identity = name.parse().map_err(|_| DslError::UnknownName {
                    line: pos.line,
                    col: pos.col,
                    name,
                })?;
                let caps = self.optional_caps()?;
                Stmt::Verify { identity, caps }
            }
        };
        self.expect(Token::Semi)?;
        Ok(stmt)
    }

    fn require_series(&self, kind: Kind, pos: Pos) -> Result<(), DslError> {
        if kind.series {
            Ok(())
        } else {
            Err(mismatch(pos, "series", kind))
        }
    }

    fn require_class(&self, kind: Kind, pos: Pos) -> Result<(), DslError> {
        if kind.class {
            Ok(())
        } else {
            Err(mismatch(pos, "class", kind))
        }
    }

    fn series_expr(&mut self) -> Result<Expr, DslError> {
        let (e, kind, pos) = self.expr()?;
        self.require_series(kind, pos)?;
        Ok(e)
    }

    fn class_expr(&mut self) -> Result<Expr, DslError> {
        let (e, kind, pos) = self.expr()?;
        self.require_class(kind, pos)?;
        Ok(e)
    }

    fn expr(&mut self) -> Result<(Expr, Kind, Pos), DslError> {
        let (mut lhs, mut kind, start) = self.product()?;
        loop {
            let op = self.peek().clone();
            if op != Token::Plus && op != Token::Minus {
                return Ok((lhs, kind, start));
            }
            self.advance();
            let (rhs, rk, rpos) = self.product()?;
            if op == Token::Plus {
                kind = combine(kind, rk, rpos)?;
                lhs = Expr::Add(Box::new(lhs), Box::new(rhs));
            } else {
                self.require_series(kind, start)?;
                self.require_series(rk, rpos)?;
                kind = Kind::SERIES;
                lhs = Expr::Sub(Box::new(lhs), Box::new(rhs));
            }
        }
    }

    fn product(&mut self) -> Result<(Expr, Kind, Pos), DslError> {
        let (mut lhs, mut kind, start) = self.prefix()?;
        while self.eat(&Token::Star) {
            let (rhs, rk, rpos) = self.prefix()?;
            kind = combine(kind, rk, rpos)?;
            lhs = Expr::Mul(Box::new(lhs), Box::new(rhs));
        }
        Ok((lhs, kind, start))
    }

    fn prefix(&mut self) -> Result<(Expr, Kind, Pos), DslError> {
        let start = self.pos();
        if self.eat(&Token::Minus) {
            let (e, kind, pos) = self.prefix()?;
            self.require_series(kind, pos)?;
            return Ok((Expr::Neg(Box::new(e)), Kind::SERIES, start));
        }
        if let Token::Ident(name) = self.peek() {
            if Operator::NAMES.contains(&name.as_str()) && self.peek_at(1) == &Token::LBracket {
                let op = self.operator()?;
                self.expect(Token::At)?;
                let (operand, kind, pos) = self.prefix()?;
                self.require_series(kind, pos)?;
                return Ok((Expr::Apply(Box::new(op), Box::new(operand)), Kind::SERIES, start));
            }
        }
        self.power()
    }

    fn operator(&mut self) -> Result<Operator, DslError> {
        let name = self.ident()?;
        self.expect(Token::LBracket)?;
        let op = if name == "FLOW" {
            let q = Box::new(self.series_expr()?);
            self.expect(Token::Comma)?;
            let v = Box::new(self.series_expr()?);
            self.expect(Token::Comma)?;
            let x = self.variable()?;
            self.expect(Token::Comma)?;
            let lambda = self.variable()?;
            Operator::Flow { q, v, x, lambda }
        } else {
            let src = self.variable()?;
            self.expect(Token::Arrow)?;
            let dst = self.variable()?;
            match name.as_str() {
                "D" => Operator::Singleton { src, dst },
                "EXP_SHIFT" => Operator::ExpShift { src, dst },
                "DOUBLETON" => Operator::Doubleton { src, dst },
                "EXP_HALF_SQ" => Operator::ExpHalfSquare { src, dst },
                "SUBSET" => {
                    self.expect(Token::Comma)?;
                    Operator::Subset { src, dst, k: self.small()? }
                }
                _ => {
                    self.expect(Token::Comma)?;
                    Operator::DoubletonK { src, dst, k: self.small()? }
                }
            }
        };
        self.expect(Token::RBracket)?;
        Ok(op)
    }

    fn power(&mut self) -> Result<(Expr, Kind, Pos), DslError> {
        let (base, kind, start) = self.atom()?;
        if self.eat(&Token::Caret) {
            let k = self.small()?;
            return Ok((Expr::Pow(Box::new(base), k), kind, start));
        }
        Ok((base, kind, start))
    }

    /// `INT` or `INT/INT`.
    fn number(&mut self) -> Result<Rational, DslError> {
        let num = self.integer()?;
        if self.peek() == &Token::Slash && matches!(self.peek_at(1), Token::Int(_)) {
            self.advance();
            let pos = self.pos();
            let den = self.integer()?;
            if den.is_zero() {
                return Err(DslError::Syntax {
                    line: pos.line,
                    col: pos.col,
                    expected: vec!["nonzero denominator".into()],
                    found: "`0`".into(),
                });
            }
            return Ok(Rational::new(num, den));
        }
        Ok(Rational::from_integer(num))
    }

    fn atom(&mut self) -> Result<(Expr, Kind, Pos), DslError> {
        let start = self.pos();
        match self.peek().clone() {
            Token::Int(_) => Ok((Expr::Num(self.number()?), Kind::BOTH, start)),
            Token::LParen => {
                self.advance();
                let (e, kind, _) = self.expr()?;
                self.expect(Token::RParen)?;
                Ok((e, kind, start))
            }
            Token::Ident(name) => {
                if self.peek_at(1) == &Token::LParen {
                    self.advance();
                    self.advance();
                    let result = if let Some(func) = Func::from_name(&name) {
                        (Expr::Call(func, self.call_args(func)?), Kind::SERIES, start)
                    } else if let Some(c) = Construct::from_name(&name) {
                        (Expr::Class(c, self.class_args(c)?), Kind::CLASS, start)
                    } else {
                        return Err(DslError::UnknownName {
                            line: start.line,
                            col: start.col,
                            name,
                        });
                    };
                    self.expect(Token::RParen)?;
                    return Ok(result);
                }
                if let Some(&kind) = self.env.get(&name) {
                    self.advance();
                    return Ok((Expr::Ref(name), kind, start));
                }
                Ok((Expr::Var(self.variable()?), Kind::BOTH, start))
            }
            _ => Err(self.error(&["number", "identifier", "`(`"])),
        }
    }

    fn call_args(&mut self, func: Func) -> Result<Vec<Expr>, DslError> {
        let signatures = func.signatures();
        let longest = signatures.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut args = Vec::new();
        loop {
            let shape = signatures
                .iter()
                .find(|s| s.len() > args.len())
                .map(|s| s[args.len()])
                .expect("a signature has another parameter");
            args.push(self.argument(shape)?);
            let complete = signatures.iter().any(|s| s.len() == args.len());
            if args.len() < longest && (self.peek() == &Token::Comma || !complete) {
                self.expect(Token::Comma)?;
                continue;
            }
            return Ok(args);
        }
    }

    fn argument(&mut self, shape: Param) -> Result<Expr, DslError> {
        match shape {
            Param::Series => self.series_expr(),
            Param::Class => self.class_expr(),
            Param::Variable => Ok(Expr::Var(self.variable()?)),
            Param::Integer => Ok(Expr::Num(Rational::from_integer(self.integer()?))),
            Param::Rational => {
                if self.eat(&Token::Minus) {
                    Ok(Expr::Neg(Box::new(Expr::Num(self.number()?))))
                } else {
                    Ok(Expr::Num(self.number()?))
                }
            }
        }
    }

    fn class_args(&mut self, c: Construct) -> Result<Vec<Expr>, DslError> {
        let first = self.class_expr()?;
        if c != Construct::Subst {
            return Ok(vec![first]);
        }
        self.expect(Token::Comma)?;
        let var = Expr::Var(self.variable()?);
        self.expect(Token::Comma)?;
        Ok(vec![first, var, self.class_expr()?])
    }
}

fn is_reserved(name: &str) -> bool {
    KEYWORDS.contains(&name)
        || Func::from_name(name).is_some()
        || Construct::from_name(name).is_some()
        || Operator::NAMES.contains(&name)
}

fn mismatch(pos: Pos, expected: &str, found: Kind) -> DslError {
    DslError::TypeMismatch {
        line: pos.line,
        col: pos.col,
        expected: expected.to_string(),
        found: found.describe().to_string(),
    }
}

fn combine(lhs: Kind, rhs: Kind, pos: Pos) -> Result<Kind, DslError> {
    let kind = Kind {
        series: lhs.series && rhs.series,
        class: lhs.class && rhs.class,
    };
    if kind.series || kind.class {
        Ok(kind)
    } else {
        Err(mismatch(pos, lhs.describe(), rhs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn round_trip(text: &str) {
        let script = parse(text).unwrap();
        let printed = script.to_string();
        assert_eq!(parse(&printed).unwrap(), script, "{printed}");
    }

    #[test]
    fn let_binds_a_class_lazily() {
        let s = parse("let C = egf(SET(x^2*t));").unwrap();
        assert!(matches!(&s.statements[0], Stmt::Let { name, value: Expr::Call(Func::Egf, _) } if name == "C"));
    }

    #[test]
    fn glaisher_check_parses() {
        let text = "check EXP_HALF_SQ[x->y] @ egf(SET(x^2*t)) == powfrac(-2*y^2*t,-1/2) * exp(x^2*t * seqinv(2*y^2*t)) upto x:8,y:8,t:4;";
        let s = parse(text).unwrap();
        let Stmt::Check { lhs, caps, .. } = &s.statements[0] else {
            panic!("not a check")
        };
        assert!(matches!(lhs, Expr::Apply(..)));
        assert_eq!(caps.to_string(), "t:4,x:8,y:8");
        round_trip(text);
    }

    #[test]
    fn precedence() {
        let e = parse_expr("1 + 2*x^3").unwrap();
        assert_eq!(e.to_string(), "1 + 2*x^3");
        let Expr::Add(_, rhs) = e else { panic!() };
        assert!(matches!(*rhs, Expr::Mul(_, ref p) if matches!(**p, Expr::Pow(_, 3))));
    }

    #[test]
    fn printing_keeps_needed_parentheses() {
        for text in [
            "emit (x + y)^3 upto x:3;",
            "emit x - (y - t) upto x:3;",
            "emit (1/2)^2*x;",
            "emit -(x + y)*-y;",
            "emit D[x->y] @ (x + y)*x;",
            "emit FLOW[1, 0, x, lambda] @ x^2 upto lambda:3 as json;",
            "let a = SUBST(SET(x), x, x + y);\nemit egf(a) upto x:2,y:2;",
            "check \"q\\\"uote\" sqsubst(x^2*y^2, y, -1) == -x^2 upto x:2;",
            "verify shift-dilation upto lambda:4;",
            "emit oracle(2, u, v) + oracle(1) upto t:2;",
        ] {
            round_trip(text);
        }
    }

    #[test]
    fn errors_carry_positions() {
        match parse("let a = x +;") {
            Err(DslError::Syntax { line: 1, col: 12, .. }) => {}
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("emit foo(x);"), Err(DslError::UnknownName { .. })));
        assert!(matches!(parse("emit SET(x);"), Err(DslError::TypeMismatch { .. })));
        assert!(matches!(parse("emit egf(exp(x));"), Err(DslError::TypeMismatch { .. })));
        assert!(matches!(parse("let a = x; let a = y;"), Err(DslError::DuplicateName { .. })));
        assert!(matches!(parse("verify nothing;"), Err(DslError::UnknownName { .. })));
        assert!(matches!(parse("let c = SET(x*t); emit c + exp(x);"), Err(DslError::TypeMismatch { .. })));
    }

    #[test]
    fn inadmissible_class_still_parses() {
        assert!(parse("let bad = SET(1);").is_ok());
    }
}
