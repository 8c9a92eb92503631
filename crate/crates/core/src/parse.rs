//! Recursive-descent parser for polynomial expressions.
//!
//! ```text
//! expr     := ["-"] term (("+" | "-") term)*
//! term     := factor ("*" factor)*
//! factor   := base ("^" natural)?
//! base     := rational | ident | "(" expr ")"
//! rational := natural ("/" natural)?
//! ```
//!
//! Whitespace is insignificant; implicit multiplication is rejected.

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::Rational;
use crate::error::{ParseError, ParseErrorKind};

/// Largest exponent accepted after `^`.
const MAX_EXPONENT: u32 = 64;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Pos {
    pub line: usize,
    pub column: usize,
}

#[derive(Clone, Debug, PartialEq)]
pub enum Ast {
    Num(Rational),
    Ident(String, Pos),
    Neg(Box<Ast>),
    Add(Box<Ast>, Box<Ast>),
    Sub(Box<Ast>, Box<Ast>),
    Mul(Box<Ast>, Box<Ast>),
    Pow(Box<Ast>, u32),
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Nat(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
    End,
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Nat(n) => format!("number `{n}`"),
        Tok::Ident(s) => format!("identifier `{s}`"),
        Tok::Plus => "`+`".into(),
        Tok::Minus => "`-`".into(),
        Tok::Star => "`*`".into(),
        Tok::Slash => "`/`".into(),
        Tok::Caret => "`^`".into(),
        Tok::LParen => "`(`".into(),
        Tok::RParen => "`)`".into(),
        Tok::End => "end of input".into(),
    }
}

fn err(kind: ParseErrorKind, pos: Pos) -> ParseError {
    ParseError { kind, line: pos.line, column: pos.column }
}

fn syntax(msg: impl Into<String>, pos: Pos) -> ParseError {
    err(ParseErrorKind::Syntax(msg.into()), pos)
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Pos)>, ParseError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut line, mut column) = (1, 1);
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let pos = Pos { line, column };
        if c == '\n' {
            line += 1;
            column = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            column += 1;
            i += 1;
            continue;
        }
        let start = i;
        let tok = if c.is_ascii_digit() {
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let s: String = chars[start..i].iter().collect();
            Tok::Nat(s.parse().expect("digits"))
        } else if c.is_ascii_alphabetic() || c == '_' {
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            Tok::Ident(chars[start..i].iter().collect())
        } else {
            i += 1;
            match c {
                '+' => Tok::Plus,
                '-' => Tok::Minus,
                '*' => Tok::Star,
                '/' => Tok::Slash,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                other => return Err(syntax(format!("unexpected character `{other}`"), pos)),
            }
        };
        column += i - start;
        out.push((tok, pos));
    }
    out.push((Tok::End, Pos { line, column }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Pos)>,
    at: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].0
    }

    fn pos(&self) -> Pos {
        self.toks[self.at].1
    }

    fn bump(&mut self) -> (Tok, Pos) {
        let t = self.toks[self.at].clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn expr(&mut self) -> Result<Ast, ParseError> {
        let mut acc = if *self.peek() == Tok::Minus {
            self.bump();
            Ast::Neg(Box::new(self.term()?))
        } else {
            self.term()?
        };
        loop {
            match self.peek() {
                Tok::Plus => {
                    self.bump();
                    acc = Ast::Add(Box::new(acc), Box::new(self.term()?));
                }
                Tok::Minus => {
                    self.bump();
                    acc = Ast::Sub(Box::new(acc), Box::new(self.term()?));
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Ast, ParseError> {
        let mut acc = self.factor()?;
        while *self.peek() == Tok::Star {
            self.bump();
            acc = Ast::Mul(Box::new(acc), Box::new(self.factor()?));
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Ast, ParseError> {
        let base = self.base()?;
        if *self.peek() != Tok::Caret {
            return Ok(base);
        }
        self.bump();
        let (tok, pos) = self.bump();
        match tok {
            Tok::Nat(n) => {
                let e: u32 = n
                    .try_into()
                    .ok()
                    .filter(|e| *e <= MAX_EXPONENT)
                    .ok_or_else(|| syntax(format!("exponent larger than {MAX_EXPONENT}"), pos))?;
                Ok(Ast::Pow(Box::new(base), e))
            }
            other => Err(syntax(format!("expected exponent, found {}", describe(&other)), pos)),
        }
    }

    fn base(&mut self) -> Result<Ast, ParseError> {
        let (tok, pos) = self.bump();
        match tok {
            Tok::Nat(num) => {
                if *self.peek() != Tok::Slash {
                    return Ok(Ast::Num(Rational::from_integer(num)));
                }
                self.bump();
                let (tok, dpos) = self.bump();
                match tok {
                    Tok::Nat(den) if !den.is_zero() => Ok(Ast::Num(Rational::new(num, den))),
                    Tok::Nat(_) => Err(syntax("zero denominator", dpos)),
                    other => Err(syntax(format!("expected denominator, found {}", describe(&other)), dpos)),
                }
            }
            Tok::Ident(name) => Ok(Ast::Ident(name, pos)),
            Tok::LParen => {
                let inner = self.expr()?;
                let (tok, cpos) = self.bump();
                if tok != Tok::RParen {
                    return Err(syntax(format!("expected `)`, found {}", describe(&tok)), cpos));
                }
                Ok(inner)
            }
            other => Err(syntax(format!("unexpected {}", describe(&other)), pos)),
        }
    }
}

pub fn parse_expr(text: &str) -> Result<Ast, ParseError> {
    let mut p = Parser { toks: tokenize(text)?, at: 0 };
    let ast = p.expr()?;
    match p.peek() {
        Tok::End => Ok(ast),
        other => Err(syntax(format!("unexpected {} (implicit multiplication is not supported)", describe(other)), p.pos())),
    }
}

/// Ring operations needed to evaluate an [`Ast`].
pub trait EvalRing: Sized + Clone {
    fn add(&self, o: &Self) -> Self;
    fn sub(&self, o: &Self) -> Self;
    fn mul(&self, o: &Self) -> Self;
    fn neg(&self) -> Self;
}

/// Evaluates `ast`; `ident` resolves names (`Err(())` = unknown).
pub fn eval<R: EvalRing>(
    ast: &Ast,
    ident: &mut dyn FnMut(&str) -> Result<R, ()>,
    constant: &dyn Fn(Rational) -> R,
) -> Result<R, ParseError> {
    Ok(match ast {
        Ast::Num(q) => constant(q.clone()),
        Ast::Ident(name, pos) => ident(name).map_err(|_| unknown_ident(name, *pos, ident))?,
        Ast::Neg(a) => eval(a, ident, constant)?.neg(),
        Ast::Add(a, b) => eval(a, ident, constant)?.add(&eval(b, ident, constant)?),
        Ast::Sub(a, b) => eval(a, ident, constant)?.sub(&eval(b, ident, constant)?),
        Ast::Mul(a, b) => eval(a, ident, constant)?.mul(&eval(b, ident, constant)?),
        Ast::Pow(a, e) => {
            let base = eval(a, ident, constant)?;
            let mut acc = constant(Rational::from_integer(1.into()));
            for _ in 0..*e {
                acc = acc.mul(&base);
            }
            acc
        }
    })
}

/// `x1x2` is reported as a syntax error rather than an unknown name.
fn unknown_ident<R>(name: &str, pos: Pos, ident: &mut dyn FnMut(&str) -> Result<R, ()>) -> ParseError {
    if splits_into_known(name, ident) {
        syntax(format!("`{name}`: implicit multiplication is not supported"), pos)
    } else {
        err(ParseErrorKind::UnknownIdentifier(name.to_string()), pos)
    }
}

fn splits_into_known<R>(name: &str, ident: &mut dyn FnMut(&str) -> Result<R, ()>) -> bool {
    (1..name.len()).any(|k| {
        name.is_char_boundary(k) && ident(&name[..k]).is_ok() && {
            let rest = &name[k..];
            ident(rest).is_ok() || splits_into_known(rest, ident)
        }
    })
}
