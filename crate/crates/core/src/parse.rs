//! Polynomial text syntax: rational coefficients, `^` powers, optional `*`,
//! parentheses, and juxtaposition (`2x y^2`). Variables must be declared.

use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::poly::Polynomial;
use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(Rational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

struct Lexer;

impl Lexer {
    fn run(src: &str) -> Result<Vec<(Tok, usize)>> {
        let chars: Vec<char> = src.chars().collect();
        let mut out = Vec::new();
        let mut i = 0;
        while i < chars.len() {
            let c = chars[i];
            let col = i + 1;
            match c {
                ' ' | '\t' => {
                    i += 1;
                }
                '+' => {
                    out.push((Tok::Plus, col));
                    i += 1;
                }
                '-' | '\u{2212}' => {
                    out.push((Tok::Minus, col));
                    i += 1;
                }
                '*' => {
                    out.push((Tok::Star, col));
                    i += 1;
                }
                '/' => {
                    out.push((Tok::Slash, col));
                    i += 1;
                }
                '^' => {
                    out.push((Tok::Caret, col));
                    i += 1;
                }
                '(' => {
                    out.push((Tok::LParen, col));
                    i += 1;
                }
                ')' => {
                    out.push((Tok::RParen, col));
                    i += 1;
                }
                d if d.is_ascii_digit() || d == '.' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_ascii_digit() || chars[i] == '.') {
                        i += 1;
                    }
                    let s: String = chars[start..i].iter().collect();
                    let r = crate::rational::parse(&s)
                        .ok_or_else(|| Error::parse(1, col, format!("malformed number `{s}`")))?;
                    out.push((Tok::Num(r), col));
                }
                a if a.is_alphabetic() || a == '_' => {
                    let start = i;
                    while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                        i += 1;
                    }
                    out.push((Tok::Ident(chars[start..i].iter().collect()), col));
                }
                other => {
                    return Err(Error::parse(1, col, format!("unexpected character `{other}`")));
                }
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    pos: usize,
    names: &'a [String],
    end_col: usize,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn col(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end_col, |(_, c)| *c)
    }

    fn bump(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).map(|(t, _)| t.clone());
        self.pos += 1;
        t
    }

    fn err(&self, msg: impl Into<String>) -> Error {
        Error::parse(1, self.col(), msg)
    }

    fn nvars(&self) -> usize {
        self.names.len()
    }

    fn expr(&mut self) -> Result<Polynomial> {
        let mut acc = if matches!(self.peek(), Some(Tok::Plus | Tok::Minus)) {
            Polynomial::zero(self.nvars())
        } else {
            self.term()?
        };
        while let Some(t) = self.peek() {
            match t {
                Tok::Plus => {
                    self.bump();
                    acc = acc.add(&self.term()?)?;
                }
                Tok::Minus => {
                    self.bump();
                    acc = acc.sub(&self.term()?)?;
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    fn starts_factor(&self) -> bool {
        matches!(
            self.peek(),
            Some(Tok::Num(_) | Tok::Ident(_) | Tok::LParen)
        )
    }

    fn term(&mut self) -> Result<Polynomial> {
        let mut acc = self.factor()?;
        loop {
            if matches!(self.peek(), Some(Tok::Star)) {
                self.bump();
                acc = acc.mul(&self.factor()?)?;
            } else if self.starts_factor() {
                acc = acc.mul(&self.factor()?)?;
            } else {
                break;
            }
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Polynomial> {
        let base = self.atom()?;
        if matches!(self.peek(), Some(Tok::Caret)) {
            self.bump();
            let col = self.col();
            match self.bump() {
                Some(Tok::Num(r)) if r.is_integer() => {
                    let e = r.to_integer().to_u32().ok_or_else(|| {
                        Error::parse(1, col, "exponent out of range")
                    })?;
                    Ok(base.pow(e))
                }
                _ => Err(Error::parse(1, col, "expected a nonnegative integer exponent")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial> {
        let col = self.col();
        match self.bump() {
            Some(Tok::Minus) => Ok(self.factor()?.neg()),
            Some(Tok::Num(r)) => {
                if matches!(self.peek(), Some(Tok::Slash)) {
                    self.bump();
                    let dcol = self.col();
                    match self.bump() {
                        Some(Tok::Num(d)) if !d.is_zero() => {
                            Ok(Polynomial::constant(self.nvars(), r / d))
                        }
                        _ => Err(Error::parse(1, dcol, "expected a nonzero denominator")),
                    }
                } else {
                    Ok(Polynomial::constant(self.nvars(), r))
                }
            }
            Some(Tok::Ident(name)) => match self.names.iter().position(|n| *n == name) {
                Some(i) => Ok(Polynomial::var(self.nvars(), i)),
                None => Err(Error::parse(1, col, format!("unknown variable `{name}`"))),
            },
            Some(Tok::LParen) => {
                let inner = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(inner),
                    _ => Err(Error::parse(1, col, "unbalanced parenthesis")),
                }
            }
            Some(_) => Err(Error::parse(1, col, "expected a number, variable, or `(`")),
            None => Err(self.err("unexpected end of polynomial")),
        }
    }
}

/// Parse `src` over the declared variable `names`. Columns in errors are 1-based
/// within `src`; the reported line is 1.
pub fn parse_polynomial(src: &str, names: &[String]) -> Result<Polynomial> {
    let toks = Lexer::run(src)?;
    if toks.is_empty() {
        return Err(Error::parse(1, 1, "empty polynomial"));
    }
    let mut p = Parser {
        toks,
        pos: 0,
        names,
        end_col: src.chars().count() + 1,
    };
    let poly = p.expr()?;
    if p.pos < p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(poly)
}
