//! Parser for polynomial expressions such as `x*y1^2*y2^2 - (z^3 + z + y1 - y2)`.
//!
//! Accepted atoms: integers, `n/d` literals, `x`, `z`, `y1`…`ym`, and `y` as an
//! alias for `y1` when m = 1. Products may be written with `*` or by juxtaposition.

use super::poly::{MultiPoly, Var, Vars};
use super::rat::Rat;
use super::AlgebraError;
use num_bigint::BigInt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Plus,
    Minus,
    Star,
    Slash,
    Caret,
    LParen,
    RParen,
}

fn lex(s: &str) -> Result<Vec<Tok>, AlgebraError> {
    let mut out = Vec::new();
    let cs: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < cs.len() {
        let c = cs[i];
        match c {
            ' ' | '\t' | '\n' => i += 1,
            '+' => {
                out.push(Tok::Plus);
                i += 1
            }
            '-' | '−' => {
                out.push(Tok::Minus);
                i += 1
            }
            '*' | '·' => {
                out.push(Tok::Star);
                i += 1
            }
            '/' => {
                out.push(Tok::Slash);
                i += 1
            }
            '^' => {
                out.push(Tok::Caret);
                i += 1
            }
            '(' => {
                out.push(Tok::LParen);
                i += 1
            }
            ')' => {
                out.push(Tok::RParen);
                i += 1
            }
            '0'..='9' => {
                let st = i;
                while i < cs.len() && cs[i].is_ascii_digit() {
                    i += 1;
                }
                let t: String = cs[st..i].iter().collect();
                out.push(Tok::Num(BigInt::from_str(&t).unwrap()));
            }
            'a'..='z' | 'A'..='Z' => {
                let st = i;
                i += 1;
                while i < cs.len() && (cs[i].is_ascii_digit() || cs[i] == '_') {
                    i += 1;
                }
                let t: String = cs[st..i].iter().filter(|&&c| c != '_').collect();
                out.push(Tok::Ident(t));
            }
            _ => return Err(AlgebraError::Parse(format!("unexpected character '{}'", c))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: &'a [Tok],
    pos: usize,
    vars: Vars,
}

impl<'a> Parser<'a> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn bump(&mut self) -> Option<&Tok> {
        let t = self.toks.get(self.pos);
        self.pos += 1;
        t
    }

    fn err<T>(&self, msg: &str) -> Result<T, AlgebraError> {
        Err(AlgebraError::Parse(format!("{} at token {}", msg, self.pos)))
    }

    fn expr(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.bump();
                    acc = acc.add(&self.term()?);
                }
                Some(Tok::Minus) => {
                    self.bump();
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MultiPoly, AlgebraError> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.bump();
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::LParen) => {
                    acc = acc.mul(&self.power()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<MultiPoly, AlgebraError> {
        if let Some(Tok::Minus) = self.peek() {
            self.bump();
            return Ok(self.power()?.neg());
        }
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.bump();
            match self.bump().cloned() {
                Some(Tok::Num(n)) => {
                    let k = u32::try_from(n).map_err(|_| AlgebraError::Parse("exponent too large".into()))?;
                    Ok(base.pow(k))
                }
                _ => self.err("expected a nonnegative integer exponent"),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MultiPoly, AlgebraError> {
        match self.bump().cloned() {
            Some(Tok::Num(n)) => {
                let mut r = Rat::from_integer(n);
                if let Some(Tok::Slash) = self.peek() {
                    self.bump();
                    match self.bump().cloned() {
                        Some(Tok::Num(d)) if d != BigInt::from(0) => r /= Rat::from_integer(d),
                        _ => return self.err("expected a nonzero integer denominator"),
                    }
                }
                Ok(MultiPoly::constant(self.vars, r))
            }
            Some(Tok::Ident(name)) => {
                let v = resolve(&name, self.vars)?;
                Ok(MultiPoly::var(self.vars, v))
            }
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.bump() {
                    Some(Tok::RParen) => Ok(e),
                    _ => self.err("expected ')'"),
                }
            }
            _ => self.err("expected a number, variable or '('"),
        }
    }
}

fn resolve(name: &str, vars: Vars) -> Result<Var, AlgebraError> {
    let unknown = || AlgebraError::Parse(format!("unknown variable '{}'", name));
    match name {
        "x" if vars.x => Ok(Var::X),
        "z" => Ok(Var::Z),
        "y" if vars.m == 1 => Ok(Var::Y(0)),
        _ => {
            let idx: usize = name.strip_prefix('y').and_then(|d| d.parse().ok()).ok_or_else(unknown)?;
            if idx >= 1 && idx <= vars.m {
                Ok(Var::Y(idx - 1))
            } else {
                Err(unknown())
            }
        }
    }
}

pub fn parse_poly(s: &str, vars: Vars) -> Result<MultiPoly, AlgebraError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(AlgebraError::Parse("empty expression".into()));
    }
    let mut p = Parser { toks: &toks, pos: 0, vars };
    let e = p.expr()?;
    if p.pos != toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}
