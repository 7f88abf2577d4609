//! Textual element syntax.
//!
//! ```text
//! element := "0" | ["-"] term (("+" | "-") term)*
//! term    := [scalar "*"] word
//! scalar  := int ["/" int] | "(" ["-"] int ["/" int] ")"
//! word    := gen ("." gen)*
//! gen     := ident ["^*"]
//! ```
//!
//! A word is evaluated as the product of its generators, so any word is
//! accepted (`e^*.e`), while printing always emits normal monomials such as
//! `1*e.f^* + (-1/2)*v`.

use num_bigint::BigInt;

use super::{Element, LeavittAlgebra};
use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Plus,
    Minus,
    Star,
    Dot,
    Slash,
    LParen,
    RParen,
    Int(BigInt),
    Gen(String),
}

fn syntax(message: impl Into<String>) -> Error {
    Error::Syntax { line: 1, message: message.into() }
}

fn tokenize(text: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let single = match c {
            '+' => Some(Tok::Plus),
            '-' => Some(Tok::Minus),
            '*' => Some(Tok::Star),
            '.' => Some(Tok::Dot),
            '/' => Some(Tok::Slash),
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            _ => None,
        };
        if let Some(t) = single {
            out.push(t);
            i += 1;
            continue;
        }
        match c {
            _ if c.is_whitespace() => i += 1,
            _ if c.is_ascii_digit() => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Int(digits.parse().expect("digits")));
            }
            _ if c.is_ascii_alphabetic() || c == '_' || c == '~' => {
                let start = i;
                while i < chars.len()
                    && (chars[i].is_ascii_alphanumeric() || matches!(chars[i], '_' | '\'' | '~' | ':'))
                {
                    i += 1;
                }
                let mut name: String = chars[start..i].iter().collect();
                if chars.get(i) == Some(&'^') && chars.get(i + 1) == Some(&'*') {
                    name.push_str("^*");
                    i += 2;
                }
                out.push(Tok::Gen(name));
            }
            _ => return Err(syntax(format!("unexpected character `{c}`"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    alg: &'a LeavittAlgebra,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn eat(&mut self, t: &Tok) -> bool {
        if self.peek() == Some(t) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn int(&mut self) -> Result<BigInt> {
        match self.next() {
            Some(Tok::Int(n)) => Ok(n),
            other => Err(syntax(format!("expected integer, found {other:?}"))),
        }
    }

    fn fraction(&mut self) -> Result<Scalar> {
        let neg = self.eat(&Tok::Minus);
        let mut num = self.int()?;
        if neg {
            num = -num;
        }
        let den = if self.eat(&Tok::Slash) { self.int()? } else { BigInt::from(1) };
        self.alg.field().ratio(&num, &den)
    }

    fn scalar(&mut self) -> Result<Option<Scalar>> {
        match self.peek() {
            Some(Tok::LParen) => {
                self.pos += 1;
                let s = self.fraction()?;
                if !self.eat(&Tok::RParen) {
                    return Err(syntax("expected `)`"));
                }
                Ok(Some(s))
            }
            Some(Tok::Int(_)) => {
                let num = self.int()?;
                let den = if self.eat(&Tok::Slash) { self.int()? } else { BigInt::from(1) };
                Ok(Some(self.alg.field().ratio(&num, &den)?))
            }
            _ => Ok(None),
        }
    }

    fn word(&mut self) -> Result<Element> {
        let mut acc = self.generator()?;
        while self.eat(&Tok::Dot) {
            acc = &acc * &self.generator()?;
        }
        Ok(acc)
    }

    fn generator(&mut self) -> Result<Element> {
        match self.next() {
            Some(Tok::Gen(name)) => self.alg.generator(&name),
            other => Err(syntax(format!("expected generator, found {other:?}"))),
        }
    }

    fn term(&mut self, negate: bool) -> Result<Element> {
        let coeff = match self.scalar()? {
            Some(c) => {
                if !self.eat(&Tok::Star) {
                    // A bare `0` is the zero element; other bare scalars have
                    // no meaning without a unit.
                    if c.is_zero() {
                        return Ok(self.alg.zero());
                    }
                    return Err(syntax("expected `*` after scalar"));
                }
                c
            }
            None => self.alg.field().one(),
        };
        let coeff = if negate { -coeff } else { coeff };
        Ok(self.word()?.scale(&coeff))
    }

    fn element(&mut self) -> Result<Element> {
        let mut negate = self.eat(&Tok::Minus);
        let mut acc = self.term(negate)?;
        loop {
            match self.next() {
                None => return Ok(acc),
                Some(Tok::Plus) => negate = self.eat(&Tok::Minus),
                Some(Tok::Minus) => negate = true,
                Some(t) => return Err(syntax(format!("unexpected token {t:?}"))),
            }
            acc = &acc + &self.term(negate)?;
        }
    }
}

/// Parses an element over `alg`; words are multiplied out into normal form.
pub fn parse_element(alg: &LeavittAlgebra, text: &str) -> Result<Element> {
    let toks = tokenize(text)?;
    if toks.is_empty() {
        return Err(syntax("empty element"));
    }
    Parser { toks, pos: 0, alg }.element()
}
