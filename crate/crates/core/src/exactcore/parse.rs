//! Infix polynomial syntax: rationals, identifiers, `+ - * / ^`, parentheses,
//! and implicit multiplication (`2a`, `1/8(2a+1)^2`, `a b`).

use num_bigint::BigInt;
use num_traits::Zero;

use super::mpoly::MPoly;
use super::rat::Rat;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().map(|c| if c == '−' { '-' } else { c }).collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let st = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            let t: String = chars[st..i].iter().collect();
            out.push(Tok::Num(t.parse().expect("digits")));
        } else if c.is_alphabetic() || c == '_' {
            let st = i;
            while i < chars.len() && (chars[i].is_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            out.push(Tok::Ident(chars[st..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(Error::Parse(format!("unexpected character {c:?} in {s:?}")));
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Op(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                acc = &acc + &self.term()?;
            } else if self.eat('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat('/') {
                let d = self.unary()?;
                let c = d
                    .as_constant()
                    .ok_or_else(|| Error::Parse("division by a non-constant".into()))?;
                if c.is_zero() {
                    return Err(Error::ZeroDivisor("division by zero in expression".into()));
                }
                acc = acc.scale(&(Rat::from_integer(1.into()) / c));
            } else if matches!(
                self.peek(),
                Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('('))
            ) {
                acc = &acc * &self.power()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if self.eat('-') {
            return Ok(-self.unary()?);
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if self.eat('^') {
            match self.toks.get(self.pos) {
                Some(Tok::Num(n)) => {
                    let k: u32 = n
                        .try_into()
                        .map_err(|_| Error::Parse(format!("exponent {n} too large")))?;
                    self.pos += 1;
                    Ok(base.pow(k))
                }
                _ => Err(Error::Parse(
                    "exponent must be a non-negative integer".into(),
                )),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        match self.toks.get(self.pos).cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(MPoly::constant(Rat::from_integer(n)))
            }
            Some(Tok::Ident(v)) => {
                self.pos += 1;
                Ok(MPoly::var(&v))
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(Error::Parse("missing ')'".into()));
                }
                Ok(e)
            }
            other => Err(Error::Parse(format!("unexpected token {other:?}"))),
        }
    }
}

pub(crate) fn parse_poly(s: &str) -> Result<MPoly> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty expression".into()));
    }
    let mut p = Parser { toks, pos: 0 };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(Error::Parse(format!("trailing input in {s:?}")));
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactcore::rat::rat;

    #[test]
    fn precedence_and_implicit_products() {
        let f = parse_poly("1/8(2a+2b+1)^2").unwrap();
        assert_eq!(f.coeff(&[("a", 2)]), rat(1, 2));
        assert_eq!(f.coeff(&[]), rat(1, 8));
        assert_eq!(parse_poly("-a^2").unwrap().coeff(&[("a", 2)]), rat(-1, 1));
        assert_eq!(
            parse_poly("2 n0 n1 − n1").unwrap(),
            parse_poly("2*n0*n1-n1").unwrap()
        );
        assert!(parse_poly("a/b").is_err());
        assert!(parse_poly("(a").is_err());
    }
}
