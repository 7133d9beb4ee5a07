//! Text grammar for polynomials: integers, `/` rationals, variables of the
//! fixed universe, `+ - * ^` and parentheses. Whitespace is insignificant.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed};

use super::mpoly::MPoly;
use super::var::{Var, VarSet};
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Lexer<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Lexer<'a> {
    fn tokens(src: &'a str) -> Result<Vec<(usize, Tok)>> {
        let mut lx = Lexer { src, pos: 0 };
        let mut out = Vec::new();
        loop {
            let (p, t) = lx.next()?;
            let end = t == Tok::End;
            out.push((p, t));
            if end {
                return Ok(out);
            }
        }
    }

    fn next(&mut self) -> Result<(usize, Tok)> {
        let bytes = self.src.as_bytes();
        while self.pos < bytes.len() && bytes[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
        let start = self.pos;
        if self.pos >= bytes.len() {
            return Ok((start, Tok::End));
        }
        let c = bytes[self.pos];
        if c.is_ascii_digit() {
            while self.pos < bytes.len() && bytes[self.pos].is_ascii_digit() {
                self.pos += 1;
            }
            let n: BigInt = self.src[start..self.pos].parse().expect("digits");
            return Ok((start, Tok::Num(n)));
        }
        if c.is_ascii_alphabetic() || c == b'_' {
            while self.pos < bytes.len()
                && (bytes[self.pos].is_ascii_alphanumeric() || bytes[self.pos] == b'_')
            {
                self.pos += 1;
            }
            return Ok((start, Tok::Ident(self.src[start..self.pos].to_string())));
        }
        if b"+-*/^()".contains(&c) {
            self.pos += 1;
            return Ok((start, Tok::Op(c as char)));
        }
        let ch = self.src[start..].chars().next().unwrap_or('?');
        Err(Error::Syntax {
            pos: start,
            msg: format!("unexpected character `{ch}`"),
        })
    }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    allowed: VarSet,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if t != Tok::End {
            self.at += 1;
        }
        t
    }

    fn syntax<T>(&self, msg: impl Into<String>) -> Result<T> {
        Err(Error::Syntax {
            pos: self.pos(),
            msg: msg.into(),
        })
    }

    fn expr(&mut self) -> Result<MPoly> {
        let mut acc = match self.peek() {
            Tok::Op('-') => {
                self.bump();
                -self.term()?
            }
            Tok::Op('+') => {
                self.bump();
                self.term()?
            }
            _ => self.term()?,
        };
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.bump();
                    acc = &acc + &self.term()?;
                }
                Tok::Op('-') => {
                    self.bump();
                    acc = &acc - &self.term()?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<MPoly> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.bump();
                    acc = &acc * &self.unary()?;
                }
                Tok::Op('/') => {
                    self.bump();
                    let at = self.pos();
                    let d = self.unary()?;
                    if !d.is_constant() || d.is_zero() {
                        return Err(Error::Syntax {
                            pos: at,
                            msg: "divisor must be a non-zero constant".into(),
                        });
                    }
                    acc = acc.scale(&d.constant_term().recip());
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<MPoly> {
        if *self.peek() == Tok::Op('-') {
            self.bump();
            return Ok(-self.unary()?);
        }
        self.power()
    }

    fn power(&mut self) -> Result<MPoly> {
        let base = self.atom()?;
        if *self.peek() != Tok::Op('^') {
            return Ok(base);
        }
        self.bump();
        match self.bump() {
            Tok::Num(n) => {
                let e: u32 = match u32::try_from(&n) {
                    Ok(e) if e <= 255 => e,
                    _ => return self.syntax("exponent too large"),
                };
                Ok(base.pow(e))
            }
            _ => {
                self.at -= 1;
                self.syntax("expected a non-negative integer exponent")
            }
        }
    }

    fn atom(&mut self) -> Result<MPoly> {
        let pos = self.pos();
        match self.bump() {
            Tok::Num(n) => Ok(MPoly::constant(BigRational::from_integer(n))),
            Tok::Ident(name) => match Var::from_name(&name) {
                Some(v) if self.allowed.contains(v) => Ok(MPoly::var(v)),
                _ => Err(Error::UnknownVariable { name, pos }),
            },
            Tok::Op('(') => {
                let inner = self.expr()?;
                if self.bump() != Tok::Op(')') {
                    self.at -= 1;
                    return self.syntax("expected `)`");
                }
                Ok(inner)
            }
            Tok::End => Err(Error::Syntax {
                pos,
                msg: "unexpected end of input".into(),
            }),
            Tok::Op(c) => Err(Error::Syntax {
                pos,
                msg: format!("unexpected `{c}`"),
            }),
        }
    }
}

/// Parses `text` into a canonical polynomial. Only variables in `allowed`
/// are accepted; anything else is reported as an unknown variable.
pub fn parse_poly(text: &str, allowed: VarSet) -> Result<MPoly> {
    let toks = Lexer::tokens(text)?;
    let mut p = Parser {
        toks,
        at: 0,
        allowed,
    };
    let out = p.expr()?;
    if *p.peek() != Tok::End {
        return p.syntax("trailing input");
    }
    Ok(out)
}

/// Parses with the whole universe allowed.
pub fn parse(text: &str) -> Result<MPoly> {
    parse_poly(text, VarSet::ALL)
}

fn format_coeff(c: &BigRational) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

/// Canonical text form; terms in decreasing canonical order.
pub fn format_poly(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".to_string();
    }
    let mut out = String::new();
    for (i, (m, c)) in p.terms().iter().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mono = format!("{m:?}");
        if m.total_degree() == 0 {
            out.push_str(&format_coeff(&abs));
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&format_coeff(&abs));
            out.push('*');
            out.push_str(&mono);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polycore::Degree;

    #[test]
    fn parses_cox_component() {
        let p = parse("t2^2*t3 + t1^3").unwrap();
        assert_eq!(p.num_terms(), 2);
        assert_eq!(p.degree_in(VarSet::T), Degree::Finite(3));
    }

    #[test]
    fn parses_zero_and_binomial() {
        assert!(parse("0").unwrap().is_zero());
        let p = parse("(t1 - t2)^4").unwrap();
        let coeffs: Vec<i64> = p
            .terms()
            .iter()
            .map(|(_, c)| c.numer().try_into().unwrap())
            .collect();
        assert_eq!(coeffs, vec![1, -4, 6, -4, 1]);
    }

    #[test]
    fn rationals_and_unary_minus() {
        let p = parse("-1/2*t1 + 3/4").unwrap();
        assert_eq!(format_poly(&p), "-1/2*t1 + 3/4");
        assert_eq!(parse("-t1^2").unwrap(), -parse("t1*t1").unwrap());
        assert_eq!(parse("t1/2").unwrap(), parse("1/2*t1").unwrap());
    }

    #[test]
    fn errors_are_positioned() {
        match parse("t1 + * t2") {
            Err(Error::Syntax { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        match parse_poly("t1 + w7", VarSet::T) {
            Err(Error::UnknownVariable { name, pos }) => {
                assert_eq!(name, "w7");
                assert_eq!(pos, 5);
            }
            other => panic!("{other:?}"),
        }
        assert!(matches!(
            parse_poly("x1*t1", VarSet::T),
            Err(Error::UnknownVariable { .. })
        ));
        assert!(parse("t1/t2").is_err());
        assert!(parse("(t1").is_err());
    }
}
