//! Text grammar:
//!
//! ```text
//! rational := ['-'] digits ['/' digits]
//! fieldvar := ('b'|'c') index { '\'' }
//! monomial := fieldvar ['^' exponent] { '*' fieldvar ['^' exponent] }
//! term     := rational ['*' monomial] | monomial
//! poly     := term { ('+'|'-') term }
//! ```
//!
//! Any other identifier is read as a fresh symbol (`b1s`, `q'`), unless it was
//! declared as a constant parameter.

use std::collections::BTreeSet;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::{DiffPoly, FieldKind, FieldVar, Monomial, Rational, SymbolName};
use crate::error::{Error, Result};

impl FromStr for DiffPoly {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Parser::new(s, &BTreeSet::new()).poly()
    }
}

impl DiffPoly {
    /// Parses with the given identifiers treated as constant parameters.
    pub fn parse_with_params(s: &str, params: &BTreeSet<String>) -> Result<Self> {
        Parser::new(s, params).poly()
    }
}

pub fn parse_field_var(s: &str) -> Result<FieldVar> {
    let empty = BTreeSet::new();
    let mut p = Parser::new(s, &empty);
    p.skip_ws();
    let v = p.field_var()?;
    p.skip_ws();
    if p.pos != p.src.len() {
        return Err(p.err("trailing input after field variable"));
    }
    Ok(v)
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
    params: &'a BTreeSet<String>,
}

impl<'a> Parser<'a> {
    fn new(s: &'a str, params: &'a BTreeSet<String>) -> Self {
        Self {
            src: s.as_bytes(),
            pos: 0,
            params,
        }
    }

    fn err(&self, msg: &str) -> Error {
        Error::Parse {
            pos: self.pos,
            msg: msg.to_string(),
        }
    }

    fn peek(&self) -> Option<u8> {
        self.src.get(self.pos).copied()
    }

    fn skip_ws(&mut self) {
        while matches!(self.peek(), Some(c) if c.is_ascii_whitespace()) {
            self.pos += 1;
        }
    }

    fn eat(&mut self, c: u8) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn digits(&mut self) -> Result<BigInt> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.err("expected digits"));
        }
        let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        Ok(s.parse().unwrap())
    }

    fn poly(&mut self) -> Result<DiffPoly> {
        let mut out = DiffPoly::zero();
        let mut sign = if self.eat(b'-') {
            -1
        } else {
            self.eat(b'+');
            1
        };
        loop {
            let (c, m) = self.term()?;
            out.add_term(m, if sign < 0 { -c } else { c });
            if self.eat(b'+') {
                sign = 1;
            } else if self.eat(b'-') {
                sign = -1;
            } else {
                break;
            }
        }
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.err("unexpected character"));
        }
        Ok(out)
    }

    fn term(&mut self) -> Result<(Rational, Monomial)> {
        let mut coeff = Rational::one();
        let mut mono = Monomial::one();
        loop {
            self.skip_ws();
            match self.peek() {
                Some(c) if c.is_ascii_digit() => {
                    let num = self.digits()?;
                    let den = if self.eat(b'/') {
                        self.digits()?
                    } else {
                        BigInt::one()
                    };
                    if den.is_zero() {
                        return Err(self.err("zero denominator"));
                    }
                    coeff *= Rational::new(num, den);
                }
                Some(c) if c.is_ascii_alphabetic() => {
                    let v = self.field_var()?;
                    let e = if self.eat(b'^') {
                        let e = self.digits()?;
                        u32::try_from(e).map_err(|_| self.err("exponent out of range"))?
                    } else {
                        1
                    };
                    mono.mul_var(v, e);
                }
                _ => return Err(self.err("expected a rational or a field variable")),
            }
            if !self.eat(b'*') {
                break;
            }
        }
        Ok((coeff, mono))
    }

    fn field_var(&mut self) -> Result<FieldVar> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_alphanumeric() || c == b'_') {
            self.pos += 1;
        }
        let ident = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
        if ident.is_empty() || !ident.as_bytes()[0].is_ascii_alphabetic() {
            return Err(self.err("expected identifier"));
        }
        let mut dorder = 0;
        while self.peek() == Some(b'\'') {
            self.pos += 1;
            dorder += 1;
        }
        let field = |kind| -> Option<FieldVar> {
            let idx = &ident[1..];
            if idx.is_empty() || !idx.bytes().all(|c| c.is_ascii_digit()) || idx.starts_with('0') {
                return None;
            }
            Some(FieldVar::new(kind, idx.parse().ok()?, dorder))
        };
        let parsed = match ident.as_bytes()[0] {
            b'b' => field(FieldKind::B),
            b'c' => field(FieldKind::C),
            _ => None,
        };
        if let Some(v) = parsed {
            return Ok(v);
        }
        let name = SymbolName::new(ident).map_err(|_| self.err("invalid symbol name"))?;
        if self.params.contains(ident) {
            if dorder > 0 {
                return Err(self.err("constant parameter cannot carry derivatives"));
            }
            return Ok(FieldVar::new(FieldKind::Param(name), 0, 0));
        }
        Ok(FieldVar::new(FieldKind::Sym(name), 0, dorder))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::diffpoly::rat;

    #[test]
    fn parses_grammar() {
        let q: DiffPoly = "-1/2*b1''*c1 + 3 - c2^2".parse().unwrap();
        assert_eq!(q.constant_term(), rat(3, 1));
        assert_eq!(q.to_string(), "3 - 1/2*b1''*c1 - c2^2");
    }

    #[test]
    fn rejects_garbage() {
        assert!("b1 +".parse::<DiffPoly>().is_err());
        assert!("1/0".parse::<DiffPoly>().is_err());
        assert!("b1 ) c1".parse::<DiffPoly>().is_err());
        assert!(parse_field_var("b1 c1").is_err());
    }

    #[test]
    fn symbols_and_params() {
        let mut params = BTreeSet::new();
        params.insert("e".to_string());
        let q = DiffPoly::parse_with_params("e*b1s'", &params).unwrap();
        let vars: Vec<_> = q.vars().into_iter().collect();
        assert!(matches!(vars[0].kind, FieldKind::Sym(_)));
        assert_eq!(vars[0].dorder, 1);
        assert!(vars[1].is_constant());
        assert!(DiffPoly::parse_with_params("e'", &params).is_err());
    }

    #[test]
    fn field_var_apostrophes() {
        let v = parse_field_var("c12'''").unwrap();
        assert_eq!(v, FieldVar::c(12).with_dorder(3));
        assert_eq!(v.to_string(), "c12'''");
    }
}
