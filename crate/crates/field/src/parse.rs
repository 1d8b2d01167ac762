//! Recursive-descent reader for rational-function expressions.
//!
//! Grammar:
//! ```text
//! expr   := ['-'] term (('+' | '-') term)*
//! term   := factor (('*' | '/') factor)*
//! factor := atom ('^' ['-'] integer)?
//! atom   := integer | variable | '(' expr ')' | '-' factor
//! ```

use std::str::FromStr;

use num_bigint::BigInt;

use crate::error::FieldError;
use crate::ratfun::RationalFunction;
use crate::var::Var;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Sym(char),
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, FieldError> {
    let bytes = src.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < bytes.len() {
        let c = bytes[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_digit() {
                i += 1;
            }
            let n: BigInt = src[start..i].parse().expect("digits");
            out.push((start, Tok::Int(n)));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < bytes.len() && bytes[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((start, Tok::Ident(src[start..i].to_string())));
        } else if "+-*/^()".contains(c) {
            out.push((i, Tok::Sym(c)));
            i += 1;
        } else {
            return Err(perr(i, format!("unexpected character {c:?}")));
        }
    }
    Ok(out)
}

fn perr(pos: usize, msg: impl Into<String>) -> FieldError {
    FieldError::Parse { pos, msg: msg.into() }
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    pos: usize,
    end: usize,
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(_, t)| t)
    }

    fn here(&self) -> usize {
        self.toks.get(self.pos).map_or(self.end, |(p, _)| *p)
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<RationalFunction, FieldError> {
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

    fn term(&mut self) -> Result<RationalFunction, FieldError> {
        let mut acc = self.factor()?;
        loop {
            if self.eat('*') {
                acc = &acc * &self.factor()?;
            } else if self.peek() == Some(&Tok::Sym('/')) {
                let at = self.here();
                self.pos += 1;
                let d = self.factor()?;
                acc = acc.try_div(&d).map_err(|_| perr(at, "division by zero"))?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn factor(&mut self) -> Result<RationalFunction, FieldError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let at = self.here();
        let neg = self.eat('-');
        let e = match self.peek() {
            Some(Tok::Int(n)) => {
                let e: i64 = n.try_into().map_err(|_| perr(at, "exponent too large"))?;
                self.pos += 1;
                e
            }
            _ => return Err(perr(at, "expected integer exponent")),
        };
        let e = if neg { -e } else { e };
        if e < 0 && base.is_zero() {
            return Err(perr(at, "negative power of zero"));
        }
        Ok(base.pow(e))
    }

    fn atom(&mut self) -> Result<RationalFunction, FieldError> {
        let at = self.here();
        match self.peek().cloned() {
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(RationalFunction::constant(num_rational::BigRational::from_integer(n)))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Var::from_name(&name)
                    .map(RationalFunction::var)
                    .ok_or_else(|| perr(at, format!("unknown variable `{name}`")))
            }
            Some(Tok::Sym('(')) => {
                self.pos += 1;
                let e = self.expr()?;
                if !self.eat(')') {
                    return Err(perr(self.here(), "expected `)`"));
                }
                Ok(e)
            }
            Some(Tok::Sym('-')) => {
                self.pos += 1;
                Ok(-self.factor()?)
            }
            Some(Tok::Sym(c)) => Err(perr(at, format!("unexpected `{c}`"))),
            None => Err(perr(at, "unexpected end of input")),
        }
    }
}

pub(crate) fn parse(src: &str) -> Result<RationalFunction, FieldError> {
    let toks = lex(src)?;
    let mut p = Parser { toks, pos: 0, end: src.len() };
    let e = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(perr(p.here(), "trailing input"));
    }
    Ok(e)
}

impl FromStr for RationalFunction {
    type Err = FieldError;
    fn from_str(s: &str) -> Result<Self, FieldError> {
        parse(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_basic_forms() {
        let f: RationalFunction = "(s^2 - 1)/(s - 1)".parse().unwrap();
        assert_eq!(f, "s + 1".parse().unwrap());
        let g: RationalFunction = "-r^-2 * (2/3)".parse().unwrap();
        assert_eq!(g.to_string(), "(-2)/(3*r^2)");
    }

    #[test]
    fn round_trips_printer() {
        for src in ["(s - t)/(s*t + 1)", "(1/2)*s - 3", "0", "-(t^3)", "(s*r^-1 + t)^2"] {
            let f: RationalFunction = src.parse().unwrap();
            let back: RationalFunction = f.to_string().parse().unwrap();
            assert_eq!(f, back);
            assert_eq!(f.to_string(), back.to_string());
        }
    }

    #[test]
    fn reports_errors() {
        assert!(matches!("s +".parse::<RationalFunction>(), Err(FieldError::Parse { .. })));
        assert!(matches!("q".parse::<RationalFunction>(), Err(FieldError::Parse { .. })));
        assert!(matches!("(s".parse::<RationalFunction>(), Err(FieldError::Parse { .. })));
        assert!(matches!("s/0".parse::<RationalFunction>(), Err(FieldError::Parse { .. })));
        assert!(matches!("s ^ t".parse::<RationalFunction>(), Err(FieldError::Parse { .. })));
    }
}
