//! Scalar literal grammar.
//!
//! ```text
//! expr  := term (('+' | '-') term)*
//! term  := unary (('*' | '/') unary)*
//! unary := '-' unary | power
//! power := atom ('^' '-'? integer)?
//! atom  := integer | 't' | 'j' | 'i' | 's' | '(' expr ')'
//! ```
//!
//! `j` is the top-layer generator, `s` the base generator (`i` when `s² = -1`).

use num_bigint::BigInt;
use num_rational::BigRational;

use super::tower::{Scalar, Tower};
use super::ScalarError;

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Sym(char),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, ScalarError> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => i += 1,
            '0'..='9' => {
                let start = i;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let digits: String = chars[start..i].iter().collect();
                out.push(Tok::Int(digits.parse().expect("ascii digits")));
            }
            't' | 'j' | 'i' | 's' => {
                out.push(Tok::Sym(c));
                i += 1;
            }
            '+' | '-' | '*' | '/' | '^' | '(' | ')' => {
                out.push(Tok::Op(c));
                i += 1;
            }
            _ => return Err(ScalarError::Parse(format!("unexpected character {c:?} in {s:?}"))),
        }
    }
    Ok(out)
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    tower: &'a Tower,
    src: &'a str,
}

impl Parser<'_> {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn eat_op(&mut self, op: char) -> bool {
        if self.peek() == Some(&Tok::Op(op)) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn err(&self, msg: &str) -> ScalarError {
        ScalarError::Parse(format!("{msg} at token {} in {:?}", self.pos, self.src))
    }

    fn expr(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.term()?;
        loop {
            if self.eat_op('+') {
                acc = &acc + &self.term()?;
            } else if self.eat_op('-') {
                acc = &acc - &self.term()?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<Scalar, ScalarError> {
        let mut acc = self.unary()?;
        loop {
            if self.eat_op('*') {
                acc = &acc * &self.unary()?;
            } else if self.eat_op('/') {
                let d = self.unary()?;
                acc = acc.div(&d).ok_or(ScalarError::DivisionByZero)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<Scalar, ScalarError> {
        if self.eat_op('-') {
            Ok(-self.unary()?)
        } else {
            self.power()
        }
    }

    fn power(&mut self) -> Result<Scalar, ScalarError> {
        let base = self.atom()?;
        if !self.eat_op('^') {
            return Ok(base);
        }
        let neg = self.eat_op('-');
        let e = match self.peek() {
            Some(Tok::Int(n)) => {
                let n: i64 = n.try_into().map_err(|_| self.err("exponent too large"))?;
                self.pos += 1;
                n
            }
            _ => return Err(self.err("expected integer exponent")),
        };
        base.pow(if neg { -e } else { e }).ok_or(ScalarError::DivisionByZero)
    }

    fn atom(&mut self) -> Result<Scalar, ScalarError> {
        let tok = self.peek().cloned().ok_or_else(|| self.err("unexpected end of input"))?;
        self.pos += 1;
        match tok {
            Tok::Int(n) => Ok(Scalar::from_rational(BigRational::from_integer(n))),
            Tok::Sym('t') => Ok(self.tower.t()),
            Tok::Sym('j') => self.tower.j(),
            Tok::Sym('i') if self.tower.base_square == Some(-1) => self.tower.s(),
            Tok::Sym('i') => Err(ScalarError::NoBaseGenerator),
            Tok::Sym('s') => self.tower.s(),
            Tok::Op('(') => {
                let v = self.expr()?;
                if !self.eat_op(')') {
                    return Err(self.err("expected ')'"));
                }
                Ok(v)
            }
            _ => Err(self.err("unexpected token")),
        }
    }
}

pub(crate) fn parse_scalar(tower: &Tower, s: &str) -> Result<Scalar, ScalarError> {
    let toks = lex(s)?;
    if toks.is_empty() {
        return Err(ScalarError::Parse("empty scalar literal".into()));
    }
    let mut p = Parser { toks, pos: 0, tower, src: s };
    let v = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(tower.embed(&v))
}
