use num_bigint::BigInt;

use crate::poly::Polynomial;
use crate::rf::RationalFunction;
use crate::var::VarTable;
use crate::{ExprError, Q};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(BigInt),
    Ident(String),
    Op(char),
    End,
}

struct Parser<'a> {
    toks: Vec<(Tok, usize)>,
    k: usize,
    vars: &'a VarTable,
}

fn lex(text: &str) -> Result<Vec<(Tok, usize)>, ExprError> {
    let b = text.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let c = b[i] as char;
        if c.is_ascii_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let s = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            out.push((Tok::Int(text[s..i].parse().unwrap()), s));
        } else if c.is_ascii_alphabetic() || c == '_' {
            let s = i;
            while i < b.len() && (b[i].is_ascii_alphanumeric() || b[i] == b'_') {
                i += 1;
            }
            out.push((Tok::Ident(text[s..i].to_string()), s));
        } else if "+-*/^()".contains(c) {
            out.push((Tok::Op(c), i));
            i += 1;
        } else {
            return Err(ExprError::Syntax {
                pos: i,
                msg: format!("unexpected character '{}'", c),
            });
        }
    }
    out.push((Tok::End, text.len()));
    Ok(out)
}

impl Parser<'_> {
    fn peek(&self) -> &Tok {
        &self.toks[self.k].0
    }

    fn pos(&self) -> usize {
        self.toks[self.k].1
    }

    fn err<T>(&self, msg: &str) -> Result<T, ExprError> {
        Err(ExprError::Syntax {
            pos: self.pos(),
            msg: msg.to_string(),
        })
    }

    fn expr(&mut self) -> Result<RationalFunction, ExprError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Tok::Op('+') => {
                    self.k += 1;
                    acc = acc.add(&self.term()?);
                }
                Tok::Op('-') => {
                    self.k += 1;
                    acc = acc.sub(&self.term()?);
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<RationalFunction, ExprError> {
        let mut acc = self.unary()?;
        loop {
            match self.peek() {
                Tok::Op('*') => {
                    self.k += 1;
                    acc = acc.mul(&self.unary()?);
                }
                Tok::Op('/') => {
                    self.k += 1;
                    let pos = self.pos();
                    let d = self.unary()?;
                    if d.is_zero() {
                        return Err(ExprError::ZeroDivisorAt { pos });
                    }
                    acc = acc.div(&d)?;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn unary(&mut self) -> Result<RationalFunction, ExprError> {
        if self.peek() == &Tok::Op('-') {
            self.k += 1;
            return Ok(self.unary()?.neg());
        }
        self.power()
    }

    fn power(&mut self) -> Result<RationalFunction, ExprError> {
        let mut base = self.atom()?;
        while self.peek() == &Tok::Op('^') {
            self.k += 1;
            let e = match self.peek().clone() {
                Tok::Int(e) => e,
                _ => return self.err("exponent must be a nonnegative integer literal"),
            };
            let e: u32 = match u32::try_from(&e) {
                Ok(e) if e <= 1_000_000 => e,
                _ => return self.err("exponent too large"),
            };
            self.k += 1;
            base = base.pow(e as i64)?;
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<RationalFunction, ExprError> {
        let pos = self.pos();
        match self.peek().clone() {
            Tok::Int(n) => {
                self.k += 1;
                Ok(RationalFunction::constant(Q::from_integer(n)))
            }
            Tok::Ident(name) => {
                self.k += 1;
                match self.vars.get(&name) {
                    Some(v) => Ok(RationalFunction::from_poly(Polynomial::var(v))),
                    None => Err(ExprError::UnknownVariable { name, pos }),
                }
            }
            Tok::Op('(') => {
                self.k += 1;
                let e = self.expr()?;
                if self.peek() != &Tok::Op(')') {
                    return self.err("expected ')'");
                }
                self.k += 1;
                Ok(e)
            }
            Tok::End => self.err("unexpected end of input"),
            Tok::Op(c) => self.err(&format!("unexpected '{}'", c)),
        }
    }
}

pub fn parse_expr(text: &str, vars: &VarTable) -> Result<RationalFunction, ExprError> {
    let toks = lex(text)?;
    let mut p = Parser { toks, k: 0, vars };
    let e = p.expr()?;
    if p.peek() != &Tok::End {
        return p.err("trailing input");
    }
    Ok(e)
}
