//! Recursive-descent parser for polynomial expressions in the chart-I
//! algebra.
//!
//! ```text
//! expr   := ['+'|'-'] term (('+'|'-') term)*
//! term   := factor ('*' factor)*
//! factor := atom ('^' ['-'] INT)?
//! atom   := INT | 'q' | 'x11' | 'x12' | 'x21' | 'x22' | 'det' | '(' expr ')'
//! ```
//!
//! Products keep their written order. Negative powers are allowed only on
//! invertible scalars such as `q`.

use qadhm_core::{GaussRational, QLaurent};
use qadhm_quantum::qspacetime::det_x;
use qadhm_quantum::{Chart, NcPoly, QPoly};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("parse error at byte {pos}: {msg}")]
pub struct ParseError {
    pub pos: usize,
    pub msg: String,
}

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Int(i64),
    Ident(String),
    Sym(char),
}

fn lex(s: &str) -> Result<Vec<(usize, Tok)>, ParseError> {
    let b = s.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    while i < b.len() {
        let ch = b[i] as char;
        if ch.is_ascii_whitespace() {
            i += 1;
        } else if ch.is_ascii_digit() {
            let st = i;
            while i < b.len() && b[i].is_ascii_digit() {
                i += 1;
            }
            let v = s[st..i].parse().map_err(|_| ParseError { pos: st, msg: "integer too large".into() })?;
            out.push((st, Tok::Int(v)));
        } else if ch.is_ascii_alphabetic() {
            let st = i;
            while i < b.len() && b[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push((st, Tok::Ident(s[st..i].to_string())));
        } else if "+-*^()".contains(ch) {
            out.push((i, Tok::Sym(ch)));
            i += 1;
        } else {
            return Err(ParseError { pos: i, msg: format!("unexpected character {ch:?}") });
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
    end: usize,
}

fn constant(c: QLaurent) -> QPoly {
    NcPoly::constant(Chart::I, c)
}

impl Parser {
    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.at).map(|t| &t.1)
    }

    fn pos(&self) -> usize {
        self.toks.get(self.at).map_or(self.end, |t| t.0)
    }

    fn err<T>(&self, msg: impl Into<String>) -> Result<T, ParseError> {
        Err(ParseError { pos: self.pos(), msg: msg.into() })
    }

    fn eat(&mut self, c: char) -> bool {
        if self.peek() == Some(&Tok::Sym(c)) {
            self.at += 1;
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<QPoly, ParseError> {
        let neg = if self.eat('-') {
            true
        } else {
            self.eat('+');
            false
        };
        let mut acc = self.term()?;
        if neg {
            acc = acc.neg();
        }
        loop {
            if self.eat('+') {
                acc = acc.add(&self.term()?);
            } else if self.eat('-') {
                acc = acc.sub(&self.term()?);
            } else {
                return Ok(acc);
            }
        }
    }

    fn term(&mut self) -> Result<QPoly, ParseError> {
        let mut acc = self.factor()?;
        while self.eat('*') {
            acc = acc.mul(&self.factor()?);
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<QPoly, ParseError> {
        let base = self.atom()?;
        if !self.eat('^') {
            return Ok(base);
        }
        let neg = self.eat('-');
        let n = match self.peek() {
            Some(Tok::Int(n)) => *n,
            _ => return self.err("expected an integer exponent"),
        };
        self.at += 1;
        if !neg {
            return Ok(base.pow(u32::try_from(n).or_else(|_| self.err("exponent too large"))?));
        }
        let scalar = base.terms().iter().next().filter(|_| base.terms().len() == 1);
        match scalar {
            Some(((0, e), c)) if *e == [0; 4] => match c.as_monomial() {
                Some((g, k)) => {
                    let inv = QLaurent::q_pow(-k).scale(&(&GaussRational::from_int(1) / &g));
                    let n = u32::try_from(n).or_else(|_| self.err("exponent too large"))?;
                    Ok(constant(inv.pow(n)))
                }
                None => self.err("negative power of a non-invertible scalar"),
            },
            _ => self.err("negative powers are only allowed on invertible scalars"),
        }
    }

    fn atom(&mut self) -> Result<QPoly, ParseError> {
        let tok = match self.peek() {
            Some(t) => t.clone(),
            None => return self.err("unexpected end of input"),
        };
        self.at += 1;
        match tok {
            Tok::Int(n) => Ok(constant(QLaurent::from_int(n))),
            Tok::Ident(id) => match id.as_str() {
                "q" => Ok(constant(QLaurent::q_pow(1))),
                "x11" => Ok(NcPoly::gen(Chart::I, 0)),
                "x12" => Ok(NcPoly::gen(Chart::I, 1)),
                "x21" => Ok(NcPoly::gen(Chart::I, 2)),
                "x22" => Ok(NcPoly::gen(Chart::I, 3)),
                "det" => Ok(det_x()),
                _ => {
                    self.at -= 1;
                    self.err(format!("unknown symbol {id:?}"))
                }
            },
            Tok::Sym('(') => {
                let e = self.expr()?;
                if !self.eat(')') {
                    return self.err("expected ')'");
                }
                Ok(e)
            }
            Tok::Sym(c) => {
                self.at -= 1;
                self.err(format!("unexpected {c:?}"))
            }
        }
    }
}

pub fn parse(s: &str) -> Result<QPoly, ParseError> {
    let mut p = Parser { toks: lex(s)?, at: 0, end: s.len() };
    let e = p.expr()?;
    if p.at != p.toks.len() {
        return p.err("trailing input");
    }
    Ok(e)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(g: usize) -> QPoly {
        NcPoly::gen(Chart::I, g)
    }

    #[test]
    fn generators_and_det() {
        assert_eq!(parse("x11").unwrap(), x(0));
        assert_eq!(parse("det").unwrap(), det_x());
        assert_eq!(
            parse("x11*x22 - q^2*x12*x21").unwrap(),
            x(0).mul(&x(3)).sub(&x(1).mul(&x(2)).scale(&QLaurent::q_pow(2)))
        );
    }

    #[test]
    fn order_is_kept() {
        let a = parse("x21*x11").unwrap();
        assert_eq!(a, x(2).mul(&x(0)));
        assert_ne!(a, parse("x11*x21").unwrap());
    }

    #[test]
    fn scalars_and_powers() {
        assert_eq!(parse("-3").unwrap(), constant(QLaurent::from_int(-3)));
        assert_eq!(parse("q^-2").unwrap(), constant(QLaurent::q_pow(-2)));
        assert_eq!(parse("(2*q)^-1").unwrap(), constant(QLaurent::q_pow(-1).scale(&GaussRational::from_ratio(1, 2))));
        assert_eq!(parse("x21^3").unwrap(), x(2).pow(3));
        assert_eq!(
            parse("(x11 + 1)^2").unwrap(),
            x(0).mul(&x(0)).add(&x(0).scale(&QLaurent::from_int(2))).add(&constant(QLaurent::from_int(1)))
        );
    }

    #[test]
    fn errors_carry_positions() {
        assert_eq!(parse("x11 + y").unwrap_err().pos, 6);
        assert!(parse("x11^-1").is_err());
        assert!(parse("(x11").is_err());
        assert!(parse("x11 x12").is_err());
        assert!(parse("").is_err());
    }
}
