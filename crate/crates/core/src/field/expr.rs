//! Scalar expressions: integers, the field's indeterminate, + - * / ^ and
//! parentheses, with juxtaposition as multiplication (`2x^2+x`).

use super::{Field, FieldError};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(String),
    Ident(String),
    Op(char),
}

fn lex(s: &str) -> Result<Vec<Tok>, String> {
    let mut out = Vec::new();
    let chars: Vec<char> = s.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        if c.is_whitespace() {
            i += 1;
        } else if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_digit() {
                i += 1;
            }
            out.push(Tok::Num(chars[start..i].iter().collect()));
        } else if c.is_ascii_alphabetic() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            out.push(Tok::Ident(chars[start..i].iter().collect()));
        } else if "+-*/^()".contains(c) {
            out.push(Tok::Op(c));
            i += 1;
        } else {
            return Err(format!("unexpected character {c:?}"));
        }
    }
    Ok(out)
}

struct Parser<'a, F: Field> {
    f: &'a F,
    toks: Vec<Tok>,
    pos: usize,
}

impl<'a, F: Field> Parser<'a, F> {
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

    fn expr(&mut self) -> Result<F::Elem, String> {
        let mut acc = self.term()?;
        loop {
            if self.eat('+') {
                let t = self.term()?;
                acc = self.f.add(&acc, &t);
            } else if self.eat('-') {
                let t = self.term()?;
                acc = self.f.sub(&acc, &t);
            } else {
                return Ok(acc);
            }
        }
    }

    fn starts_factor(&self) -> bool {
        matches!(self.peek(), Some(Tok::Num(_)) | Some(Tok::Ident(_)) | Some(Tok::Op('(')))
    }

    fn term(&mut self) -> Result<F::Elem, String> {
        let mut acc = self.unary()?;
        loop {
            if self.eat('*') {
                let u = self.unary()?;
                acc = self.f.mul(&acc, &u);
            } else if self.eat('/') {
                let u = self.unary()?;
                let inv = self.f.inv(&u).ok_or("division by zero")?;
                acc = self.f.mul(&acc, &inv);
            } else if self.starts_factor() {
                let u = self.power()?;
                acc = self.f.mul(&acc, &u);
            } else {
                return Ok(acc);
            }
        }
    }

    fn unary(&mut self) -> Result<F::Elem, String> {
        if self.eat('-') {
            let u = self.unary()?;
            return Ok(self.f.neg(&u));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<F::Elem, String> {
        let base = self.atom()?;
        if self.eat('^') {
            let neg = self.eat('-');
            let e = match self.peek().cloned() {
                Some(Tok::Num(n)) => {
                    self.pos += 1;
                    n.parse::<u64>().map_err(|_| "exponent too large".to_string())?
                }
                _ => return Err("expected integer exponent".into()),
            };
            let v = self.f.pow(&base, e);
            if neg {
                return self.f.inv(&v).ok_or_else(|| "division by zero".to_string());
            }
            return Ok(v);
        }
        Ok(base)
    }

    fn atom(&mut self) -> Result<F::Elem, String> {
        match self.peek().cloned() {
            Some(Tok::Num(n)) => {
                self.pos += 1;
                Ok(self.f.from_decimal(&n))
            }
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                match self.f.variable() {
                    Some((v, x)) if v == name => Ok(x),
                    _ => Err(format!("unknown symbol {name:?}")),
                }
            }
            Some(Tok::Op('(')) => {
                self.pos += 1;
                let v = self.expr()?;
                if !self.eat(')') {
                    return Err("missing ')'".into());
                }
                Ok(v)
            }
            Some(t) => Err(format!("unexpected token {t:?}")),
            None => Err("unexpected end of input".into()),
        }
    }
}

pub fn parse<F: Field>(f: &F, s: &str) -> Result<F::Elem, FieldError> {
    let err = |m: String| FieldError::BadScalar(s.to_string(), m);
    let toks = lex(s).map_err(err)?;
    if toks.is_empty() {
        return Err(err("empty".into()));
    }
    let mut p = Parser { f, toks, pos: 0 };
    let v = p.expr().map_err(err)?;
    if p.pos != p.toks.len() {
        return Err(err(format!("trailing input at token {}", p.pos)));
    }
    Ok(v)
}
