use crate::error::{Error, Result};
use crate::linalg::Field;
use crate::poly::{Poly, VARS};

#[derive(Clone, Debug, PartialEq)]
enum Tok {
    Num(String),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    Open,
    Close,
}

fn lex(s: &str, nvars: usize) -> Result<Vec<Tok>> {
    let chars: Vec<char> = s.chars().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        match c {
            ' ' | '\t' => {}
            '+' => out.push(Tok::Plus),
            '-' => out.push(Tok::Minus),
            '*' => out.push(Tok::Star),
            '^' => out.push(Tok::Caret),
            '(' => out.push(Tok::Open),
            ')' => out.push(Tok::Close),
            c if c.is_ascii_digit() => {
                let start = i;
                while i + 1 < chars.len() && (chars[i + 1].is_ascii_digit() || chars[i + 1] == '/') {
                    i += 1;
                }
                out.push(Tok::Num(chars[start..=i].iter().collect()));
            }
            c => {
                let name = c.to_ascii_uppercase().to_string();
                match VARS.iter().position(|v| *v == name) {
                    Some(k) if k < nvars => out.push(Tok::Var(k)),
                    _ => return Err(Error::Parse(format!("unexpected {c:?} in polynomial {s:?}"))),
                }
            }
        }
        i += 1;
    }
    Ok(out)
}

struct Parser<'a, F: Field, const N: usize> {
    field: &'a F,
    toks: Vec<Tok>,
    pos: usize,
    src: &'a str,
}

impl<F: Field, const N: usize> Parser<'_, F, N> {
    fn err(&self, what: &str) -> Error {
        Error::Parse(format!("{what} at token {} of polynomial {:?}", self.pos, self.src))
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn expr(&mut self) -> Result<Poly<F, N>> {
        let mut acc = Poly::zero(self.field.clone());
        let mut sign = match self.peek() {
            Some(Tok::Minus) => {
                self.pos += 1;
                -1
            }
            Some(Tok::Plus) => {
                self.pos += 1;
                1
            }
            _ => 1,
        };
        loop {
            let t = self.term()?;
            acc = if sign < 0 { acc.sub(&t) } else { acc.add(&t) };
            match self.peek() {
                Some(Tok::Plus) => sign = 1,
                Some(Tok::Minus) => sign = -1,
                _ => return Ok(acc),
            }
            self.pos += 1;
        }
    }

    fn term(&mut self) -> Result<Poly<F, N>> {
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    acc = acc.mul(&self.power()?);
                }
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::Open) => acc = acc.mul(&self.power()?),
                _ => return Ok(acc),
            }
        }
    }

    fn power(&mut self) -> Result<Poly<F, N>> {
        let base = match self.peek().cloned() {
            Some(Tok::Num(s)) => {
                self.pos += 1;
                Poly::constant(self.field.clone(), self.field.parse(&s)?)
            }
            Some(Tok::Var(k)) => {
                self.pos += 1;
                Poly::var(self.field.clone(), k)
            }
            Some(Tok::Open) => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(&Tok::Close) {
                    return Err(self.err("expected ')'"));
                }
                self.pos += 1;
                inner
            }
            _ => return Err(self.err("expected a number, variable or '('")),
        };
        if self.peek() == Some(&Tok::Caret) {
            self.pos += 1;
            match self.peek().cloned() {
                Some(Tok::Num(s)) if !s.contains('/') => {
                    self.pos += 1;
                    let k: usize = s.parse().map_err(|_| self.err("bad exponent"))?;
                    return Ok(base.pow(k));
                }
                _ => return Err(self.err("expected a nonnegative integer exponent")),
            }
        }
        Ok(base)
    }
}

/// Parses expressions such as `"X^4"`, `"X + X^3"` or `"2*X^2*Y - 3/2 Y + 1"`
/// in the variables `X` (and `Y` when `N = 2`), case-insensitively.
pub fn parse_poly<F: Field, const N: usize>(field: &F, s: &str) -> Result<Poly<F, N>> {
    let toks = lex(s, N)?;
    if toks.is_empty() {
        return Err(Error::Parse("empty polynomial".into()));
    }
    let mut p = Parser { field, toks, pos: 0, src: s };
    let out = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing input"));
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{PrimeField, Rationals};

    #[test]
    fn parses() {
        let p: Poly<Rationals, 1> = parse_poly(&Rationals, "X^4").unwrap();
        assert_eq!(p.to_string(), "X^4");
        let p: Poly<Rationals, 2> = parse_poly(&Rationals, "2*x^2*Y - 3/2 y + 1").unwrap();
        assert_eq!(p.to_string(), "2*X^2*Y - 3/2*Y + 1");
        let p: Poly<Rationals, 1> = parse_poly(&Rationals, "-(X+1)^2").unwrap();
        assert_eq!(p.to_string(), "-X^2 - 2*X - 1");
        let p: Poly<PrimeField, 1> = parse_poly(&PrimeField::new(3).unwrap(), "X + X^3").unwrap();
        assert!(p.derivative(0).is_constant());
        assert!(parse_poly::<Rationals, 1>(&Rationals, "X + Y").is_err());
        assert!(parse_poly::<Rationals, 1>(&Rationals, "X^").is_err());
        assert!(parse_poly::<Rationals, 1>(&Rationals, "").is_err());
    }
}
