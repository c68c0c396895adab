//! A small parser for polynomial expressions such as `x^2 - 3*y*z`.
//!
//! `^` is the power operator, `*` is optional between symbols
//! (`2x^2y` works when `x` and `y` are declared variables; identifiers are
//! matched longest-first against the declared variable names).

use crate::error::CaError;
use crate::poly::Polynomial;
use crate::ring::PolyRing;

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(u64),
    Var(usize),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
}

struct Lexer<'a> {
    src: &'a [u8],
    pos: usize,
    line: usize,
    col: usize,
    ring: &'a PolyRing,
}

impl<'a> Lexer<'a> {
    fn err(&self, msg: impl Into<String>) -> CaError {
        CaError::Parse { line: self.line, col: self.col, msg: msg.into() }
    }

    fn bump(&mut self) {
        if self.pos < self.src.len() {
            if self.src[self.pos] == b'\n' {
                self.line += 1;
                self.col = 1;
            } else {
                self.col += 1;
            }
            self.pos += 1;
        }
    }

    fn tokens(&mut self) -> Result<Vec<Tok>, CaError> {
        let mut out = Vec::new();
        while self.pos < self.src.len() {
            let c = self.src[self.pos];
            match c {
                b' ' | b'\t' | b'\r' | b'\n' => self.bump(),
                b'+' => {
                    out.push(Tok::Plus);
                    self.bump();
                }
                b'-' => {
                    out.push(Tok::Minus);
                    self.bump();
                }
                b'*' => {
                    out.push(Tok::Star);
                    self.bump();
                }
                b'^' => {
                    out.push(Tok::Caret);
                    self.bump();
                }
                b'(' => {
                    out.push(Tok::LParen);
                    self.bump();
                }
                b')' => {
                    out.push(Tok::RParen);
                    self.bump();
                }
                b'0'..=b'9' => {
                    let start = self.pos;
                    while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
                        self.bump();
                    }
                    let s = std::str::from_utf8(&self.src[start..self.pos]).unwrap();
                    let n: u64 = s
                        .parse()
                        .map_err(|_| self.err(format!("integer literal too large: {s}")))?;
                    out.push(Tok::Num(n));
                }
                _ if c.is_ascii_alphabetic() || c == b'_' => {
                    // longest-prefix match against declared variable names
                    let rest = &self.src[self.pos..];
                    let mut matched: Option<(usize, usize)> = None; // (var index, len)
                    for (i, name) in self.ring.var_names().iter().enumerate() {
                        let nb = name.as_bytes();
                        if rest.starts_with(nb) {
                            if matched.map_or(true, |(_, l)| nb.len() > l) {
                                matched = Some((i, nb.len()));
                            }
                        }
                    }
                    match matched {
                        Some((i, l)) => {
                            out.push(Tok::Var(i));
                            for _ in 0..l {
                                self.bump();
                            }
                        }
                        None => {
                            let mut end = self.pos;
                            while end < self.src.len()
                                && (self.src[end].is_ascii_alphanumeric()
                                    || self.src[end] == b'_')
                            {
                                end += 1;
                            }
                            let name =
                                std::str::from_utf8(&self.src[self.pos..end]).unwrap();
                            return Err(self.err(format!("unknown variable `{name}`")));
                        }
                    }
                }
                _ => return Err(self.err(format!("unexpected character `{}`", c as char))),
            }
        }
        Ok(out)
    }
}

struct Parser<'a> {
    toks: Vec<Tok>,
    pos: usize,
    ring: &'a PolyRing,
}

impl<'a> Parser<'a> {
    fn err(&self, msg: impl Into<String>) -> CaError {
        CaError::Parse { line: 1, col: self.pos + 1, msg: msg.into() }
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos)
    }

    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        if t.is_some() {
            self.pos += 1;
        }
        t
    }

    // expr := term (('+'|'-') term)*
    fn expr(&mut self) -> Result<Polynomial, CaError> {
        let mut acc = self.term()?;
        loop {
            match self.peek() {
                Some(Tok::Plus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.add(&t, self.ring.fp());
                }
                Some(Tok::Minus) => {
                    self.pos += 1;
                    let t = self.term()?;
                    acc = acc.sub(&t, self.ring.fp());
                }
                _ => break,
            }
        }
        Ok(acc)
    }

    // term := ('-')* factor ('*'? factor)*
    fn term(&mut self) -> Result<Polynomial, CaError> {
        let mut neg = false;
        while let Some(Tok::Minus) = self.peek() {
            neg = !neg;
            self.pos += 1;
        }
        let mut acc = self.power()?;
        loop {
            match self.peek() {
                Some(Tok::Star) => {
                    self.pos += 1;
                    let f = self.power()?;
                    acc = acc.mul(&f, self.ring.fp());
                }
                // implicit multiplication before a factor-start token
                Some(Tok::Num(_)) | Some(Tok::Var(_)) | Some(Tok::LParen) => {
                    let f = self.power()?;
                    acc = acc.mul(&f, self.ring.fp());
                }
                _ => break,
            }
        }
        if neg {
            acc = acc.neg(self.ring.fp());
        }
        Ok(acc)
    }

    // power := atom ('^' number)?
    fn power(&mut self) -> Result<Polynomial, CaError> {
        let base = self.atom()?;
        if let Some(Tok::Caret) = self.peek() {
            self.pos += 1;
            match self.next() {
                Some(Tok::Num(e)) => {
                    let mut acc = Polynomial::one(self.ring);
                    for _ in 0..e {
                        acc = acc.mul(&base, self.ring.fp());
                    }
                    Ok(acc)
                }
                _ => Err(self.err("expected a non-negative integer exponent after `^`")),
            }
        } else {
            Ok(base)
        }
    }

    fn atom(&mut self) -> Result<Polynomial, CaError> {
        match self.next() {
            Some(Tok::Num(n)) => {
                let c = self.ring.fp().reduce_i64((n % self.ring.fp().modulus() as u64) as i64);
                Ok(Polynomial::constant(c, self.ring))
            }
            Some(Tok::Var(i)) => Ok(Polynomial::var(i, self.ring)),
            Some(Tok::LParen) => {
                let e = self.expr()?;
                match self.next() {
                    Some(Tok::RParen) => Ok(e),
                    _ => Err(self.err("expected `)`")),
                }
            }
            other => Err(self.err(format!("unexpected token {other:?}"))),
        }
    }
}

pub fn parse_poly(src: &str, ring: &PolyRing) -> Result<Polynomial, CaError> {
    let mut lx = Lexer { src: src.as_bytes(), pos: 0, line: 1, col: 1, ring };
    let toks = lx.tokens()?;
    if toks.is_empty() {
        return Err(CaError::Parse { line: 1, col: 1, msg: "empty expression".into() });
    }
    let mut p = Parser { toks, pos: 0, ring };
    let poly = p.expr()?;
    if p.pos != p.toks.len() {
        return Err(p.err("trailing tokens after expression"));
    }
    Ok(poly)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_quadric() {
        let r = PolyRing::standard(&["x", "y", "z"], 32003);
        let f = parse_poly("x^2 - y*z", &r).unwrap();
        assert!(f.is_homogeneous());
        assert_eq!(f.degree(), Some(2));
        assert_eq!(f.terms.len(), 2);
    }

    #[test]
    fn implicit_multiplication_and_sign() {
        let r = PolyRing::standard(&["x", "y"], 32003);
        let a = parse_poly("2x^2y - -3xy^2", &r).unwrap();
        let b = parse_poly("2*x^2*y + 3*x*y^2", &r).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn unknown_variable_is_an_error() {
        let r = PolyRing::standard(&["x", "y"], 32003);
        assert!(parse_poly("x + w", &r).is_err());
    }

    #[test]
    fn coefficient_reduction_mod_p() {
        let r = PolyRing::standard(&["x"], 7);
        let f = parse_poly("8x - x", &r).unwrap();
        assert!(f.is_zero());
    }
}
