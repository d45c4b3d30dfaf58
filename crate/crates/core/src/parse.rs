//! Text formats for polynomials: `T^12+T^3`, `(g+1)*T^2+g` and
//! `x^2+x*y+y^2+1`. Integer literals are element encodings and `g` is the
//! field generator.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::bipoly::BiPoly;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};
use crate::unipoly::UniPoly;

const MAX_EXPONENT: u32 = 4096;

type Sparse = BTreeMap<Vec<u32>, Elem>;

struct Parser<'a> {
    field: &'a Arc<Field>,
    vars: &'a [&'a str],
    chars: Vec<char>,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, msg: &str) -> Result<T> {
        Err(Error::Parse(format!(
            "{msg} at position {} in {:?}",
            self.pos,
            self.chars.iter().collect::<String>()
        )))
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).copied()
    }

    fn constant(&self, c: Elem) -> Sparse {
        let mut m = Sparse::new();
        if !c.is_zero() {
            m.insert(vec![0; self.vars.len()], c);
        }
        m
    }

    fn add(&self, mut a: Sparse, b: &Sparse, negate: bool) -> Sparse {
        let f = self.field;
        for (k, &c) in b {
            let c = if negate { f.neg(c) } else { c };
            let e = a.entry(k.clone()).or_insert(Elem::ZERO);
            *e = f.add(*e, c);
        }
        a.retain(|_, c| !c.is_zero());
        a
    }

    fn mul(&self, a: &Sparse, b: &Sparse) -> Result<Sparse> {
        let f = self.field;
        let mut out = Sparse::new();
        for (ka, &ca) in a {
            for (kb, &cb) in b {
                let k: Vec<u32> = ka.iter().zip(kb).map(|(x, y)| x + y).collect();
                if k.iter().any(|&e| e > MAX_EXPONENT) {
                    return self.err("degree too large");
                }
                let e = out.entry(k).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(ca, cb));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Ok(out)
    }

    fn number(&mut self) -> Result<u64> {
        let start = self.pos;
        while self.peek().is_some_and(|c| c.is_ascii_digit()) {
            self.pos += 1;
        }
        let text: String = self.chars[start..self.pos].iter().collect();
        match text.parse() {
            Ok(n) => Ok(n),
            Err(_) => self.err("expected an integer"),
        }
    }

    fn expr(&mut self) -> Result<Sparse> {
        let mut acc = Sparse::new();
        let mut negate = false;
        if let Some(c @ ('+' | '-')) = self.peek() {
            negate = c == '-';
            self.pos += 1;
        }
        loop {
            let t = self.term()?;
            acc = self.add(acc, &t, negate);
            match self.peek() {
                Some(c @ ('+' | '-')) => {
                    negate = c == '-';
                    self.pos += 1;
                }
                _ => return Ok(acc),
            }
        }
    }

    fn term(&mut self) -> Result<Sparse> {
        let mut acc = self.factor()?;
        while self.peek() == Some('*') {
            self.pos += 1;
            let f = self.factor()?;
            acc = self.mul(&acc, &f)?;
        }
        Ok(acc)
    }

    fn factor(&mut self) -> Result<Sparse> {
        let base = self.atom()?;
        if self.peek() != Some('^') {
            return Ok(base);
        }
        self.pos += 1;
        let e = self.number()?;
        if e > MAX_EXPONENT as u64 {
            return self.err("exponent too large");
        }
        let mut acc = self.constant(Elem::ONE);
        for _ in 0..e {
            acc = self.mul(&acc, &base)?;
        }
        Ok(acc)
    }

    fn atom(&mut self) -> Result<Sparse> {
        match self.peek() {
            Some('(') => {
                self.pos += 1;
                let inner = self.expr()?;
                if self.peek() != Some(')') {
                    return self.err("expected ')'");
                }
                self.pos += 1;
                Ok(inner)
            }
            Some(c) if c.is_ascii_digit() => {
                let n = self.number()?;
                Ok(self.constant(self.field.elem(n)?))
            }
            Some(c) if c.is_ascii_alphabetic() => {
                let start = self.pos;
                while self.peek().is_some_and(|c| c.is_ascii_alphanumeric()) {
                    self.pos += 1;
                }
                let name: String = self.chars[start..self.pos].iter().collect();
                if name == "g" {
                    return Ok(self.constant(self.field.generator()));
                }
                match self.vars.iter().position(|v| *v == name) {
                    Some(i) => {
                        let mut k = vec![0; self.vars.len()];
                        k[i] = 1;
                        Ok(Sparse::from([(k, Elem::ONE)]))
                    }
                    None => {
                        self.pos = start;
                        self.err(&format!("unknown symbol {name:?}"))
                    }
                }
            }
            _ => self.err("expected a term"),
        }
    }
}

fn parse(field: &Arc<Field>, vars: &[&str], text: &str) -> Result<Sparse> {
    let chars: Vec<char> = text.chars().filter(|c| !c.is_whitespace()).collect();
    let mut p = Parser {
        field,
        vars,
        chars,
        pos: 0,
    };
    if p.chars.is_empty() {
        return p.err("empty polynomial");
    }
    let out = p.expr()?;
    if p.pos != p.chars.len() {
        return p.err("unexpected character");
    }
    Ok(out)
}

/// Parses a polynomial in `T`.
pub fn parse_unipoly(field: &Arc<Field>, text: &str) -> Result<UniPoly> {
    let sparse = parse(field, &["T"], text)?;
    let deg = sparse.keys().map(|k| k[0] as usize).max().unwrap_or(0);
    let mut coeffs = vec![Elem::ZERO; deg + 1];
    for (k, c) in sparse {
        coeffs[k[0] as usize] = c;
    }
    Ok(UniPoly::new(field, coeffs))
}

/// Parses a polynomial in `x` and `y`.
pub fn parse_bipoly(field: &Arc<Field>, text: &str) -> Result<BiPoly> {
    let sparse = parse(field, &["x", "y"], text)?;
    Ok(BiPoly::new(
        field,
        sparse.into_iter().map(|(k, c)| ((k[0], k[1]), c)),
    ))
}
