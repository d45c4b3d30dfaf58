//! Dense univariate polynomials over a finite field.
//!
//! Arithmetic between polynomials over different fields is a programming
//! error and panics; fallible operations (division, inversion) return
//! [`Result`].

mod factor;
mod partition;
mod resultant;

use std::cmp::Ordering;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};

pub use factor::{count_irreducibles, Factorization};
pub use partition::Partition;
pub use resultant::{charpoly, discriminant, resultant, resultant_shifted};

#[derive(Clone)]
pub struct UniPoly {
    field: Arc<Field>,
    coeffs: Vec<Elem>,
}

impl PartialEq for UniPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field.same(&other.field)
    }
}

impl Eq for UniPoly {}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_terms(f, &self.coeffs, "T")
    }
}

pub(crate) fn write_terms(f: &mut fmt::Formatter<'_>, coeffs: &[Elem], var: &str) -> fmt::Result {
    let mut first = true;
    for (e, c) in coeffs.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        if !first {
            write!(f, "+")?;
        }
        first = false;
        let mono = match e {
            0 => String::new(),
            1 => var.to_string(),
            _ => format!("{var}^{e}"),
        };
        match (c.encoding(), mono.is_empty()) {
            (_, true) => write!(f, "{c}")?,
            (1, false) => write!(f, "{mono}")?,
            _ => write!(f, "{c}*{mono}")?,
        }
    }
    if first {
        write!(f, "0")?;
    }
    Ok(())
}

/// `binom(n, k) mod p` by Lucas' theorem.
pub fn binomial_mod(mut n: u64, mut k: u64, p: u64) -> u64 {
    let mut acc = 1u64;
    while k > 0 || n > 0 {
        let (ni, ki) = (n % p, k % p);
        if ki > ni {
            return 0;
        }
        // small binomial with ni < p, computed with modular inverses
        let mut num = 1u64;
        let mut den = 1u64;
        for i in 0..ki {
            num = num * ((ni - i) % p) % p;
            den = den * ((i + 1) % p) % p;
        }
        acc = acc * num % p * mod_inverse(den, p) % p;
        n /= p;
        k /= p;
    }
    acc
}

fn mod_inverse(a: u64, p: u64) -> u64 {
    let mut r = 1u64;
    let mut b = a % p;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            r = r * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    r
}

impl UniPoly {
    pub fn new(field: &Arc<Field>, mut coeffs: Vec<Elem>) -> UniPoly {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn from_encodings(field: &Arc<Field>, encodings: &[u32]) -> Result<UniPoly> {
        let coeffs = encodings
            .iter()
            .map(|&n| field.elem(n as u64))
            .collect::<Result<Vec<_>>>()?;
        Ok(UniPoly::new(field, coeffs))
    }

    pub fn zero(field: &Arc<Field>) -> UniPoly {
        UniPoly::new(field, Vec::new())
    }

    pub fn one(field: &Arc<Field>) -> UniPoly {
        UniPoly::constant(field, Elem::ONE)
    }

    pub fn constant(field: &Arc<Field>, c: Elem) -> UniPoly {
        UniPoly::new(field, vec![c])
    }

    /// `c * T^e`.
    pub fn monomial(field: &Arc<Field>, c: Elem, e: usize) -> UniPoly {
        let mut coeffs = vec![Elem::ZERO; e + 1];
        coeffs[e] = c;
        UniPoly::new(field, coeffs)
    }

    /// The indeterminate `T`.
    pub fn x(field: &Arc<Field>) -> UniPoly {
        UniPoly::monomial(field, Elem::ONE, 1)
    }

    /// The monic polynomial of degree `d` whose lower coefficients are the
    /// base-`q` digits of `index`, constant term first.
    pub fn monic_from_index(field: &Arc<Field>, d: usize, mut index: u64) -> UniPoly {
        let q = field.size() as u64;
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(Elem((index % q) as u32));
            index /= q;
        }
        coeffs.push(Elem::ONE);
        UniPoly::new(field, coeffs)
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn coeffs(&self) -> &[Elem] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Elem> {
        self.coeffs
    }

    pub fn encodings(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.encoding()).collect()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// True for the zero polynomial and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [Elem::ONE]
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last() == Some(&Elem::ONE)
    }

    /// Leading coefficient, zero for the zero polynomial.
    pub fn lc(&self) -> Elem {
        self.coeffs.last().copied().unwrap_or(Elem::ZERO)
    }

    pub fn coeff(&self, i: usize) -> Elem {
        self.coeffs.get(i).copied().unwrap_or(Elem::ZERO)
    }

    fn check(&self, other: &UniPoly) {
        assert!(self.field.same(&other.field), "field mismatch");
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.add(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let f = &self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n)
            .map(|i| f.sub(self.coeff(i), other.coeff(i)))
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn neg(&self) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }

    pub fn scale(&self, c: Elem) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let f = &self.field;
        let mut out = vec![Elem::ZERO; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        UniPoly::new(f, out)
    }

    pub fn pow(&self, mut e: u64) -> UniPoly {
        let mut acc = UniPoly::one(&self.field);
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Multiplies by `T^e`.
    pub fn shl(&self, e: usize) -> UniPoly {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![Elem::ZERO; e];
        coeffs.extend_from_slice(&self.coeffs);
        UniPoly::new(&self.field, coeffs)
    }

    /// Truncates to terms of degree below `n`.
    pub fn truncate(&self, n: usize) -> UniPoly {
        UniPoly::new(&self.field, self.coeffs[..n.min(self.coeffs.len())].to_vec())
    }

    pub fn div_rem(&self, divisor: &UniPoly) -> Result<(UniPoly, UniPoly)> {
        self.check(divisor);
        let dd = divisor.degree().ok_or(Error::DivisionByZero)?;
        let f = &self.field;
        if self.coeffs.len() <= dd {
            return Ok((UniPoly::zero(f), self.clone()));
        }
        let lc_inv = f.inv(divisor.lc())?;
        let mut rem = self.coeffs.clone();
        let mut quo = vec![Elem::ZERO; rem.len() - dd];
        for top in (dd..rem.len()).rev() {
            let c = f.mul(rem[top], lc_inv);
            if c.is_zero() {
                continue;
            }
            quo[top - dd] = c;
            for (i, &d) in divisor.coeffs.iter().enumerate() {
                let idx = top - dd + i;
                rem[idx] = f.sub(rem[idx], f.mul(c, d));
            }
        }
        rem.truncate(dd);
        Ok((UniPoly::new(f, quo), UniPoly::new(f, rem)))
    }

    pub fn rem(&self, divisor: &UniPoly) -> Result<UniPoly> {
        Ok(self.div_rem(divisor)?.1)
    }

    /// Exact quotient, or `None` when `divisor` does not divide `self`.
    pub fn div_exact(&self, divisor: &UniPoly) -> Result<Option<UniPoly>> {
        let (q, r) = self.div_rem(divisor)?;
        Ok(r.is_zero().then_some(q))
    }

    pub fn monic(&self) -> UniPoly {
        if self.is_zero() || self.is_monic() {
            return self.clone();
        }
        let inv = self.field.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        self.check(other);
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b).expect("nonzero divisor");
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Returns `(g, s, t)` with `g = s*self + t*other` and `g` monic.
    pub fn ext_gcd(&self, other: &UniPoly) -> (UniPoly, UniPoly, UniPoly) {
        self.check(other);
        let f = &self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut s0, mut s1) = (UniPoly::one(f), UniPoly::zero(f));
        let (mut t0, mut t1) = (UniPoly::zero(f), UniPoly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.div_rem(&r1).expect("nonzero divisor");
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(r0.lc()).expect("nonzero");
        (r0.scale(inv), s0.scale(inv), t0.scale(inv))
    }

    /// Inverse of `self` modulo `m`, if it exists.
    pub fn inv_mod(&self, m: &UniPoly) -> Option<UniPoly> {
        let (g, s, _) = self.ext_gcd(m);
        g.is_one().then(|| s.rem(m).expect("nonzero modulus"))
    }

    pub fn mul_mod(&self, other: &UniPoly, m: &UniPoly) -> UniPoly {
        self.mul(other).rem(m).expect("nonzero modulus")
    }

    pub fn pow_mod(&self, mut e: u64, m: &UniPoly) -> UniPoly {
        let mut acc = UniPoly::one(&self.field).rem(m).expect("nonzero modulus");
        let mut base = self.rem(m).expect("nonzero modulus");
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul_mod(&base, m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul_mod(&base, m);
            }
        }
        acc
    }

    /// Formal derivative.
    pub fn derivative(&self) -> UniPoly {
        self.hasse(1)
    }

    /// Hasse derivative `D^j f = sum binom(i, j) a_i T^(i-j)`.
    pub fn hasse(&self, j: usize) -> UniPoly {
        let f = &self.field;
        let p = f.characteristic() as u64;
        if j >= self.coeffs.len() {
            return UniPoly::zero(f);
        }
        let coeffs = (j..self.coeffs.len())
            .map(|i| {
                let b = binomial_mod(i as u64, j as u64, p);
                f.mul(self.coeffs[i], f.from_int(b as i64))
            })
            .collect();
        UniPoly::new(f, coeffs)
    }

    pub fn eval(&self, x: Elem) -> Elem {
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(Elem::ZERO, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// `self(g(T))`.
    pub fn compose(&self, g: &UniPoly) -> UniPoly {
        self.check(g);
        let f = &self.field;
        self.coeffs
            .iter()
            .rev()
            .fold(UniPoly::zero(f), |acc, &c| {
                acc.mul(g).add(&UniPoly::constant(f, c))
            })
    }

    /// `self(T + c)`.
    pub fn taylor_shift(&self, c: Elem) -> UniPoly {
        let f = &self.field;
        let lin = UniPoly::new(f, vec![c, Elem::ONE]);
        self.compose(&lin)
    }

    /// `self + s*T + b`, a member of the short interval around `self`.
    pub fn shift(&self, s: Elem, b: Elem) -> UniPoly {
        let f = &self.field;
        let mut coeffs = self.coeffs.clone();
        if coeffs.len() < 2 {
            coeffs.resize(2, Elem::ZERO);
        }
        coeffs[0] = f.add(coeffs[0], b);
        coeffs[1] = f.add(coeffs[1], s);
        UniPoly::new(f, coeffs)
    }

    /// Largest `m` with `D^j self (alpha) = 0` for all `j < m`.
    pub fn root_multiplicity(&self, alpha: Elem) -> Result<usize> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok((0..self.coeffs.len())
            .take_while(|&j| self.hasse(j).eval(alpha).is_zero())
            .count())
    }

    /// The `p`-th root of a polynomial in `T^p`, or `None` if some exponent
    /// with nonzero coefficient is not divisible by `p`.
    pub fn pth_root(&self) -> Option<UniPoly> {
        let f = &self.field;
        let p = f.characteristic() as usize;
        let mut out = Vec::with_capacity(self.coeffs.len() / p + 1);
        for (i, &c) in self.coeffs.iter().enumerate() {
            if i % p == 0 {
                out.push(f.pth_root(c));
            } else if !c.is_zero() {
                return None;
            }
        }
        Some(UniPoly::new(f, out))
    }

    /// Applies the `q`-power Frobenius of a subfield of size `p^j` to every coefficient.
    pub fn frobenius(&self, j: u32) -> UniPoly {
        let f = &self.field;
        UniPoly::new(f, self.coeffs.iter().map(|&c| f.frobenius(c, j)).collect())
    }

    /// Pushes the coefficients through an embedding.
    pub fn embed(&self, emb: &Embedding) -> UniPoly {
        assert!(self.field.same(emb.source()), "field mismatch");
        UniPoly::new(
            emb.target(),
            self.coeffs.iter().map(|&c| emb.apply(c)).collect(),
        )
    }

    /// Pulls coefficients back along an embedding, if they all lie in the image.
    pub fn restrict(&self, emb: &Embedding) -> Option<UniPoly> {
        assert!(self.field.same(emb.target()), "field mismatch");
        let coeffs = self
            .coeffs
            .iter()
            .map(|&c| emb.preimage(c))
            .collect::<Option<Vec<_>>>()?;
        Some(UniPoly::new(emb.source(), coeffs))
    }

    /// Canonical order: by degree, then by coefficient encodings from the top down.
    pub fn canonical_cmp(&self, other: &UniPoly) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }

    /// A stable 64-bit key of the coefficient vector.
    pub fn key(&self) -> u64 {
        self.coeffs.iter().fold(0x9e37_79b9_7f4a_7c15u64, |h, c| {
            crate::rng::mix(h, c.encoding() as u64)
        })
    }

    /// Roots in the coefficient field, ascending by encoding, without multiplicity.
    pub fn roots(&self) -> Vec<Elem> {
        if self.is_constant() {
            return Vec::new();
        }
        let mut roots: Vec<Elem> = self
            .factorize(0)
            .expect("nonzero")
            .factors
            .iter()
            .filter(|(g, _)| g.degree() == Some(1))
            .map(|(g, _)| self.field.neg(g.coeff(0)))
            .collect();
        roots.sort();
        roots
    }
}
