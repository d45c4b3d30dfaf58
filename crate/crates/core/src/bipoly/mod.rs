//! Sparse bivariate polynomials over a finite field.
//!
//! Algorithms view a `BiPoly` as a polynomial in `y` whose coefficients are
//! univariate polynomials in `x` (see [`BiPoly::y_coeffs`]).

mod factor;
mod gcd;

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::gf::{Elem, Embedding, Field};
use crate::unipoly::UniPoly;

pub use factor::{bivariate_factorize, geometrically_irreducible, BiFactor, MAX_TOTAL_DEGREE};
pub use gcd::{bipoly_gcd, bivariate_resultant, eliminate, is_power_of_x_minus_y, strip_x_minus_y, Var};

#[derive(Clone)]
pub struct BiPoly {
    field: Arc<Field>,
    /// `(i, j) -> c` for the monomial `c x^i y^j`; no zero coefficients.
    terms: BTreeMap<(u32, u32), Elem>,
    deg_x: Option<u32>,
    deg_y: Option<u32>,
    total: Option<u32>,
}

impl PartialEq for BiPoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms && self.field.same(&other.field)
    }
}

impl Eq for BiPoly {}

impl fmt::Debug for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self} over {}", self.field)
    }
}

/// Terms in descending total degree, ties broken by descending `x` degree,
/// e.g. `x^2+x*y+y^2+1`.
impl fmt::Display for BiPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let mut keys: Vec<_> = self.terms.iter().collect();
        keys.sort_by(|((a, b), _), ((c, d), _)| (c + d, c).cmp(&(a + b, a)));
        for (n, (&(i, j), c)) in keys.into_iter().enumerate() {
            if n > 0 {
                write!(f, "+")?;
            }
            let mut factors = Vec::new();
            match i {
                0 => {}
                1 => factors.push("x".to_string()),
                _ => factors.push(format!("x^{i}")),
            }
            match j {
                0 => {}
                1 => factors.push("y".to_string()),
                _ => factors.push(format!("y^{j}")),
            }
            if factors.is_empty() {
                write!(f, "{c}")?;
            } else if c.encoding() == 1 {
                write!(f, "{}", factors.join("*"))?;
            } else {
                write!(f, "{c}*{}", factors.join("*"))?;
            }
        }
        Ok(())
    }
}

impl BiPoly {
    pub fn new(field: &Arc<Field>, terms: impl IntoIterator<Item = ((u32, u32), Elem)>) -> BiPoly {
        let mut map: BTreeMap<(u32, u32), Elem> = BTreeMap::new();
        for (k, c) in terms {
            let e = map.entry(k).or_insert(Elem::ZERO);
            *e = field.add(*e, c);
        }
        map.retain(|_, c| !c.is_zero());
        Self::from_map(field, map)
    }

    fn from_map(field: &Arc<Field>, terms: BTreeMap<(u32, u32), Elem>) -> BiPoly {
        let deg_x = terms.keys().map(|k| k.0).max();
        let deg_y = terms.keys().map(|k| k.1).max();
        let total = terms.keys().map(|k| k.0 + k.1).max();
        BiPoly {
            field: field.clone(),
            terms,
            deg_x,
            deg_y,
            total,
        }
    }

    pub fn zero(field: &Arc<Field>) -> BiPoly {
        Self::from_map(field, BTreeMap::new())
    }

    pub fn constant(field: &Arc<Field>, c: Elem) -> BiPoly {
        BiPoly::new(field, [((0, 0), c)])
    }

    pub fn one(field: &Arc<Field>) -> BiPoly {
        BiPoly::constant(field, Elem::ONE)
    }

    pub fn x(field: &Arc<Field>) -> BiPoly {
        BiPoly::new(field, [((1, 0), Elem::ONE)])
    }

    pub fn y(field: &Arc<Field>) -> BiPoly {
        BiPoly::new(field, [((0, 1), Elem::ONE)])
    }

    /// `x - y`.
    pub fn x_minus_y(field: &Arc<Field>) -> BiPoly {
        BiPoly::new(field, [((1, 0), Elem::ONE), ((0, 1), field.neg(Elem::ONE))])
    }

    /// Builds from integer-encoded triples `(i, j, c)`.
    pub fn from_triples(field: &Arc<Field>, triples: &[(u32, u32, u32)]) -> Result<BiPoly> {
        let terms = triples
            .iter()
            .map(|&(i, j, c)| Ok(((i, j), field.elem(c as u64)?)))
            .collect::<Result<Vec<_>>>()?;
        Ok(BiPoly::new(field, terms))
    }

    /// Sorted `(i, j, coefficient-encoding)` triples.
    pub fn triples(&self) -> Vec<(u32, u32, u32)> {
        self.terms
            .iter()
            .map(|(&(i, j), c)| (i, j, c.encoding()))
            .collect()
    }

    /// `f(x)` viewed in two variables.
    pub fn from_x(f: &UniPoly) -> BiPoly {
        BiPoly::new(
            f.field(),
            f.coeffs()
                .iter()
                .enumerate()
                .map(|(i, &c)| ((i as u32, 0), c)),
        )
    }

    /// `f(y)` viewed in two variables.
    pub fn from_y(f: &UniPoly) -> BiPoly {
        BiPoly::from_x(f).swap()
    }

    /// Builds `sum_j coeffs[j](x) y^j`.
    pub fn from_y_coeffs(field: &Arc<Field>, coeffs: &[UniPoly]) -> BiPoly {
        BiPoly::new(
            field,
            coeffs.iter().enumerate().flat_map(|(j, c)| {
                c.coeffs()
                    .iter()
                    .enumerate()
                    .map(move |(i, &a)| ((i as u32, j as u32), a))
            }),
        )
    }

    /// Coefficients in `y`, each a polynomial in `x`; empty for zero.
    pub fn y_coeffs(&self) -> Vec<UniPoly> {
        let Some(dy) = self.deg_y else {
            return Vec::new();
        };
        let mut rows = vec![Vec::new(); dy as usize + 1];
        for (&(i, j), &c) in &self.terms {
            let row = &mut rows[j as usize];
            if row.len() <= i as usize {
                row.resize(i as usize + 1, Elem::ZERO);
            }
            row[i as usize] = c;
        }
        rows.into_iter()
            .map(|r| UniPoly::new(&self.field, r))
            .collect()
    }

    pub fn field(&self) -> &Arc<Field> {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<(u32, u32), Elem> {
        &self.terms
    }

    pub fn coeff(&self, i: u32, j: u32) -> Elem {
        self.terms.get(&(i, j)).copied().unwrap_or(Elem::ZERO)
    }

    pub fn deg_x(&self) -> Option<u32> {
        self.deg_x
    }

    pub fn deg_y(&self) -> Option<u32> {
        self.deg_y
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.total
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// True for zero and nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.total.unwrap_or(0) == 0
    }

    /// Leading term in the lexicographic order with `y > x`.
    pub fn leading_term(&self) -> Option<((u32, u32), Elem)> {
        self.terms
            .iter()
            .max_by_key(|(&(i, j), _)| (j, i))
            .map(|(&k, &c)| (k, c))
    }

    /// Leading coefficient in `y`, a polynomial in `x`.
    pub fn lc_y(&self) -> UniPoly {
        self.y_coeffs().pop().unwrap_or_else(|| UniPoly::zero(&self.field))
    }

    /// Scales so that the leading term (lexicographic, `y > x`) has coefficient 1.
    pub fn normalize(&self) -> BiPoly {
        match self.leading_term() {
            Some((_, c)) if c != Elem::ONE => {
                self.scale(self.field.inv(c).expect("nonzero coefficient"))
            }
            _ => self.clone(),
        }
    }

    fn check(&self, other: &BiPoly) {
        assert!(self.field.same(&other.field), "field mismatch");
    }

    pub fn add(&self, other: &BiPoly) -> BiPoly {
        self.check(other);
        BiPoly::new(
            &self.field,
            self.terms
                .iter()
                .chain(other.terms.iter())
                .map(|(&k, &c)| (k, c)),
        )
    }

    pub fn neg(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::new(f, self.terms.iter().map(|(&k, &c)| (k, f.neg(c))))
    }

    pub fn sub(&self, other: &BiPoly) -> BiPoly {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: Elem) -> BiPoly {
        let f = &self.field;
        BiPoly::new(f, self.terms.iter().map(|(&k, &a)| (k, f.mul(a, c))))
    }

    pub fn mul(&self, other: &BiPoly) -> BiPoly {
        self.check(other);
        let f = &self.field;
        let mut out: BTreeMap<(u32, u32), Elem> = BTreeMap::new();
        for (&(i, j), &a) in &self.terms {
            for (&(k, l), &b) in &other.terms {
                let e = out.entry((i + k, j + l)).or_insert(Elem::ZERO);
                *e = f.add(*e, f.mul(a, b));
            }
        }
        out.retain(|_, c| !c.is_zero());
        Self::from_map(f, out)
    }

    pub fn pow(&self, e: u32) -> BiPoly {
        (0..e).fold(BiPoly::one(&self.field), |acc, _| acc.mul(self))
    }

    /// Exchanges `x` and `y`.
    pub fn swap(&self) -> BiPoly {
        BiPoly::new(&self.field, self.terms.iter().map(|(&(i, j), &c)| ((j, i), c)))
    }

    /// `F(a, y)` as a polynomial in `y`.
    pub fn eval_x(&self, a: Elem) -> UniPoly {
        let coeffs = self.y_coeffs().iter().map(|c| c.eval(a)).collect();
        UniPoly::new(&self.field, coeffs)
    }

    /// `F(x, b)` as a polynomial in `x`.
    pub fn eval_y(&self, b: Elem) -> UniPoly {
        self.swap().eval_x(b)
    }

    pub fn eval(&self, a: Elem, b: Elem) -> Elem {
        self.eval_x(a).eval(b)
    }

    /// `F(x + c, y)`.
    pub fn shift_x(&self, c: Elem) -> BiPoly {
        let coeffs: Vec<UniPoly> = self.y_coeffs().iter().map(|r| r.taylor_shift(c)).collect();
        BiPoly::from_y_coeffs(&self.field, &coeffs)
    }

    pub fn dx(&self) -> BiPoly {
        let f = &self.field;
        BiPoly::new(
            f,
            self.terms
                .iter()
                .filter(|(&(i, _), _)| i > 0)
                .map(|(&(i, j), &c)| ((i - 1, j), f.mul(c, f.from_int(i as i64)))),
        )
    }

    pub fn dy(&self) -> BiPoly {
        self.swap().dx().swap()
    }

    /// Exact quotient in `F_q[x, y]`, or `None` if `divisor` does not divide.
    pub fn div_exact(&self, divisor: &BiPoly) -> Result<Option<BiPoly>> {
        self.check(divisor);
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let f = &self.field;
        let d = divisor.y_coeffs();
        let dy = d.len() - 1;
        let lc = &d[dy];
        let mut rem = self.y_coeffs();
        if rem.is_empty() {
            return Ok(Some(BiPoly::zero(f)));
        }
        if rem.len() <= dy {
            return Ok(None);
        }
        let mut quo = vec![UniPoly::zero(f); rem.len() - dy];
        for top in (dy..rem.len()).rev() {
            if rem[top].is_zero() {
                continue;
            }
            let Some(c) = rem[top].div_exact(lc)? else {
                return Ok(None);
            };
            for (i, di) in d.iter().enumerate() {
                let idx = top - dy + i;
                rem[idx] = rem[idx].sub(&c.mul(di));
            }
            quo[top - dy] = c;
        }
        if rem.iter().any(|r| !r.is_zero()) {
            return Ok(None);
        }
        Ok(Some(BiPoly::from_y_coeffs(f, &quo)))
    }

    /// Monic gcd of the `y`-coefficients (the content over `F_q[x]`).
    pub fn content_x(&self) -> UniPoly {
        self.y_coeffs()
            .iter()
            .fold(UniPoly::zero(&self.field), |acc, c| acc.gcd(c))
    }

    /// `self` divided by its `x`-content.
    pub fn primitive_part_y(&self) -> BiPoly {
        if self.is_zero() {
            return self.clone();
        }
        let c = self.content_x();
        let coeffs: Vec<UniPoly> = self
            .y_coeffs()
            .iter()
            .map(|r| r.div_rem(&c).expect("nonzero content").0)
            .collect();
        BiPoly::from_y_coeffs(&self.field, &coeffs)
    }

    /// `p`-th root of a polynomial in `x^p, y^p`.
    pub fn pth_root(&self) -> Option<BiPoly> {
        let f = &self.field;
        let p = f.characteristic();
        if self.terms.keys().any(|&(i, j)| i % p != 0 || j % p != 0) {
            return None;
        }
        Some(BiPoly::new(
            f,
            self.terms
                .iter()
                .map(|(&(i, j), &c)| ((i / p, j / p), f.pth_root(c))),
        ))
    }

    /// Applies `c -> c^(p^j)` to every coefficient.
    pub fn frobenius(&self, j: u32) -> BiPoly {
        let f = &self.field;
        BiPoly::new(f, self.terms.iter().map(|(&k, &c)| (k, f.frobenius(c, j))))
    }

    pub fn embed(&self, emb: &Embedding) -> BiPoly {
        assert!(self.field.same(emb.source()), "field mismatch");
        BiPoly::new(
            emb.target(),
            self.terms.iter().map(|(&k, &c)| (k, emb.apply(c))),
        )
    }

    /// Pulls back along an embedding when every coefficient lies in the image.
    pub fn restrict(&self, emb: &Embedding) -> Option<BiPoly> {
        assert!(self.field.same(emb.target()), "field mismatch");
        let terms = self
            .terms
            .iter()
            .map(|(&k, &c)| emb.preimage(c).map(|a| (k, a)))
            .collect::<Option<Vec<_>>>()?;
        Some(BiPoly::new(emb.source(), terms))
    }
}

/// The difference quotient: `f(x) - f(y) = (x - y) tilde(f)(x, y)`.
pub fn tilde(f: &UniPoly) -> Result<BiPoly> {
    match f.degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(_) => Ok(difference_quotient(f)),
    }
}

/// Like [`tilde`], but constants map to zero.
pub(crate) fn difference_quotient(f: &UniPoly) -> BiPoly {
    let terms = f.coeffs().iter().enumerate().skip(1).flat_map(|(i, &a)| {
        (0..i as u32).map(move |u| ((u, i as u32 - 1 - u), a))
    });
    BiPoly::new(f.field(), terms)
}
