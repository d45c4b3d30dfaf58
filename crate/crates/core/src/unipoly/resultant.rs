//! Resultants, discriminants and characteristic polynomials.
//!
//! Convention: `Res(f, g) = lc(f)^deg(g) * prod g(a)` over the roots `a` of
//! `f`, counted with multiplicity.

use std::sync::Arc;

use super::UniPoly;
use crate::error::{Error, Result};
use crate::gf::{Elem, Field};

fn sign(field: &Field, negative: bool) -> Elem {
    if negative {
        field.neg(Elem::ONE)
    } else {
        Elem::ONE
    }
}

/// Resultant by the Euclidean remainder sequence. A zero argument paired with
/// a nonconstant polynomial gives 0; paired with a nonzero constant it gives 1.
pub fn resultant(f: &UniPoly, g: &UniPoly) -> Result<Elem> {
    let field = f.field().clone();
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_zero() || g.is_zero() {
        let other = if f.is_zero() { g } else { f };
        return Ok(if other.is_constant() { Elem::ONE } else { Elem::ZERO });
    }
    let mut a = f.clone();
    let mut b = g.clone();
    let mut acc = Elem::ONE;
    loop {
        let da = a.degree().unwrap() as u64;
        let db = b.degree().unwrap() as u64;
        if db == 0 {
            return Ok(field.mul(acc, field.pow(b.lc(), da)));
        }
        if da == 0 {
            return Ok(field.mul(acc, field.pow(a.lc(), db)));
        }
        let r = a.rem(&b)?;
        if r.is_zero() {
            return Ok(Elem::ZERO);
        }
        let dr = r.degree().unwrap() as u64;
        // Res(a, b) = (-1)^(da db) lc(b)^(da - dr) Res(b, r)
        acc = field.mul(acc, sign(&field, da * db % 2 == 1));
        acc = field.mul(acc, field.pow(b.lc(), da - dr));
        a = b;
        b = r;
    }
}

/// Discriminant `(-1)^(n(n-1)/2) lc^(n-2-deg f') Res(f, f')`, valid in every
/// characteristic; zero exactly when `f` has a repeated root.
pub fn discriminant(f: &UniPoly) -> Result<Elem> {
    let field = f.field().clone();
    let n = f.degree().ok_or(Error::ZeroPolynomial)?;
    if n == 0 {
        return Err(Error::ConstantPolynomial);
    }
    if n == 1 {
        return Ok(Elem::ONE);
    }
    let df = f.derivative();
    let Some(m) = df.degree() else {
        return Ok(Elem::ZERO);
    };
    let res = resultant(f, &df)?;
    let s = sign(&field, (n * (n - 1) / 2) % 2 == 1);
    let lc = f.lc();
    // exponent n - 2 - m is at least -1
    let scale = if n >= m + 2 {
        field.pow(lc, (n - 2 - m) as u64)
    } else {
        field.inv(lc)?
    };
    Ok(field.mul(s, field.mul(scale, res)))
}

/// Characteristic polynomial `det(S I - M)` via reduction to Hessenberg form.
pub fn charpoly(field: &Arc<Field>, matrix: &[Vec<Elem>]) -> UniPoly {
    let n = matrix.len();
    let mut h: Vec<Vec<Elem>> = matrix.to_vec();
    let f = field.as_ref();
    for m in 1..n.saturating_sub(1) {
        let Some(i) = (m..n).find(|&i| !h[i][m - 1].is_zero()) else {
            continue;
        };
        if i != m {
            h.swap(i, m);
            for row in h.iter_mut() {
                row.swap(i, m);
            }
        }
        let t = f.inv(h[m][m - 1]).expect("nonzero pivot");
        for j in m + 1..n {
            let u = f.mul(h[j][m - 1], t);
            if u.is_zero() {
                continue;
            }
            for c in 0..n {
                let v = f.mul(u, h[m][c]);
                h[j][c] = f.sub(h[j][c], v);
            }
            for row in h.iter_mut() {
                let v = f.mul(u, row[j]);
                row[m] = f.add(row[m], v);
            }
        }
    }
    // 1-based recurrence on the Hessenberg matrix
    let at = |i: usize, j: usize| h[i - 1][j - 1];
    let x = UniPoly::x(field);
    let mut p: Vec<UniPoly> = vec![UniPoly::one(field)];
    for m in 1..=n {
        let lin = x.sub(&UniPoly::constant(field, at(m, m)));
        let mut pm = lin.mul(&p[m - 1]);
        let mut t = Elem::ONE;
        for i in 1..m {
            t = f.mul(t, at(m - i + 1, m - i));
            let c = f.mul(at(m - i, m), t);
            if !c.is_zero() {
                pm = pm.sub(&p[m - i - 1].scale(c));
            }
        }
        p.push(pm);
    }
    p.pop().unwrap()
}

/// `Res_T(r(T), S + h(T))` as a polynomial in `S`, computed as a scaled
/// characteristic polynomial of multiplication by `-h` modulo `r`.
pub fn resultant_shifted(r: &UniPoly, h: &UniPoly) -> Result<UniPoly> {
    let field = r.field().clone();
    let n = r.degree().ok_or(Error::ZeroPolynomial)?;
    let dg = h.degree().filter(|&d| d >= 1).unwrap_or(0) as u64;
    let scale = field.pow(r.lc(), dg);
    let rm = r.monic();
    let minus_h = h.neg().rem(&rm)?;
    let mut matrix = vec![vec![Elem::ZERO; n]; n];
    let mut col = minus_h;
    for j in 0..n {
        for (i, row) in matrix.iter_mut().enumerate() {
            row[j] = col.coeff(i);
        }
        col = col.shl(1).rem(&rm)?;
    }
    Ok(charpoly(&field, &matrix).scale(scale))
}
