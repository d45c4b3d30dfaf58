//! Bivariate gcd by the subresultant remainder sequence over `F_q[x]`, and
//! variable elimination by fraction-free Sylvester determinants.

use super::BiPoly;
use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Var {
    X,
    Y,
}

type Row = Vec<UniPoly>;

fn deg(a: &Row) -> usize {
    a.len() - 1
}

fn trim(mut a: Row) -> Row {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn div_coeffs(a: &Row, d: &UniPoly) -> Row {
    a.iter()
        .map(|c| {
            c.div_exact(d)
                .expect("nonzero divisor")
                .expect("subresultant division is exact")
        })
        .collect()
}

/// Pseudo-remainder `lc(b)^(deg a - deg b + 1) a mod b` in `F_q[x][y]`.
fn prem(a: &Row, b: &Row) -> Row {
    let db = deg(b);
    let lc = b[db].clone();
    let mut r = a.clone();
    let mut steps = r.len() - db;
    while r.len() > db {
        let top = r.len() - 1;
        let t = r[top].clone();
        for c in r.iter_mut() {
            *c = c.mul(&lc);
        }
        for (i, bi) in b.iter().enumerate() {
            let idx = top - db + i;
            r[idx] = r[idx].sub(&t.mul(bi));
        }
        r = trim(r);
        steps -= 1;
    }
    // pad the power of lc to exactly deg a - deg b + 1 multiplications
    let pad = lc.pow(steps as u64);
    trim(r.iter().map(|c| c.mul(&pad)).collect())
}

fn content(a: &Row) -> UniPoly {
    let field = a[0].field().clone();
    a.iter().fold(UniPoly::zero(&field), |acc, c| acc.gcd(c))
}

/// Greatest common divisor in `F_q[x, y]`, normalized so that the leading
/// term in the lexicographic order `y > x` has coefficient 1.
pub fn bipoly_gcd(f: &BiPoly, g: &BiPoly) -> Result<BiPoly> {
    f.check(g);
    let field = f.field().clone();
    if f.is_zero() && g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if f.is_zero() {
        return Ok(g.normalize());
    }
    if g.is_zero() {
        return Ok(f.normalize());
    }
    let (fa, ga) = (f.y_coeffs(), g.y_coeffs());
    let (cf, cg) = (content(&fa), content(&ga));
    let c = cf.gcd(&cg);
    let mut a = div_coeffs(&fa, &cf);
    let mut b = div_coeffs(&ga, &cg);
    if deg(&a) < deg(&b) {
        std::mem::swap(&mut a, &mut b);
    }
    let prim = if deg(&b) == 0 {
        vec![UniPoly::one(&field)]
    } else {
        let mut gg = UniPoly::one(&field);
        let mut h = UniPoly::one(&field);
        loop {
            let delta = (deg(&a) - deg(&b)) as u64;
            let r = prem(&a, &b);
            if r.is_empty() {
                let cb = content(&b);
                break div_coeffs(&b, &cb);
            }
            if deg(&r) == 0 {
                break vec![UniPoly::one(&field)];
            }
            let divisor = gg.mul(&h.pow(delta));
            a = b;
            b = div_coeffs(&r, &divisor);
            gg = a[deg(&a)].clone();
            h = match delta {
                0 => h,
                1 => gg.clone(),
                _ => gg
                    .pow(delta)
                    .div_exact(&h.pow(delta - 1))?
                    .expect("subresultant division is exact"),
            };
        }
    };
    let prim = BiPoly::from_y_coeffs(&field, &prim);
    Ok(prim.mul(&BiPoly::from_x(&c)).normalize())
}

/// Divides out the largest power of `x - y`; returns the cofactor and the exponent.
pub fn strip_x_minus_y(f: &BiPoly) -> Result<(BiPoly, u32)> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let d = BiPoly::x_minus_y(f.field());
    let mut cur = f.clone();
    let mut m = 0;
    while let Some(next) = cur.div_exact(&d)? {
        cur = next;
        m += 1;
    }
    Ok((cur, m))
}

/// True iff `f = c (x - y)^m` for a nonzero constant `c` and some `m >= 0`.
pub fn is_power_of_x_minus_y(f: &BiPoly) -> Result<bool> {
    Ok(strip_x_minus_y(f)?.0.is_constant())
}

/// Determinant of a matrix over `F_q[x]` by Bareiss' fraction-free elimination.
fn bareiss_det(mut m: Vec<Vec<UniPoly>>) -> UniPoly {
    let n = m.len();
    let field = m[0][0].field().clone();
    let mut negate = false;
    let mut prev = UniPoly::one(&field);
    for k in 0..n.saturating_sub(1) {
        if m[k][k].is_zero() {
            let Some(r) = (k + 1..n).find(|&r| !m[r][k].is_zero()) else {
                return UniPoly::zero(&field);
            };
            m.swap(k, r);
            negate = !negate;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = m[k][k].mul(&m[i][j]).sub(&m[i][k].mul(&m[k][j]));
                m[i][j] = v
                    .div_exact(&prev)
                    .expect("nonzero pivot")
                    .expect("Bareiss division is exact");
            }
            m[i][k] = UniPoly::zero(&field);
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    if negate {
        det.neg()
    } else {
        det
    }
}

/// `Res_y(f, g)` as a polynomial in `x`.
fn resultant_y(f: &BiPoly, g: &BiPoly) -> UniPoly {
    let field = f.field().clone();
    let (fa, ga) = (f.y_coeffs(), g.y_coeffs());
    let (m, n) = (deg(&fa), deg(&ga));
    if m == 0 && n == 0 {
        return UniPoly::one(&field);
    }
    if n == 0 {
        return ga[0].pow(m as u64);
    }
    if m == 0 {
        return fa[0].pow(n as u64);
    }
    let size = m + n;
    let mut mat = vec![vec![UniPoly::zero(&field); size]; size];
    for i in 0..n {
        for j in 0..=m {
            mat[i][i + j] = fa[m - j].clone();
        }
    }
    for i in 0..m {
        for j in 0..=n {
            mat[n + i][i + j] = ga[n - j].clone();
        }
    }
    bareiss_det(mat)
}

/// Resultant of `f` and `g` with respect to `var`, as a polynomial in the
/// other variable. No factors are removed first.
pub fn bivariate_resultant(f: &BiPoly, g: &BiPoly, var: Var) -> Result<UniPoly> {
    f.check(g);
    if f.is_zero() || g.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    Ok(match var {
        Var::Y => resultant_y(f, g),
        Var::X => resultant_y(&f.swap(), &g.swap()),
    })
}

/// Eliminates `var` from the system `f = g = 0` after dividing both inputs
/// by their maximal powers of `x - y`. The result is the resultant with
/// respect to `var`, a polynomial in the other variable.
pub fn eliminate(f: &BiPoly, g: &BiPoly, var: Var) -> Result<UniPoly> {
    f.check(g);
    let (fs, _) = strip_x_minus_y(f)?;
    let (gs, _) = strip_x_minus_y(g)?;
    let r = bivariate_resultant(&fs, &gs, var)?;
    if r.is_zero() {
        let common = bipoly_gcd(&fs, &gs)?;
        return Err(Error::ResidualCommonFactor(common.to_string()));
    }
    Ok(r)
}
