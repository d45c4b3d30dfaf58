//! Factorization in `F_q[x, y]`.
//!
//! After removing contents, repeated factors and inseparable parts, a
//! polynomial separable in `y` is specialized at a point `x = x0` where it
//! stays squarefree of full `y`-degree. The univariate factors are lifted
//! modulo powers of `x - x0` and recombined by exhaustive subset search with
//! exact trial division. When the base field has no usable point the work is
//! done in an extension and the factors are collected into Frobenius orbits.

use std::cmp::Ordering;

use itertools::Itertools;

use super::{bipoly_gcd, BiPoly};
use crate::error::{Error, Result};
use crate::gf::{extension, prime_factors, Elem, Embedding};
use crate::unipoly::UniPoly;

/// Largest total degree accepted by [`bivariate_factorize`].
pub const MAX_TOTAL_DEGREE: u32 = 12;

/// An irreducible factor with its multiplicity.
pub type BiFactor = (BiPoly, usize);

fn check_degree(f: &BiPoly) -> Result<u32> {
    match f.total_degree() {
        None => Err(Error::ZeroPolynomial),
        Some(0) => Err(Error::ConstantPolynomial),
        Some(t) if t > MAX_TOTAL_DEGREE => Err(Error::OverContract {
            what: "bivariate total degree",
            got: t as u64,
            limit: MAX_TOTAL_DEGREE as u64,
        }),
        Some(t) => Ok(t),
    }
}

fn canonical_cmp(a: &BiPoly, b: &BiPoly) -> Ordering {
    (a.total_degree(), a.deg_y(), a.triples()).cmp(&(b.total_degree(), b.deg_y(), b.triples()))
}

/// Irreducible factors over the coefficient field with multiplicities.
/// Factors are normalized as in [`BiPoly::normalize`], so `f` equals their
/// product up to a nonzero constant.
pub fn bivariate_factorize(f: &BiPoly, seed: u64) -> Result<Vec<BiFactor>> {
    check_degree(f)?;
    let mut irreducibles = Vec::new();
    collect(f, seed, &mut irreducibles)?;
    irreducibles.sort_by(canonical_cmp);
    let mut rest = f.clone();
    let mut out = Vec::with_capacity(irreducibles.len());
    for h in irreducibles {
        let mut m = 0;
        while let Some(q) = rest.div_exact(&h)? {
            rest = q;
            m += 1;
        }
        out.push((h, m));
    }
    debug_assert!(rest.is_constant());
    Ok(out)
}

/// True iff `f` stays irreducible over every finite extension of its field.
///
/// A polynomial irreducible over `F_q` splits over the closure into `r`
/// Frobenius-conjugate factors defined over `F_{q^r}`, with `r` dividing the
/// total degree. A rational point lies on all of them at once, so a
/// nonsingular rational point rules out every `r > 1`. Failing that, `F_q`
/// and `F_{q^r}` are tested for the primes `r` dividing the total degree.
pub fn geometrically_irreducible(f: &BiPoly) -> Result<bool> {
    let total = check_degree(f)?;
    if total == 1 {
        return Ok(true);
    }
    if !irreducible_over_field(f)? {
        return Ok(false);
    }
    if has_smooth_rational_point(f) {
        return Ok(true);
    }
    for r in prime_factors(total as u64) {
        let (_, emb) = extension(f.field(), r as u32)?;
        if !irreducible_over_field(&f.embed(&emb))? {
            return Ok(false);
        }
    }
    Ok(true)
}

const POINT_SEARCH_LIMIT: usize = 4096;

fn has_smooth_rational_point(f: &BiPoly) -> bool {
    let (fx, fy) = (f.dx(), f.dy());
    f.field().elements().take(POINT_SEARCH_LIMIT).any(|a| {
        let slice = f.eval_x(a);
        !slice.is_zero()
            && slice
                .roots()
                .into_iter()
                .any(|b| !fx.eval(a, b).is_zero() || !fy.eval(a, b).is_zero())
    })
}

fn irreducible_over_field(f: &BiPoly) -> Result<bool> {
    let factors = bivariate_factorize(f, 0)?;
    Ok(factors.len() == 1 && factors[0].1 == 1)
}

fn push_unique(out: &mut Vec<BiPoly>, h: BiPoly) {
    if !out.contains(&h) {
        out.push(h);
    }
}

/// Appends the distinct irreducible factors of `f` to `out`.
fn collect(f: &BiPoly, seed: u64, out: &mut Vec<BiPoly>) -> Result<()> {
    if f.is_constant() {
        return Ok(());
    }
    let cx = f.content_x();
    if !cx.is_constant() {
        for (g, _) in cx.factorize(seed)?.factors {
            push_unique(out, BiPoly::from_x(&g).normalize());
        }
        return collect(&f.primitive_part_y(), seed, out);
    }
    let swapped = f.swap();
    let cy = swapped.content_x();
    if !cy.is_constant() {
        for (g, _) in cy.factorize(seed)?.factors {
            push_unique(out, BiPoly::from_y(&g).normalize());
        }
        return collect(&swapped.primitive_part_y().swap(), seed, out);
    }
    let fy = f.dy();
    if fy.is_zero() {
        if f.dx().is_zero() {
            let root = f.pth_root().expect("polynomial in x^p and y^p");
            return collect(&root, seed, out);
        }
        let mut inner = Vec::new();
        collect(&swapped, seed, &mut inner)?;
        for h in inner {
            push_unique(out, h.swap().normalize());
        }
        return Ok(());
    }
    let g = bipoly_gcd(f, &fy)?;
    if !g.is_constant() {
        collect(&g, seed, out)?;
        let rest = f.div_exact(&g)?.expect("gcd divides");
        return collect(&rest, seed, out);
    }
    for h in split_separable(f, seed)? {
        push_unique(out, h);
    }
    Ok(())
}

/// Factors a primitive, squarefree `f` with nonzero discriminant in `y`.
fn split_separable(f: &BiPoly, seed: u64) -> Result<Vec<BiPoly>> {
    if f.deg_y() == Some(1) {
        return Ok(vec![f.normalize()]);
    }
    if let Some(x0) = good_point(f) {
        return hensel_split(f, x0, seed);
    }
    let base = f.field();
    for e in 2.. {
        let (_, emb) = extension(base, e)?;
        let fl = f.embed(&emb);
        if let Some(x0) = good_point(&fl) {
            let factors = hensel_split(&fl, x0, seed)?;
            return Ok(descend(&factors, &emb));
        }
    }
    unreachable!()
}

/// First `x0` (in encoding order) keeping the `y`-degree with `f(x0, y)` squarefree.
fn good_point(f: &BiPoly) -> Option<Elem> {
    let lc = f.lc_y();
    f.field().elements().find(|&a| {
        if lc.eval(a).is_zero() {
            return false;
        }
        let u = f.eval_x(a);
        u.gcd(&u.derivative()).is_one()
    })
}

/// Multiplies the factors in each Frobenius orbit and pulls the products
/// back to the source field of `emb`.
fn descend(factors: &[BiPoly], emb: &Embedding) -> Vec<BiPoly> {
    let k = emb.source().degree();
    let mut used = vec![false; factors.len()];
    let mut out = Vec::new();
    for i in 0..factors.len() {
        if used[i] {
            continue;
        }
        used[i] = true;
        let mut prod = factors[i].clone();
        let mut cur = factors[i].frobenius(k);
        while cur != factors[i] {
            let j = (0..factors.len())
                .find(|&j| !used[j] && factors[j] == cur)
                .expect("conjugate factor present");
            used[j] = true;
            prod = prod.mul(&cur);
            cur = cur.frobenius(k);
        }
        out.push(
            prod.normalize()
                .restrict(emb)
                .expect("orbit product is defined over the base field"),
        );
    }
    out
}

fn x_power(f: &BiPoly, k: u32) -> BiPoly {
    BiPoly::new(f.field(), [((k, 0), Elem::ONE)])
}

/// Drops all terms divisible by `x^n`.
fn trunc_x(f: &BiPoly, n: usize) -> BiPoly {
    BiPoly::new(
        f.field(),
        f.terms()
            .iter()
            .filter(|(&(i, _), _)| (i as usize) < n)
            .map(|(&k, &c)| (k, c)),
    )
}

/// Coefficient of `x^k` as a polynomial in `y`.
fn x_coeff(f: &BiPoly, k: usize) -> UniPoly {
    f.swap().y_coeffs().get(k).cloned().unwrap_or_else(|| UniPoly::zero(f.field()))
}

fn hensel_split(f: &BiPoly, x0: Elem, seed: u64) -> Result<Vec<BiPoly>> {
    let field = f.field().clone();
    let g = f.shift_x(x0);
    let fac = g.eval_x(Elem::ZERO).factorize(seed)?;
    if fac.factors.len() == 1 {
        return Ok(vec![f.normalize()]);
    }
    let mut lifted: Vec<BiPoly> = fac.factors.iter().map(|(h, _)| BiPoly::from_y(h)).collect();
    let lc = g.lc_y();
    let prec = g.deg_x().unwrap_or(0) as usize + lc.degree().unwrap_or(0) + 1;
    let xn = UniPoly::monomial(&field, Elem::ONE, prec);
    let lc_inv = lc.inv_mod(&xn).expect("leading coefficient is a unit at 0");
    let monic = trunc_x(&BiPoly::from_x(&lc_inv).mul(&g), prec);
    lift(&monic, &mut lifted, prec)?;
    let parts = recombine(&g, &lifted, prec)?;
    let back = field.neg(x0);
    Ok(parts.iter().map(|p| p.shift_x(back).normalize()).collect())
}

/// Lifts `h = prod factors (mod x)` to a factorization modulo `x^prec`.
/// All polynomials are monic in `y`.
fn lift(h: &BiPoly, factors: &mut [BiPoly], prec: usize) -> Result<()> {
    let field = h.field().clone();
    let base: Vec<UniPoly> = factors.iter().map(|g| g.eval_x(Elem::ZERO)).collect();
    let cofactor_inverses: Vec<UniPoly> = (0..base.len())
        .map(|i| {
            let others = base
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != i)
                .fold(UniPoly::one(&field), |acc, (_, g)| acc.mul(g));
            others.inv_mod(&base[i]).expect("coprime factors")
        })
        .collect();
    for k in 1..prec {
        let prod = factors
            .iter()
            .fold(BiPoly::one(&field), |acc, g| trunc_x(&acc.mul(g), k + 1));
        let err = x_coeff(&h.sub(&prod), k);
        if err.is_zero() {
            continue;
        }
        let xk = x_power(h, k as u32);
        for (i, g) in factors.iter_mut().enumerate() {
            let delta = err.mul(&cofactor_inverses[i]).rem(&base[i])?;
            *g = g.add(&BiPoly::from_y(&delta).mul(&xk));
        }
    }
    Ok(())
}

/// Finds the true factors of `g` among products of lifted factors.
fn recombine(g: &BiPoly, lifted: &[BiPoly], prec: usize) -> Result<Vec<BiPoly>> {
    let mut rest = g.clone();
    let mut pool = lifted.to_vec();
    let mut out = Vec::new();
    let mut size = 1;
    'grow: while 2 * size <= pool.len() {
        for subset in (0..pool.len()).combinations(size) {
            let lc = BiPoly::from_x(&rest.lc_y());
            let cand = subset
                .iter()
                .fold(lc, |acc, &i| trunc_x(&acc.mul(&pool[i]), prec))
                .primitive_part_y();
            if let Some(q) = rest.div_exact(&cand)? {
                out.push(cand);
                rest = q;
                pool = pool
                    .into_iter()
                    .enumerate()
                    .filter(|(i, _)| !subset.contains(i))
                    .map(|(_, p)| p)
                    .collect();
                continue 'grow;
            }
        }
        size += 1;
    }
    out.push(rest);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use std::sync::Arc;

    fn bp(field: &Arc<Field>, t: &[(u32, u32, u32)]) -> BiPoly {
        BiPoly::from_triples(field, t).unwrap()
    }

    fn reassemble(field: &Arc<Field>, factors: &[BiFactor]) -> BiPoly {
        factors
            .iter()
            .fold(BiPoly::one(field), |acc, (h, m)| acc.mul(&h.pow(*m as u32)))
    }

    fn assert_factorization(f: &BiPoly, factors: &[BiFactor]) {
        assert_eq!(reassemble(f.field(), factors), f.normalize(), "{f}");
        for (h, _) in factors {
            let again = bivariate_factorize(h, 7).unwrap();
            assert_eq!(again, vec![(h.clone(), 1)], "{h} should be irreducible");
        }
    }

    #[test]
    fn product_of_parallel_lines() {
        let f2 = Field::new(2, 1, None).unwrap();
        let a = bp(&f2, &[(1, 0, 1), (0, 1, 1)]);
        let b = bp(&f2, &[(1, 0, 1), (0, 1, 1), (0, 0, 1)]);
        let f = a.mul(&b);
        let factors = bivariate_factorize(&f, 0).unwrap();
        assert_eq!(factors.len(), 2);
        assert!(factors.iter().all(|(h, m)| h.total_degree() == Some(1) && *m == 1));
        assert_factorization(&f, &factors);
    }

    #[test]
    fn square_in_characteristic_two() {
        let f2 = Field::new(2, 1, None).unwrap();
        let f = bp(&f2, &[(2, 0, 1), (0, 2, 1)]);
        let factors = bivariate_factorize(&f, 0).unwrap();
        assert_eq!(factors, vec![(bp(&f2, &[(1, 0, 1), (0, 1, 1)]), 2)]);
        assert!(!geometrically_irreducible(&f).unwrap());
    }

    #[test]
    fn conic_with_constant_term() {
        let f2 = Field::new(2, 1, None).unwrap();
        let f = bp(&f2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1), (0, 0, 1)]);
        assert_eq!(bivariate_factorize(&f, 0).unwrap(), vec![(f.clone(), 1)]);
        assert!(geometrically_irreducible(&f).unwrap());
    }

    #[test]
    fn conjugate_lines_over_f4() {
        // x^2 + xy + y^2 is irreducible over F_2 but splits over F_4
        let f2 = Field::new(2, 1, None).unwrap();
        let f = bp(&f2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)]);
        assert_eq!(bivariate_factorize(&f, 0).unwrap().len(), 1);
        assert!(!geometrically_irreducible(&f).unwrap());
        let (_, emb) = extension(&f2, 2).unwrap();
        let over_f4 = bivariate_factorize(&f.embed(&emb), 0).unwrap();
        assert_eq!(over_f4.len(), 2);
    }

    #[test]
    fn lines_always_geometrically_irreducible() {
        let f5 = Field::new(5, 1, None).unwrap();
        for s in 0..5 {
            let f = bp(&f5, &[(1, 0, 1), (0, 1, 1), (0, 0, s)]);
            assert!(geometrically_irreducible(&f).unwrap());
        }
    }

    #[test]
    fn contents_and_pure_powers() {
        let f3 = Field::new(3, 1, None).unwrap();
        // (x^2 + 1) (y + 2)^3 (x y + 1) x^3
        let f = bp(&f3, &[(2, 0, 1), (0, 0, 1)])
            .mul(&bp(&f3, &[(0, 1, 1), (0, 0, 2)]).pow(3))
            .mul(&bp(&f3, &[(1, 1, 1), (0, 0, 1)]))
            .mul(&BiPoly::x(&f3).pow(3));
        let factors = bivariate_factorize(&f, 3).unwrap();
        let mults: Vec<usize> = factors.iter().map(|(_, m)| *m).collect();
        assert_eq!(factors.len(), 4);
        assert_eq!(mults.iter().sum::<usize>(), 8);
        assert_factorization(&f, &factors);
    }

    #[test]
    fn random_products_reassemble() {
        use rand::Rng;
        let mut rng = crate::rng::keyed(11, 0);
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let field = Field::new(p, k, None).unwrap();
            let q = field.size();
            for _ in 0..15 {
                let mut f = BiPoly::one(&field);
                while f.total_degree().unwrap() < 5 {
                    let d = rng.gen_range(1..=3u32);
                    let terms: Vec<(u32, u32, u32)> = (0..=d)
                        .flat_map(|i| (0..=d - i).map(move |j| (i, j)))
                        .map(|(i, j)| (i, j, rng.gen_range(0..q)))
                        .collect();
                    let g = bp(&field, &terms);
                    if !g.is_constant() {
                        f = f.mul(&g);
                    }
                }
                if f.total_degree().unwrap() > MAX_TOTAL_DEGREE {
                    continue;
                }
                let factors = bivariate_factorize(&f, 1).unwrap();
                assert_factorization(&f, &factors);
                assert_eq!(bivariate_factorize(&f, 99).unwrap(), factors);
            }
        }
    }

    #[test]
    fn degree_contract() {
        let f2 = Field::new(2, 1, None).unwrap();
        let f = BiPoly::x(&f2).pow(13).add(&BiPoly::y(&f2));
        assert!(matches!(bivariate_factorize(&f, 0), Err(Error::OverContract { .. })));
        assert_eq!(bivariate_factorize(&BiPoly::one(&f2), 0), Err(Error::ConstantPolynomial));
    }
}
