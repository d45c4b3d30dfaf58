//! Complete factorization over `F_q`: squarefree decomposition, distinct-degree
//! splitting and equal-degree splitting (trace map in characteristic 2,
//! Cantor-Zassenhaus power map otherwise).

use rand::Rng;
use rand_chacha::ChaCha8Rng;

use super::{Partition, UniPoly};
use crate::error::{Error, Result};
use crate::gf::Elem;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Factorization {
    pub unit: Elem,
    /// Monic irreducible factors with multiplicities, in canonical order.
    pub factors: Vec<(UniPoly, usize)>,
}

impl Factorization {
    /// `unit * prod factor^mult`.
    pub fn reassemble(&self, field: &std::sync::Arc<crate::gf::Field>) -> UniPoly {
        self.factors
            .iter()
            .fold(UniPoly::constant(field, self.unit), |acc, (g, e)| {
                acc.mul(&g.pow(*e as u64))
            })
    }

    /// Degrees of the irreducible factors counted with multiplicity.
    pub fn factorization_type(&self) -> Partition {
        let parts = self
            .factors
            .iter()
            .flat_map(|(g, e)| std::iter::repeat_n(g.degree().unwrap() as u32, *e))
            .collect();
        Partition::new(parts).expect("positive degrees")
    }

    pub fn is_irreducible(&self) -> bool {
        self.factors.len() == 1 && self.factors[0].1 == 1
    }
}

impl UniPoly {
    /// Squarefree decomposition of the monic associate of `self`:
    /// pairwise coprime squarefree parts with their exponents.
    pub fn squarefree_decomposition(&self) -> Result<Vec<(UniPoly, usize)>> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let mut out = squarefree_rec(&self.monic());
        out.sort_by_key(|(_, e)| *e);
        Ok(out)
    }

    /// Squarefree part (radical) of a nonzero polynomial.
    pub fn squarefree_part(&self) -> Result<UniPoly> {
        Ok(self
            .squarefree_decomposition()?
            .iter()
            .fold(UniPoly::one(self.field()), |acc, (g, _)| acc.mul(g)))
    }

    /// Number of distinct roots in the algebraic closure.
    pub fn distinct_root_count(&self) -> Result<usize> {
        Ok(self.squarefree_part()?.degree().unwrap_or(0))
    }

    /// Splits a squarefree monic polynomial into `(product, d)` where
    /// `product` collects all irreducible factors of degree `d`.
    pub fn distinct_degree(&self) -> Vec<(UniPoly, usize)> {
        let field = self.field().clone();
        let q = field.size() as u64;
        let x = UniPoly::x(&field);
        let mut out = Vec::new();
        let mut f = self.monic();
        let mut h = x.clone();
        let mut i = 0usize;
        while f.degree().unwrap_or(0) >= 2 * (i + 1) {
            i += 1;
            h = h.pow_mod(q, &f);
            let g = f.gcd(&h.sub(&x));
            if !g.is_one() {
                f = f.div_rem(&g).expect("nonzero").0;
                h = h.rem(&f).expect("nonzero");
                out.push((g, i));
            }
        }
        if let Some(d) = f.degree().filter(|&d| d > 0) {
            out.push((f, d));
        }
        out
    }

    /// Complete factorization. The seed only steers internal random choices;
    /// the result is canonical and seed-independent.
    pub fn factorize(&self, seed: u64) -> Result<Factorization> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let unit = self.lc();
        let mut factors = Vec::new();
        if !self.is_constant() {
            let mut rng = crate::rng::keyed(seed, self.key());
            for (part, e) in self.squarefree_decomposition()? {
                for (g, d) in part.distinct_degree() {
                    let mut split = Vec::new();
                    equal_degree(&g, d, &mut rng, &mut split);
                    factors.extend(split.into_iter().map(|h| (h, e)));
                }
            }
        }
        factors.sort_by(|a, b| a.0.canonical_cmp(&b.0).then(a.1.cmp(&b.1)));
        Ok(Factorization { unit, factors })
    }

    /// Factorization type without equal-degree splitting.
    pub fn factorization_type(&self) -> Result<Partition> {
        match self.degree() {
            None => return Err(Error::ZeroPolynomial),
            Some(0) => return Err(Error::ConstantPolynomial),
            _ => {}
        }
        let mut parts = Vec::new();
        for (part, e) in self.squarefree_decomposition()? {
            for (g, d) in part.distinct_degree() {
                let count = g.degree().unwrap() / d;
                parts.extend(std::iter::repeat_n(d as u32, count * e));
            }
        }
        Partition::new(parts)
    }

    /// Irreducibility over the coefficient field.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else { return false };
        if n == 0 {
            return false;
        }
        let f = self.monic();
        if !f.gcd(&f.derivative()).is_one() {
            return false;
        }
        let dd = f.distinct_degree();
        dd.len() == 1 && dd[0].1 == n
    }
}

fn squarefree_rec(f: &UniPoly) -> Vec<(UniPoly, usize)> {
    let mut out = Vec::new();
    if f.is_constant() {
        return out;
    }
    let p = f.field().characteristic() as usize;
    let mut c = f.gcd(&f.derivative());
    let mut w = f.div_rem(&c).expect("nonzero").0;
    let mut i = 1;
    while !w.is_constant() {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).expect("nonzero").0;
        if !fac.is_constant() {
            out.push((fac, i));
        }
        c = c.div_rem(&y).expect("nonzero").0;
        w = y;
        i += 1;
    }
    if !c.is_constant() {
        let root = c.pth_root().expect("remaining cofactor is a p-th power");
        out.extend(
            squarefree_rec(&root)
                .into_iter()
                .map(|(g, e)| (g, e * p)),
        );
    }
    out
}

fn random_poly(f: &UniPoly, rng: &mut ChaCha8Rng) -> UniPoly {
    let field = f.field();
    let n = f.degree().unwrap();
    let q = field.size();
    let coeffs = (0..n).map(|_| field.elem(rng.gen_range(0..q) as u64).unwrap()).collect();
    UniPoly::new(field, coeffs)
}

/// Splits a squarefree monic `f` whose irreducible factors all have degree `d`.
fn equal_degree(f: &UniPoly, d: usize, rng: &mut ChaCha8Rng, out: &mut Vec<UniPoly>) {
    let n = f.degree().unwrap();
    if n == d {
        out.push(f.clone());
        return;
    }
    let field = f.field().clone();
    let q = field.size() as u64;
    let p = field.characteristic();
    loop {
        let a = random_poly(f, rng);
        if a.is_constant() {
            continue;
        }
        let b = if p == 2 {
            // absolute trace a + a^2 + ... + a^(2^(kd-1))
            let steps = field.degree() as usize * d;
            let mut t = a.clone();
            let mut acc = a.clone();
            for _ in 1..steps {
                t = t.mul_mod(&t, f);
                acc = acc.add(&t);
            }
            acc
        } else {
            // a^((q^d - 1)/2) = (a^(1 + q + ... + q^(d-1)))^((q-1)/2)
            let mut t = a.rem(f).unwrap();
            let mut norm = t.clone();
            for _ in 1..d {
                t = t.pow_mod(q, f);
                norm = norm.mul_mod(&t, f);
            }
            norm.pow_mod((q - 1) / 2, f).sub(&UniPoly::one(&field))
        };
        let g = f.gcd(&b);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < n {
            let h = f.div_rem(&g).unwrap().0;
            equal_degree(&g, d, rng, out);
            equal_degree(&h, d, rng, out);
            return;
        }
    }
}

pub(crate) fn mobius(n: u64) -> i64 {
    let mut n = n;
    let mut sign = 1i64;
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            n /= d;
            if n.is_multiple_of(d) {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// Number of monic irreducible polynomials of degree `d` over `F_q`,
/// `(1/d) sum_{e | d} mu(e) q^(d/e)`.
pub fn count_irreducibles(d: u32, q: u64) -> Result<u128> {
    if d == 0 {
        return Err(Error::InvalidArgument("degree must be positive".into()));
    }
    let mut sum: i128 = 0;
    for e in (1..=d).filter(|e| d.is_multiple_of(*e)) {
        let mu = mobius(e as u64) as i128;
        if mu == 0 {
            continue;
        }
        let term = (q as i128)
            .checked_pow(d / e)
            .ok_or(Error::Overflow("q^d"))?;
        sum += mu * term;
    }
    Ok((sum / d as i128) as u128)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;
    use std::sync::Arc;

    fn poly(field: &Arc<Field>, c: &[u32]) -> UniPoly {
        UniPoly::from_encodings(field, c).unwrap()
    }

    /// Independent oracle: irreducibility by trial division by every monic
    /// polynomial of degree 1..=n/2.
    fn irreducible_by_trial_division(f: &UniPoly) -> bool {
        let field = f.field();
        let q = field.size() as u64;
        let n = f.degree().unwrap();
        for d in 1..=n / 2 {
            for code in 0..q.pow(d as u32) {
                let mut c: Vec<u32> = (0..d)
                    .map(|i| ((code / q.pow(i as u32)) % q) as u32)
                    .collect();
                c.push(1);
                if f.rem(&poly(field, &c)).unwrap().is_zero() {
                    return false;
                }
            }
        }
        n > 0
    }

    #[test]
    fn small_examples() {
        let f2 = Field::new(2, 1, None).unwrap();
        let irr = poly(&f2, &[1, 1, 1]).factorize(0).unwrap();
        assert!(irr.is_irreducible());
        assert_eq!(irr.factorization_type().to_string(), "2");

        let sq = poly(&f2, &[1, 0, 1]).factorize(0).unwrap();
        assert_eq!(sq.factors, vec![(poly(&f2, &[1, 1]), 2)]);
        assert_eq!(sq.factorization_type().to_string(), "1+1");

        let f3 = Field::new(3, 1, None).unwrap();
        let cubic = poly(&f3, &[0, 2, 0, 1]).factorize(0).unwrap();
        assert_eq!(
            cubic.factors,
            vec![
                (poly(&f3, &[0, 1]), 1),
                (poly(&f3, &[1, 1]), 1),
                (poly(&f3, &[2, 1]), 1)
            ]
        );
    }

    #[test]
    fn squarefree_examples() {
        let f2 = Field::new(2, 1, None).unwrap();
        assert_eq!(
            poly(&f2, &[1, 0, 1]).squarefree_decomposition().unwrap(),
            vec![(poly(&f2, &[1, 1]), 2)]
        );
        let f3 = Field::new(3, 1, None).unwrap();
        let c = poly(&f3, &[0, 2, 0, 1]);
        assert_eq!(c.squarefree_decomposition().unwrap(), vec![(c.clone(), 1)]);
        for (p, k) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = Field::new(p, k, None).unwrap();
            let t4 = UniPoly::monomial(&f, Elem::ONE, 4);
            assert_eq!(
                t4.squarefree_decomposition().unwrap(),
                vec![(UniPoly::x(&f), 4)]
            );
        }
        // (T+1)^2 (T^2+T+1)^3 T^4 over F_2 mixes the loop and the p-th root branch
        let g = poly(&f2, &[1, 1])
            .pow(2)
            .mul(&poly(&f2, &[1, 1, 1]).pow(3))
            .mul(&UniPoly::x(&f2).pow(4));
        assert_eq!(
            g.squarefree_decomposition().unwrap(),
            vec![
                (poly(&f2, &[1, 1]), 2),
                (poly(&f2, &[1, 1, 1]), 3),
                (UniPoly::x(&f2), 4)
            ]
        );
    }

    #[test]
    fn t6_plus_t_type_by_trial_division() {
        // T^6 + T = T (T+1) (T^4+T^3+T^2+T+1) over F_2
        let f2 = Field::new(2, 1, None).unwrap();
        let f = poly(&f2, &[0, 1, 0, 0, 0, 0, 1]);
        let quartic = poly(&f2, &[1, 1, 1, 1, 1]);
        assert!(irreducible_by_trial_division(&quartic));
        assert_eq!(
            poly(&f2, &[0, 1])
                .mul(&poly(&f2, &[1, 1]))
                .mul(&quartic),
            f
        );
        assert_eq!(f.factorization_type().unwrap().to_string(), "4+1+1");
        assert_eq!(f.factorize(3).unwrap().factorization_type().to_string(), "4+1+1");
    }

    #[test]
    fn irreducibility_agrees_with_trial_division() {
        for (p, k, d) in [(2, 1, 6), (3, 1, 4), (2, 2, 3), (5, 1, 3)] {
            let field = Field::new(p, k, None).unwrap();
            let q = field.size() as u64;
            for code in 0..q.pow(d) {
                let mut c: Vec<u32> = (0..d).map(|i| ((code / q.pow(i)) % q) as u32).collect();
                c.push(1);
                let f = poly(&field, &c);
                let oracle = irreducible_by_trial_division(&f);
                assert_eq!(f.is_irreducible(), oracle, "{f:?}");
                assert_eq!(f.factorize(1).unwrap().is_irreducible(), oracle, "{f:?}");
            }
        }
    }

    #[test]
    fn factorize_reassembles_and_ignores_seed() {
        let field = Field::new(2, 3, None).unwrap();
        let mut rng = crate::rng::keyed(7, 7);
        for _ in 0..200 {
            let n = rng.gen_range(1..10);
            let c: Vec<u32> = (0..=n).map(|_| rng.gen_range(0..8)).collect();
            let f = poly(&field, &c);
            if f.is_zero() {
                continue;
            }
            let a = f.factorize(1).unwrap();
            let b = f.factorize(99).unwrap();
            assert_eq!(a, b);
            assert_eq!(a.reassemble(&field), f);
            for (g, _) in &a.factors {
                assert!(g.is_monic());
                assert!(g.is_irreducible());
            }
            if !f.is_constant() {
                assert_eq!(a.factorization_type(), f.factorization_type().unwrap());
            }
        }
    }

    #[test]
    fn constant_and_zero_inputs() {
        let f = Field::new(3, 1, None).unwrap();
        assert_eq!(UniPoly::zero(&f).factorize(0), Err(Error::ZeroPolynomial));
        assert_eq!(
            UniPoly::one(&f).factorization_type(),
            Err(Error::ConstantPolynomial)
        );
        let c = UniPoly::constant(&f, Elem(2)).factorize(0).unwrap();
        assert_eq!(c.unit, Elem(2));
        assert!(c.factors.is_empty());
    }

    #[test]
    fn necklace_counts() {
        assert_eq!(count_irreducibles(1, 7).unwrap(), 7);
        assert_eq!(count_irreducibles(2, 2).unwrap(), 1);
        assert_eq!(count_irreducibles(3, 2).unwrap(), 2);
        assert_eq!(count_irreducibles(4, 2).unwrap(), 3);
        assert_eq!(count_irreducibles(6, 3).unwrap(), 116);
        assert_eq!(mobius(30), -1);
        assert_eq!(mobius(12), 0);
    }
}
