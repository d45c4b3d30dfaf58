#![allow(dead_code)]

use std::sync::Arc;

use factype::gf::extension;
use factype::{Elem, Field, UniPoly};
use rand::Rng;

pub fn field(p: u64, k: u32) -> Arc<Field> {
    Field::canonical(p, k).unwrap()
}

/// Fields of size at most `q_max`, smallest first.
pub fn small_fields(q_max: u64) -> Vec<Arc<Field>> {
    let mut out = Vec::new();
    for p in [2u64, 3, 5, 7, 11, 13] {
        let mut k = 1;
        while p.pow(k) <= q_max {
            out.push(field(p, k));
            k += 1;
        }
    }
    out.sort_by_key(|f| f.size());
    out
}

/// Every monic polynomial of degree `d`.
pub fn all_monic(field: &Arc<Field>, d: usize) -> impl Iterator<Item = UniPoly> + '_ {
    let count = (field.size() as u64).pow(d as u32);
    (0..count).map(move |i| UniPoly::monic_from_index(field, d, i))
}

pub fn random_elem(field: &Field, rng: &mut impl Rng) -> Elem {
    field.elem(rng.gen_range(0..field.size() as u64)).unwrap()
}

pub fn random_poly(field: &Arc<Field>, d: usize, rng: &mut impl Rng) -> UniPoly {
    let coeffs = (0..=d).map(|_| random_elem(field, rng)).collect();
    UniPoly::new(field, coeffs)
}

pub fn random_monic(field: &Arc<Field>, d: usize, rng: &mut impl Rng) -> UniPoly {
    let mut coeffs: Vec<Elem> = (0..d).map(|_| random_elem(field, rng)).collect();
    coeffs.push(field.one());
    UniPoly::new(field, coeffs)
}

fn lcm(a: u32, b: u32) -> u32 {
    let (mut x, mut y) = (a, b);
    while y != 0 {
        (x, y) = (y, x % y);
    }
    a / x * b
}

/// Morse test by brute force: split `f'` in an explicit extension, find its
/// roots by evaluating at every element and compare the critical values.
pub fn morse_oracle(f: &UniPoly) -> bool {
    let d = f.degree().unwrap();
    let df = f.derivative();
    if df.degree().is_none_or(|e| e + 1 < d) {
        return false;
    }
    if df.is_constant() {
        return d == 1;
    }
    let degree = df
        .factorization_type()
        .unwrap()
        .parts()
        .iter()
        .fold(1, |acc, &e| lcm(acc, e));
    let (big, emb) = extension(f.field(), degree).unwrap();
    let (f, df) = (f.embed(&emb), df.embed(&emb));
    let roots: Vec<Elem> = big.elements().filter(|&a| df.eval(a).is_zero()).collect();
    if roots.len() != d - 1 {
        return false;
    }
    let mut values: Vec<Elem> = roots.iter().map(|&a| f.eval(a)).collect();
    values.sort();
    values.dedup();
    values.len() == d - 1
}

/// Irreducibility by trial division against every monic polynomial of
/// degree up to `deg / 2`.
pub fn trial_division_irreducible(f: &UniPoly) -> bool {
    let d = f.degree().unwrap();
    if d == 0 {
        return false;
    }
    (1..=d / 2).all(|e| {
        all_monic(f.field(), e).all(|g| f.div_exact(&g).unwrap().is_none())
    })
}

/// Necklace count of monic irreducibles of degree `d` over `F_q`.
pub fn necklace(q: i128, d: u32) -> i128 {
    let mobius = |mut n: u32| -> i128 {
        let mut sign = 1;
        let mut p = 2;
        while p * p <= n {
            if n % p == 0 {
                n /= p;
                if n % p == 0 {
                    return 0;
                }
                sign = -sign;
            }
            p += 1;
        }
        if n > 1 {
            sign = -sign;
        }
        sign
    };
    let sum: i128 = (1..=d)
        .filter(|e| d % e == 0)
        .map(|e| mobius(e) * q.pow(d / e))
        .sum();
    sum / d as i128
}
