mod common;

use std::sync::Arc;

use factype::bipoly::{
    bipoly_gcd, bivariate_factorize, bivariate_resultant, geometrically_irreducible, strip_x_minus_y, tilde, Var,
};
use factype::gf::extension;
use factype::unipoly::resultant;
use factype::{BiPoly, Field, UniPoly};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn random_bipoly(field: &Arc<Field>, total: u32, rng: &mut impl Rng) -> BiPoly {
    let mut terms = Vec::new();
    for i in 0..=total {
        for j in 0..=total - i {
            terms.push(((i, j), common::random_elem(field, rng)));
        }
    }
    BiPoly::new(field, terms)
}

/// Every bivariate polynomial of total degree at most `total`.
fn all_bipolys(field: &Arc<Field>, total: u32) -> Vec<BiPoly> {
    let monomials: Vec<(u32, u32)> = (0..=total).flat_map(|i| (0..=total - i).map(move |j| (i, j))).collect();
    let q = field.size() as u64;
    let count = q.pow(monomials.len() as u32);
    (0..count)
        .map(|mut n| {
            let terms = monomials.iter().map(|&m| {
                let c = field.elem(n % q).unwrap();
                n /= q;
                (m, c)
            });
            BiPoly::new(field, terms.collect::<Vec<_>>())
        })
        .collect()
}

fn brute_force_irreducible(f: &BiPoly, candidates: &[BiPoly]) -> bool {
    let t = f.total_degree().unwrap();
    candidates
        .iter()
        .filter(|g| g.total_degree().is_some_and(|e| e >= 1 && 2 * e <= t))
        .all(|g| f.div_exact(g).unwrap().is_none())
}

fn field_params() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![Just((2, 1)), Just((2, 2)), Just((3, 1)), Just((5, 1)), Just((7, 1)), Just((3, 2))]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn difference_quotient_identity((p, k) in field_params(), d in 1usize..15, seed: u64) {
        let f = common::field(p, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let g = common::random_monic(&f, d, &mut rng);
        let h = common::random_monic(&f, d, &mut rng);
        let t = tilde(&g).unwrap();
        prop_assert_eq!(BiPoly::x_minus_y(&f).mul(&t), BiPoly::from_x(&g).sub(&BiPoly::from_y(&g)));
        prop_assert_eq!(t.deg_y(), Some(d as u32 - 1));
        prop_assert_eq!(t.total_degree(), Some(d as u32 - 1));
        prop_assert_eq!(t.swap(), t.clone());
        // linear in f, with constants vanishing
        let c = common::random_elem(&f, &mut rng);
        let sum = g.add(&h.scale(c)).add(&UniPoly::constant(&f, c));
        if !sum.is_constant() {
            prop_assert_eq!(tilde(&sum).unwrap(), t.add(&tilde(&h).unwrap().scale(c)));
        }
        // on the diagonal tilde(f)(a, a) = f'(a)
        for a in f.elements().take(6) {
            prop_assert_eq!(t.eval(a, a), g.derivative().eval(a));
        }
    }

    #[test]
    fn gcd_divides_and_contains_common_factor((p, k) in field_params(), seed: u64) {
        let f = common::field(p, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let c = random_bipoly(&f, rng.gen_range(1..3), &mut rng);
        let a = random_bipoly(&f, rng.gen_range(0..3), &mut rng).mul(&c);
        let b = random_bipoly(&f, rng.gen_range(0..3), &mut rng).mul(&c);
        prop_assume!(!a.is_zero() && !b.is_zero());
        let g = bipoly_gcd(&a, &b).unwrap();
        prop_assert!(a.div_exact(&g).unwrap().is_some());
        prop_assert!(b.div_exact(&g).unwrap().is_some());
        if !c.is_zero() {
            prop_assert!(g.div_exact(&c).unwrap().is_some());
        }
        prop_assert_eq!(g.clone(), bipoly_gcd(&b, &a).unwrap());
        prop_assert_eq!(g.normalize(), g);
    }

    #[test]
    fn resultant_specializes((p, k) in field_params(), seed: u64) {
        let f = common::field(p, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a = random_bipoly(&f, rng.gen_range(1..4), &mut rng);
        let b = random_bipoly(&f, rng.gen_range(1..4), &mut rng);
        prop_assume!(a.deg_y().unwrap_or(0) > 0 && b.deg_y().unwrap_or(0) > 0);
        let r = bivariate_resultant(&a, &b, Var::Y).unwrap();
        for x0 in f.elements() {
            let (ax, bx) = (a.eval_x(x0), b.eval_x(x0));
            if ax.degree() == a.deg_y().map(|e| e as usize) && bx.degree() == b.deg_y().map(|e| e as usize) {
                prop_assert_eq!(r.eval(x0), resultant(&ax, &bx).unwrap());
            }
        }
        let rx = bivariate_resultant(&a, &b, Var::X);
        if a.deg_x().unwrap_or(0) > 0 && b.deg_x().unwrap_or(0) > 0 {
            prop_assert_eq!(rx.unwrap(), bivariate_resultant(&a.swap(), &b.swap(), Var::Y).unwrap());
        }
    }

    #[test]
    fn factorization_reassembles((p, k) in field_params(), seed: u64) {
        let f = common::field(p, k);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut g = BiPoly::one(&f);
        for _ in 0..rng.gen_range(1..4) {
            g = g.mul(&random_bipoly(&f, rng.gen_range(1..4), &mut rng));
        }
        prop_assume!(!g.is_zero() && !g.is_constant());
        let factors = bivariate_factorize(&g, seed).unwrap();
        let product = factors.iter().fold(BiPoly::one(&f), |acc, (h, m)| acc.mul(&h.pow(*m as u32)));
        prop_assert_eq!(product.normalize(), g.normalize());
        for (h, m) in &factors {
            prop_assert!(*m >= 1);
            prop_assert_eq!(bivariate_factorize(h, seed ^ 1).unwrap(), vec![(h.clone(), 1)]);
        }
    }
}

#[test]
fn factors_are_irreducible_by_exhaustive_trial_division() {
    for (p, k, total) in [(2u64, 1u32, 2u32), (3, 1, 2), (2, 2, 1)] {
        let f = common::field(p, k);
        let candidates = all_bipolys(&f, total);
        let mut rng = ChaCha8Rng::seed_from_u64(p);
        for _ in 0..150 {
            let a = random_bipoly(&f, rng.gen_range(1..=total), &mut rng);
            let b = random_bipoly(&f, rng.gen_range(1..=total), &mut rng);
            let g = a.mul(&b);
            if g.is_zero() || g.is_constant() {
                continue;
            }
            for (h, _) in bivariate_factorize(&g, 5).unwrap() {
                assert!(brute_force_irreducible(&h, &candidates), "{h} from {g}");
            }
        }
    }
}

#[test]
fn irreducibility_agrees_with_exhaustive_search() {
    // every polynomial of total degree <= 2 over F_2 and F_3
    for p in [2u64, 3] {
        let f = common::field(p, 1);
        let small = all_bipolys(&f, 1);
        for g in all_bipolys(&f, 2) {
            if g.total_degree().is_none_or(|t| t == 0) {
                continue;
            }
            let factors = bivariate_factorize(&g, 0).unwrap();
            let irreducible = factors.len() == 1 && factors[0].1 == 1;
            assert_eq!(irreducible, brute_force_irreducible(&g, &small), "{g}");
        }
    }
}

/// Geometric irreducibility by factoring over every extension of degree up
/// to the total degree.
fn geometric_oracle(g: &BiPoly) -> bool {
    let t = g.total_degree().unwrap();
    (1..=t).all(|e| {
        let (_, emb) = extension(g.field(), e).unwrap();
        let factors = bivariate_factorize(&g.embed(&emb), 0).unwrap();
        factors.len() == 1 && factors[0].1 == 1
    })
}

#[test]
fn geometric_irreducibility_matches_extension_search() {
    for (p, d_max) in [(2u64, 5usize), (3, 4)] {
        let f = common::field(p, 1);
        for d in 2..=d_max {
            for g in common::all_monic(&f, d) {
                let t = tilde(&g).unwrap();
                if t.is_constant() {
                    continue;
                }
                for s in f.elements() {
                    let h = t.add(&BiPoly::constant(&f, s));
                    assert_eq!(geometrically_irreducible(&h).unwrap(), geometric_oracle(&h), "{h}");
                }
            }
        }
    }
}

#[test]
fn norm_forms_are_reducible_only_geometrically() {
    // x^2 + x y + y^2 over F_2 splits into conjugate lines over F_4
    let f2 = common::field(2, 1);
    let g = BiPoly::from_triples(&f2, &[(2, 0, 1), (1, 1, 1), (0, 2, 1)]).unwrap();
    assert_eq!(bivariate_factorize(&g, 0).unwrap().len(), 1);
    assert!(!geometrically_irreducible(&g).unwrap());
    // x^2 - 2 y^2 over F_5 (2 is a non-square mod 5)
    let f5 = common::field(5, 1);
    let g = BiPoly::from_triples(&f5, &[(2, 0, 1), (0, 2, 3)]).unwrap();
    assert_eq!(bivariate_factorize(&g, 0).unwrap().len(), 1);
    assert!(!geometrically_irreducible(&g).unwrap());
    // a smooth cubic stays irreducible
    let g = BiPoly::from_triples(&f5, &[(0, 2, 1), (3, 0, 1), (1, 0, 1), (0, 0, 1)]).unwrap();
    assert!(geometrically_irreducible(&g).unwrap());
}

#[test]
fn stripping_removes_exact_power() {
    let f = common::field(3, 1);
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for _ in 0..100 {
        let base = random_bipoly(&f, 3, &mut rng);
        if base.is_zero() {
            continue;
        }
        let (core, m0) = strip_x_minus_y(&base).unwrap();
        let e = rng.gen_range(0..4u32);
        let g = base.mul(&BiPoly::x_minus_y(&f).pow(e));
        let (stripped, m) = strip_x_minus_y(&g).unwrap();
        assert_eq!(m, m0 + e);
        assert_eq!(stripped, core);
        assert!(stripped.div_exact(&BiPoly::x_minus_y(&f)).unwrap().is_none());
    }
}
