mod common;

use factype::gf::extension;
use factype::{Elem, Embedding, Field};
use proptest::prelude::*;

/// Schoolbook product of digit vectors reduced by the modulus.
fn digit_mul(a: &[u32], b: &[u32], modulus: &[u32], p: u32) -> Vec<u32> {
    let k = modulus.len() - 1;
    let mut prod = vec![0u64; 2 * k];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p as u64;
        }
    }
    for top in (k..2 * k).rev() {
        let c = prod[top];
        if c == 0 {
            continue;
        }
        prod[top] = 0;
        for (i, &m) in modulus[..k].iter().enumerate() {
            let sub = c * m as u64 % p as u64;
            prod[top - k + i] = (prod[top - k + i] + p as u64 - sub) % p as u64;
        }
    }
    prod.truncate(k);
    prod.into_iter().map(|c| c as u32).collect()
}

fn field_strategy() -> impl Strategy<Value = (u64, u32)> {
    prop_oneof![
        Just((2, 1)),
        Just((2, 3)),
        Just((2, 8)),
        Just((3, 2)),
        Just((3, 5)),
        Just((5, 1)),
        Just((7, 2)),
        Just((13, 1)),
        Just((2, 16)),
    ]
}

fn elems(n: usize) -> impl Strategy<Value = ((u64, u32), Vec<u64>)> {
    field_strategy().prop_flat_map(move |(p, k)| {
        let q = p.pow(k);
        (Just((p, k)), proptest::collection::vec(0..q, n))
    })
}

proptest! {
    #[test]
    fn field_axioms(((p, k), v) in elems(3)) {
        let f = common::field(p, k);
        let [a, b, c] = [v[0], v[1], v[2]].map(|n| f.elem(n).unwrap());
        prop_assert_eq!(f.add(a, b), f.add(b, a));
        prop_assert_eq!(f.mul(a, b), f.mul(b, a));
        prop_assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
        prop_assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
        prop_assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
        prop_assert_eq!(f.add(a, f.neg(a)), Elem::ZERO);
        prop_assert_eq!(f.sub(a, b), f.add(a, f.neg(b)));
        if !a.is_zero() {
            prop_assert_eq!(f.mul(a, f.inv(a).unwrap()), Elem::ONE);
            prop_assert_eq!(f.div(b, a).unwrap(), f.mul(b, f.inv(a).unwrap()));
        } else {
            prop_assert!(f.inv(a).is_err());
        }
    }

    #[test]
    fn product_matches_digit_arithmetic(((p, k), v) in elems(2)) {
        let f = common::field(p, k);
        let (a, b) = (f.elem(v[0]).unwrap(), f.elem(v[1]).unwrap());
        let expect = digit_mul(&f.digits(a), &f.digits(b), f.modulus(), p as u32);
        prop_assert_eq!(f.digits(f.mul(a, b)), expect);
        let sum: Vec<u32> = f.digits(a).iter().zip(f.digits(b)).map(|(x, y)| (x + y) % p as u32).collect();
        prop_assert_eq!(f.digits(f.add(a, b)), sum);
    }

    #[test]
    fn encoding_round_trip(((p, k), v) in elems(1)) {
        let f = common::field(p, k);
        let a = f.elem(v[0]).unwrap();
        prop_assert_eq!(a.encoding() as u64, v[0]);
        let digits = f.digits(a);
        prop_assert_eq!(digits.len(), k as usize);
        prop_assert!(digits.iter().all(|&d| d < p as u32));
        prop_assert_eq!(f.from_digits(&digits).unwrap(), a);
    }

    #[test]
    fn frobenius_is_pth_power(((p, k), v) in elems(2)) {
        let f = common::field(p, k);
        let (a, b) = (f.elem(v[0]).unwrap(), f.elem(v[1]).unwrap());
        prop_assert_eq!(f.frobenius(a, 1), f.pow(a, p));
        prop_assert_eq!(f.frobenius(f.add(a, b), 1), f.add(f.frobenius(a, 1), f.frobenius(b, 1)));
        prop_assert_eq!(f.frobenius(a, k), a);
        prop_assert_eq!(f.pth_root(f.frobenius(a, 1)), a);
        prop_assert_eq!(f.in_prime_field(a), f.frobenius(a, 1) == a);
    }

    #[test]
    fn pow_matches_repeated_product(((p, k), v) in elems(1), e in 0u64..40) {
        let f = common::field(p, k);
        let a = f.elem(v[0]).unwrap();
        let naive = (0..e).fold(Elem::ONE, |acc, _| f.mul(acc, a));
        prop_assert_eq!(f.pow(a, e), naive);
    }
}

#[test]
fn primitive_element_has_full_order() {
    for f in common::small_fields(1 << 12) {
        let g = f.primitive_element();
        assert_eq!(f.order(g).unwrap(), f.size() as u64 - 1, "{f:?}");
    }
}

#[test]
fn explicit_modulus_gives_isomorphic_field() {
    // x^4 + x^3 + 1 is irreducible over F_2 but not the canonical choice
    let f = Field::new(2, 4, Some(&[1, 0, 0, 1, 1])).unwrap();
    assert_ne!(f.modulus(), common::field(2, 4).modulus());
    let g = f.generator();
    let m = f.add(f.add(f.pow(g, 4), f.pow(g, 3)), Elem::ONE);
    assert!(m.is_zero());
}

#[test]
fn embeddings_are_injective_ring_maps() {
    for (p, k, m) in [(2, 1, 4), (2, 2, 3), (2, 3, 2), (3, 1, 3), (3, 2, 2), (5, 1, 2)] {
        let small = common::field(p, k);
        let (big, emb) = extension(&small, m).unwrap();
        assert_eq!(big.size(), small.size().pow(m));
        let mut images: Vec<Elem> = small.elements().map(|a| emb.apply(a)).collect();
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.apply(small.add(a, b)), big.add(emb.apply(a), emb.apply(b)));
                assert_eq!(emb.apply(small.mul(a, b)), big.mul(emb.apply(a), emb.apply(b)));
            }
            assert_eq!(emb.preimage(emb.apply(a)), Some(a));
            // the image is the fixed field of the q-power Frobenius
            assert_eq!(big.frobenius(emb.apply(a), k), emb.apply(a));
        }
        images.sort();
        images.dedup();
        assert_eq!(images.len(), small.size() as usize);
        let fixed = big.elements().filter(|&b| big.frobenius(b, k) == b).count();
        assert_eq!(fixed, small.size() as usize);
    }
}

#[test]
fn embeddings_compose_through_towers() {
    let f2 = common::field(2, 1);
    let f4 = common::field(2, 2);
    let f16 = common::field(2, 4);
    let a = Embedding::between(&f2, &f4).unwrap();
    let b = Embedding::between(&f4, &f16).unwrap();
    let c = Embedding::between(&f2, &f16).unwrap();
    for x in f2.elements() {
        assert_eq!(b.apply(a.apply(x)), c.apply(x));
    }
    assert!(Embedding::between(&f4, &common::field(2, 3)).is_err());
    assert!(Embedding::between(&f4, &common::field(3, 2)).is_err());
}

#[test]
fn contract_limits() {
    assert!(Field::new(2, 20, None).is_ok());
    assert!(Field::new(2, 21, None).is_err());
    assert!(Field::new(1, 1, None).is_err());
    assert!(Field::from_spec("3^2", None).unwrap().size() == 9);
    assert!(Field::from_spec("6", None).is_err());
}
