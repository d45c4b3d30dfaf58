//! Finite fields `F_{p^k}` in power-basis representation.
//!
//! Elements are stored as their integer encoding `n = sum digits[i] * p^i`,
//! where `digits` are the coordinates with respect to `1, g, ..., g^{k-1}` and
//! `g` is a root of the defining modulus. Multiplication goes through
//! exponential/logarithm tables built from a primitive element; addition in
//! odd characteristic with `k > 1` uses Zech logarithms.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use crate::error::{Error, Result};
use crate::unipoly::UniPoly;

/// Largest supported field size.
pub const MAX_FIELD_SIZE: u64 = 1 << 20;

const NONE: u32 = u32::MAX;

/// A field element, identified by its integer encoding.
#[derive(Copy, Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub(crate) u32);

impl Elem {
    pub const ZERO: Elem = Elem(0);
    pub const ONE: Elem = Elem(1);

    #[inline]
    pub fn encoding(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for Elem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// An immutable finite field context.
pub struct Field {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    primitive: Elem,
    exp: Vec<u32>,
    log: Vec<u32>,
    zech: Vec<u32>,
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F_{}^{} mod {:?}", self.p, self.k, self.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}^{}", self.p, self.k)
    }
}

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.k == other.k && self.modulus == other.modulus
    }
}

impl Eq for Field {}

pub(crate) fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

pub(crate) fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n.is_multiple_of(d) {
            out.push(d);
            while n.is_multiple_of(d) {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

fn check_size(p: u64, k: u32) -> Result<u32> {
    let mut q: u64 = 1;
    for _ in 0..k {
        q = q.saturating_mul(p);
        if q > MAX_FIELD_SIZE {
            return Err(Error::FieldTooLarge { p, k });
        }
    }
    Ok(q as u32)
}

impl Field {
    /// Builds `F_{p^k}`. Without an explicit modulus the monic irreducible of
    /// degree `k` with the smallest encoding (lower coefficients read as
    /// base-`p` digits) is used.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::ZeroDegree);
        }
        let q = check_size(p, k)?;
        let p = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 {
                    return Err(Error::ModulusShape {
                        expected: k,
                        got: m.len(),
                    });
                }
                if let Some(&bad) = m.iter().find(|&&c| c >= p) {
                    return Err(Error::ModulusDigit(bad));
                }
                if !fp_poly::is_irreducible(m, p) {
                    return Err(Error::ReducibleModulus(p));
                }
                m.to_vec()
            }
            None => canonical_modulus(p, k),
        };
        Ok(Arc::new(Self::build(p, k, q, modulus)))
    }

    /// The canonical field of size `p^k`, shared through a process-wide cache.
    pub fn canonical(p: u64, k: u32) -> Result<Arc<Field>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u32), Arc<Field>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(f) = cache.lock().unwrap().get(&(p, k)) {
            return Ok(f.clone());
        }
        let field = Field::new(p, k, None)?;
        Ok(cache
            .lock()
            .unwrap()
            .entry((p, k))
            .or_insert(field)
            .clone())
    }

    /// Parses `"p^k"` or `"p"`, with an optional explicit modulus.
    pub fn from_spec(spec: &str, modulus: Option<&[u32]>) -> Result<Arc<Field>> {
        let spec = spec.trim();
        let (p, k) = match spec.split_once('^') {
            Some((p, k)) => (p.trim(), k.trim()),
            None => (spec, "1"),
        };
        let p: u64 = p
            .parse()
            .map_err(|_| Error::Parse(format!("bad field characteristic {p:?}")))?;
        let k: u32 = k
            .parse()
            .map_err(|_| Error::Parse(format!("bad extension degree {k:?}")))?;
        match modulus {
            Some(m) => Field::new(p, k, Some(m)),
            None => Field::canonical(p, k),
        }
    }

    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Field {
        let raw = Raw { p, k, modulus: &modulus };
        let primitive = raw.find_primitive(q);
        let order = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * order.max(1)];
        let mut log = vec![NONE; q as usize];
        let mut cur = 1u32;
        for i in 0..order {
            exp[i] = cur;
            log[cur as usize] = i as u32;
            cur = raw.mul(cur, primitive);
        }
        debug_assert_eq!(cur, 1);
        for i in order..2 * order {
            exp[i] = exp[i - order];
        }
        let zech = (0..order)
            .map(|n| {
                let w = raw.add_one(exp[n]);
                if w == 0 {
                    NONE
                } else {
                    log[w as usize]
                }
            })
            .collect();
        Field {
            p,
            k,
            q,
            modulus,
            primitive: Elem(primitive),
            exp,
            log,
            zech,
        }
    }

    #[inline]
    pub fn characteristic(&self) -> u32 {
        self.p
    }

    #[inline]
    pub fn degree(&self) -> u32 {
        self.k
    }

    #[inline]
    pub fn size(&self) -> u32 {
        self.q
    }

    /// Coefficients of the defining modulus, low to high, ending with 1.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn primitive_element(&self) -> Elem {
        self.primitive
    }

    /// Whether both handles denote the same field model.
    pub fn same(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }

    /// The root `g` of the modulus.
    pub fn generator(&self) -> Elem {
        if self.k == 1 {
            Elem((self.p - self.modulus[0]) % self.p)
        } else {
            Elem(self.p)
        }
    }

    pub fn zero(&self) -> Elem {
        Elem::ZERO
    }

    pub fn one(&self) -> Elem {
        Elem::ONE
    }

    pub fn elem(&self, encoding: u64) -> Result<Elem> {
        if encoding >= self.q as u64 {
            return Err(Error::ElementOutOfRange(encoding));
        }
        Ok(Elem(encoding as u32))
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elem {
        Elem(n.rem_euclid(self.p as i64) as u32)
    }

    pub fn digits(&self, a: Elem) -> Vec<u32> {
        let mut n = a.0;
        (0..self.k)
            .map(|_| {
                let d = n % self.p;
                n /= self.p;
                d
            })
            .collect()
    }

    pub fn from_digits(&self, digits: &[u32]) -> Result<Elem> {
        if digits.len() > self.k as usize {
            return Err(Error::ElementOutOfRange(digits.len() as u64));
        }
        let mut n = 0u64;
        for &d in digits.iter().rev() {
            if d >= self.p {
                return Err(Error::ElementOutOfRange(d as u64));
            }
            n = n * self.p as u64 + d as u64;
        }
        Ok(Elem(n as u32))
    }

    /// Whether `a` lies in the prime subfield.
    pub fn in_prime_field(&self, a: Elem) -> bool {
        a.0 < self.p
    }

    /// All `q` elements in increasing encoding order.
    pub fn elements(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.q).map(Elem)
    }

    #[inline]
    pub fn add(&self, a: Elem, b: Elem) -> Elem {
        if self.p == 2 {
            return Elem(a.0 ^ b.0);
        }
        if self.k == 1 {
            let s = a.0 + b.0;
            return Elem(if s >= self.p { s - self.p } else { s });
        }
        if a.0 == 0 {
            return b;
        }
        if b.0 == 0 {
            return a;
        }
        let order = self.q - 1;
        let la = self.log[a.0 as usize];
        let lb = self.log[b.0 as usize];
        let n = if lb >= la { lb - la } else { lb + order - la };
        let z = self.zech[n as usize];
        if z == NONE {
            Elem::ZERO
        } else {
            Elem(self.exp[(la + z) as usize])
        }
    }

    #[inline]
    pub fn neg(&self, a: Elem) -> Elem {
        if self.p == 2 || a.0 == 0 {
            return a;
        }
        if self.k == 1 {
            return Elem(self.p - a.0);
        }
        let half = (self.q - 1) / 2;
        Elem(self.exp[(self.log[a.0 as usize] + half) as usize])
    }

    #[inline]
    pub fn sub(&self, a: Elem, b: Elem) -> Elem {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        if a.0 == 0 || b.0 == 0 {
            return Elem::ZERO;
        }
        Elem(self.exp[(self.log[a.0 as usize] + self.log[b.0 as usize]) as usize])
    }

    pub fn inv(&self, a: Elem) -> Result<Elem> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let order = self.q - 1;
        let l = self.log[a.0 as usize];
        Ok(Elem(self.exp[((order - l) % order) as usize]))
    }

    pub fn div(&self, a: Elem, b: Elem) -> Result<Elem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        if e == 0 {
            return Elem::ONE;
        }
        if a.0 == 0 {
            return Elem::ZERO;
        }
        let order = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Elem(self.exp[((l * (e % order)) % order) as usize])
    }

    /// `a^(p^j)`.
    pub fn frobenius(&self, a: Elem, j: u32) -> Elem {
        let order = (self.q - 1) as u64;
        let mut e = 1u64;
        for _ in 0..j {
            e = e * self.p as u64 % order.max(1);
        }
        if order <= 1 {
            return a;
        }
        self.pow(a, if e == 0 { order } else { e })
    }

    /// The unique `p`-th root, `a^(p^(k-1))`.
    pub fn pth_root(&self, a: Elem) -> Elem {
        self.frobenius(a, self.k - 1)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: Elem) -> Result<u64> {
        if a.0 == 0 {
            return Err(Error::InverseOfZero);
        }
        let n = (self.q - 1) as u64;
        let l = self.log[a.0 as usize] as u64;
        Ok(n / gcd_u64(n, l))
    }
}

pub(crate) fn gcd_u64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

fn canonical_modulus(p: u32, k: u32) -> Vec<u32> {
    let count = (p as u64).pow(k);
    for n in 0..count {
        let mut m = Vec::with_capacity(k as usize + 1);
        let mut t = n;
        for _ in 0..k {
            m.push((t % p as u64) as u32);
            t /= p as u64;
        }
        m.push(1);
        if fp_poly::is_irreducible(&m, p) {
            return m;
        }
    }
    unreachable!("irreducible polynomials exist in every degree")
}

/// Arithmetic on raw encodings, used only while tables are being built.
struct Raw<'a> {
    p: u32,
    k: u32,
    modulus: &'a [u32],
}

impl Raw<'_> {
    fn digits(&self, mut n: u32) -> Vec<u32> {
        (0..self.k)
            .map(|_| {
                let d = n % self.p;
                n /= self.p;
                d
            })
            .collect()
    }

    fn encode(&self, digits: &[u32]) -> u32 {
        digits.iter().rev().fold(0, |acc, &d| acc * self.p + d)
    }

    fn add_one(&self, n: u32) -> u32 {
        let d0 = n % self.p;
        n - d0 + (d0 + 1) % self.p
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        if self.p == 2 {
            let low = self.encode(&self.modulus[..self.k as usize]);
            let top = 1u32 << self.k;
            let (mut acc, mut t, mut bits) = (0u32, a, b);
            while bits != 0 {
                if bits & 1 == 1 {
                    acc ^= t;
                }
                bits >>= 1;
                t <<= 1;
                if t & top != 0 {
                    t ^= top | low;
                }
            }
            return acc;
        }
        let (p, k) = (self.p as u64, self.k as usize);
        let da = self.digits(a);
        let db = self.digits(b);
        let mut prod = vec![0u64; 2 * k];
        for (i, &x) in da.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x as u64 * y as u64) % p;
            }
        }
        for top in (k..2 * k).rev() {
            let c = prod[top];
            if c == 0 {
                continue;
            }
            prod[top] = 0;
            for i in 0..k {
                let m = self.modulus[i] as u64;
                prod[top - k + i] = (prod[top - k + i] + (p - c) * m) % p;
            }
        }
        let digits: Vec<u32> = prod[..k].iter().map(|&d| d as u32).collect();
        self.encode(&digits)
    }

    fn pow(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    fn find_primitive(&self, q: u32) -> u32 {
        let order = (q - 1) as u64;
        let primes = prime_factors(order);
        (1..q)
            .find(|&c| primes.iter().all(|&r| self.pow(c, order / r) != 1))
            .expect("the multiplicative group is cyclic")
    }
}

/// Dense polynomials over `F_p` used to validate moduli before a field exists.
mod fp_poly {
    type P = Vec<u64>;

    fn trim(mut a: P) -> P {
        while a.last() == Some(&0) {
            a.pop();
        }
        a
    }

    fn inv_mod(a: u64, p: u64) -> u64 {
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

    fn rem(mut a: P, m: &[u64], p: u64) -> P {
        let dm = m.len() - 1;
        let li = inv_mod(m[dm], p);
        a = trim(a);
        while a.len() > dm {
            let top = a.len() - 1;
            let c = a[top] * li % p;
            for i in 0..=dm {
                let idx = top - dm + i;
                a[idx] = (a[idx] + (p - c) * m[i] % p) % p;
            }
            a = trim(a);
        }
        a
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> P {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut out = vec![0u64; a.len() + b.len() - 1];
        for (i, &x) in a.iter().enumerate() {
            for (j, &y) in b.iter().enumerate() {
                out[i + j] = (out[i + j] + x * y) % p;
            }
        }
        rem(out, m, p)
    }

    fn powmod(a: &[u64], mut e: u64, m: &[u64], p: u64) -> P {
        let mut base = rem(a.to_vec(), m, p);
        let mut acc = vec![1u64];
        while e > 0 {
            if e & 1 == 1 {
                acc = mulmod(&acc, &base, m, p);
            }
            base = mulmod(&base, &base, m, p);
            e >>= 1;
        }
        acc
    }

    fn gcd(a: P, b: P, p: u64) -> P {
        let (mut a, mut b) = (trim(a), trim(b));
        while !b.is_empty() {
            let r = rem(a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `m` of degree k is irreducible iff `X^(p^k) = X mod m`
    /// and `gcd(X^(p^(k/r)) - X, m) = 1` for every prime `r | k`.
    pub(super) fn is_irreducible(m: &[u32], p: u32) -> bool {
        let p = p as u64;
        let m: P = m.iter().map(|&c| c as u64).collect();
        let k = m.len() - 1;
        if k == 1 {
            return true;
        }
        let x: P = vec![0, 1];
        // frob[i] = X^(p^i) mod m
        let mut frob = vec![rem(x.clone(), &m, p)];
        for i in 1..=k {
            let next = powmod(&frob[i - 1], p, &m, p);
            frob.push(next);
        }
        if frob[k] != rem(x.clone(), &m, p) {
            return false;
        }
        for r in super::prime_factors(k as u64) {
            let mut h = frob[k / r as usize].clone();
            h.resize(h.len().max(2), 0);
            h[1] = (h[1] + p - 1) % p;
            let g = gcd(m.clone(), h, p);
            if g.len() != 1 {
                return false;
            }
        }
        true
    }
}

/// A fixed field homomorphism `F_{p^k} -> F_{p^{km}}`, sending `g` to the
/// smallest-encoding root of the source modulus in the target.
pub struct Embedding {
    source: Arc<Field>,
    target: Arc<Field>,
    image: Vec<Elem>,
    preimage: HashMap<Elem, Elem>,
}

impl fmt::Debug for Embedding {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Embedding({:?} -> {:?})", self.source, self.target)
    }
}

impl Embedding {
    pub fn new(source: &Arc<Field>, target: &Arc<Field>) -> Result<Embedding> {
        if source.p != target.p || !target.k.is_multiple_of(source.k) {
            return Err(Error::EmbeddingDegree {
                source_degree: source.k,
                target: target.k,
            });
        }
        let root = if source.k == 1 {
            Elem::ZERO
        } else {
            let coeffs: Vec<Elem> = source
                .modulus
                .iter()
                .map(|&c| target.from_int(c as i64))
                .collect();
            let m = UniPoly::new(target, coeffs);
            *m.roots()
                .first()
                .expect("the source modulus splits in the target")
        };
        let mut powers = Vec::with_capacity(source.k as usize);
        let mut cur = Elem::ONE;
        for _ in 0..source.k {
            powers.push(cur);
            cur = target.mul(cur, root);
        }
        let image: Vec<Elem> = source
            .elements()
            .map(|a| {
                source
                    .digits(a)
                    .iter()
                    .zip(&powers)
                    .fold(Elem::ZERO, |acc, (&d, &g)| {
                        target.add(acc, target.mul(target.from_int(d as i64), g))
                    })
            })
            .collect();
        let preimage = image
            .iter()
            .enumerate()
            .map(|(i, &b)| (b, Elem(i as u32)))
            .collect();
        Ok(Embedding {
            source: source.clone(),
            target: target.clone(),
            image,
            preimage,
        })
    }

    /// Cached embedding between two fields.
    pub fn between(source: &Arc<Field>, target: &Arc<Field>) -> Result<Arc<Embedding>> {
        type Key = (u32, u32, Vec<u32>, u32, Vec<u32>);
        static CACHE: OnceLock<Mutex<HashMap<Key, Arc<Embedding>>>> = OnceLock::new();
        let key = (
            source.p,
            source.k,
            source.modulus.clone(),
            target.k,
            target.modulus.clone(),
        );
        let cache = CACHE.get_or_init(Default::default);
        if let Some(e) = cache.lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let emb = Arc::new(Embedding::new(source, target)?);
        Ok(cache.lock().unwrap().entry(key).or_insert(emb).clone())
    }

    pub fn source(&self) -> &Arc<Field> {
        &self.source
    }

    pub fn target(&self) -> &Arc<Field> {
        &self.target
    }

    #[inline]
    pub fn apply(&self, a: Elem) -> Elem {
        self.image[a.0 as usize]
    }

    /// Inverse image, when `b` lies in the embedded subfield.
    pub fn preimage(&self, b: Elem) -> Option<Elem> {
        self.preimage.get(&b).copied()
    }
}

/// The canonical degree-`m` extension of `field` together with its embedding.
pub fn extension(field: &Arc<Field>, m: u32) -> Result<(Arc<Field>, Arc<Embedding>)> {
    let target = Field::canonical(field.p as u64, field.k * m)?;
    let emb = Embedding::between(field, &target)?;
    Ok((target, emb))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn prime_field_f2() {
        let f = Field::new(2, 1, None).unwrap();
        assert_eq!(f.size(), 2);
        assert_eq!(f.elements().collect::<Vec<_>>(), vec![Elem(0), Elem(1)]);
    }

    #[test]
    fn f4_modulus_by_enumeration() {
        // Oracle: among T^2, T^2+1, T^2+T, T^2+T+1 only the last has no root in F_2.
        let rootless: Vec<[u32; 3]> = (0..4u32)
            .map(|n| [n & 1, n >> 1, 1])
            .filter(|m| (0..2u32).all(|t| (m[0] + m[1] * t + t * t) % 2 != 0))
            .collect();
        assert_eq!(rootless, vec![[1, 1, 1]]);
        let f = Field::new(2, 2, None).unwrap();
        assert_eq!(f.modulus(), &rootless[0]);
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert_eq!(
            Field::new(2, 2, Some(&[1, 0, 1])).unwrap_err(),
            Error::ReducibleModulus(2)
        );
        assert!(matches!(Field::new(4, 1, None), Err(Error::NotPrime(4))));
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1])),
            Err(Error::ModulusShape { .. })
        ));
        assert!(matches!(
            Field::new(2, 21, None),
            Err(Error::FieldTooLarge { .. })
        ));
    }

    #[test]
    fn f4_arithmetic() {
        let f = Field::new(2, 2, None).unwrap();
        let g = f.generator();
        assert_eq!(g, Elem(2));
        let g1 = f.add(g, f.one());
        assert_eq!(f.mul(g, g), g1);
        assert_eq!(f.inv(g).unwrap(), g1);
        assert_eq!(f.frobenius(g, 1), g1);
        assert_eq!(f.inv(Elem::ZERO), Err(Error::InverseOfZero));
    }

    #[test]
    fn field_axioms_small_fields() {
        for (p, k) in [(2, 1), (2, 3), (3, 2), (5, 1), (2, 4), (7, 2), (3, 3)] {
            let f = Field::new(p, k, None).unwrap();
            let q = f.size() as u64;
            for a in f.elements() {
                assert_eq!(f.add(a, f.zero()), a);
                assert_eq!(f.mul(a, f.one()), a);
                assert_eq!(f.add(a, f.neg(a)), f.zero());
                assert_eq!(f.pow(a, q), a);
                assert_eq!(f.frobenius(a, k), a);
                if !a.is_zero() {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), f.one());
                }
                assert_eq!(f.from_digits(&f.digits(a)).unwrap(), a);
                for b in f.elements() {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.sub(f.add(a, b), b), a);
                }
            }
        }
    }

    #[test]
    fn addition_is_digitwise() {
        let f = Field::new(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let da = f.digits(a);
                let db = f.digits(b);
                let sum: Vec<u32> = da.iter().zip(&db).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), f.from_digits(&sum).unwrap());
            }
        }
    }

    #[test]
    fn multiplication_matches_polynomial_reduction() {
        let f = Field::new(3, 2, None).unwrap();
        let raw = Raw {
            p: 3,
            k: 2,
            modulus: f.modulus(),
        };
        for a in f.elements() {
            for b in f.elements() {
                assert_eq!(f.mul(a, b).0, raw.mul(a.0, b.0));
            }
        }
    }

    #[test]
    fn f9_enumeration_distinct() {
        let f = Field::new(3, 2, None).unwrap();
        let els: Vec<_> = f.elements().collect();
        assert_eq!(els.len(), 9);
        let set: std::collections::HashSet<_> = els.iter().collect();
        assert_eq!(set.len(), 9);
    }

    #[test]
    fn spec_strings() {
        let f = Field::from_spec("2^8", None).unwrap();
        assert_eq!(f.size(), 256);
        assert_eq!(f.to_string(), "2^8");
        let f = Field::from_spec("7", None).unwrap();
        assert_eq!(f.size(), 7);
        assert!(Field::from_spec("x^2", None).is_err());
    }

    #[test]
    fn embedding_homomorphism() {
        let small = Field::new(2, 2, None).unwrap();
        let (big, emb) = extension(&small, 3).unwrap();
        assert_eq!(big.size(), 64);
        assert_eq!(emb.apply(Elem::ZERO), Elem::ZERO);
        assert_eq!(emb.apply(Elem::ONE), Elem::ONE);
        for a in small.elements() {
            assert_eq!(emb.preimage(emb.apply(a)), Some(a));
            for b in small.elements() {
                assert_eq!(
                    emb.apply(small.add(a, b)),
                    big.add(emb.apply(a), emb.apply(b))
                );
                assert_eq!(
                    emb.apply(small.mul(a, b)),
                    big.mul(emb.apply(a), emb.apply(b))
                );
            }
        }
    }

    #[test]
    fn prime_subfield_fixed() {
        let f2 = Field::new(2, 1, None).unwrap();
        let (_, emb) = extension(&f2, 2).unwrap();
        assert_eq!(emb.apply(Elem(0)), Elem(0));
        assert_eq!(emb.apply(Elem(1)), Elem(1));
        let f4 = Field::new(2, 2, None).unwrap();
        let f8 = Field::new(2, 3, None).unwrap();
        assert!(Embedding::new(&f4, &f8).is_err());
    }
}
