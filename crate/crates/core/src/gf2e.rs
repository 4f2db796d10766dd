//! Arithmetic in GF(2^n) with a designated subfield GF(2^e).
//!
//! Elements are polynomial-basis bit-vectors: bit `i` of a [`FieldElem`] is the
//! coefficient of `t^i` modulo the context's irreducible modulus. A
//! [`FieldCtx`] is immutable and cheap to clone, so it can be shared freely
//! between worker threads.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::upoly::UPoly;

/// Largest supported extension degree; products of two elements must fit in a `u64`.
pub const MAX_EXTENSION_DEGREE: u32 = 32;

/// Fields up to this degree get log/antilog tables.
const TABLE_LIMIT: u32 = 20;

/// Default irreducible moduli for n = 1..=12, bit `i` = coefficient of `t^i`.
pub const DEFAULT_MODULI: [u64; 12] = [
    0b11,
    0b111,
    0b1011,
    0b10011,
    0b100101,
    0b1000011,
    0b10000011,
    0b1_0001_1101,
    0b10_0001_0001,
    0b100_0000_1001,
    0b1000_0000_0101,
    0b1_0000_0101_0011,
];

/// Polynomials over GF(2) packed into machine words.
pub mod gf2poly {
    pub fn degree(a: u128) -> Option<u32> {
        if a == 0 {
            None
        } else {
            Some(127 - a.leading_zeros())
        }
    }

    pub fn clmul(a: u64, b: u64) -> u128 {
        let a = a as u128;
        let mut b = b;
        let mut acc = 0u128;
        let mut shift = 0;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a << shift;
            }
            b >>= 1;
            shift += 1;
        }
        acc
    }

    pub fn rem(mut a: u128, m: u64) -> u64 {
        let dm = degree(m as u128).expect("zero modulus");
        while let Some(da) = degree(a) {
            if da < dm {
                break;
            }
            a ^= (m as u128) << (da - dm);
        }
        a as u64
    }

    pub fn mulmod(a: u64, b: u64, m: u64) -> u64 {
        rem(clmul(a, b), m)
    }

    pub fn gcd(mut a: u64, mut b: u64) -> u64 {
        while b != 0 {
            let r = rem(a as u128, b);
            a = b;
            b = r;
        }
        a
    }

    /// Rabin's test: `m` of degree n is irreducible iff t^(2^n) = t mod m and
    /// gcd(t^(2^(n/r)) - t, m) = 1 for every prime r dividing n.
    pub fn is_irreducible(m: u64) -> bool {
        let n = match degree(m as u128) {
            Some(0) | None => return false,
            Some(n) => n,
        };
        let t = rem(0b10, m);
        let mut powers = Vec::with_capacity(n as usize + 1);
        let mut x = t;
        powers.push(x);
        for _ in 0..n {
            x = mulmod(x, x, m);
            powers.push(x);
        }
        if powers[n as usize] != t {
            return false;
        }
        super::prime_factors(n as u64).into_iter().all(|r| {
            let k = (n as u64 / r) as usize;
            gcd(m, powers[k] ^ t) == 1
        })
    }
}

pub(crate) fn prime_factors(mut x: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut p = 2;
    while p * p <= x {
        if x % p == 0 {
            out.push(p);
            while x % p == 0 {
                x /= p;
            }
        }
        p += 1;
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// An element of GF(2^n) in polynomial basis.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElem(pub(crate) u32);

impl FieldElem {
    pub const ZERO: FieldElem = FieldElem(0);
    pub const ONE: FieldElem = FieldElem(1);

    pub fn bits(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }

    pub fn is_one(self) -> bool {
        self.0 == 1
    }

    /// Lowercase hex with a `0x` prefix, the interchange encoding.
    pub fn to_hex(self) -> String {
        format!("{:#x}", self.0)
    }
}

impl fmt::Display for FieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:#x}", self.0)
    }
}

struct Tables {
    log: Vec<u32>,
    /// exp[i] = g^i for i in 0..2*(2^n - 1), so log sums never need reducing.
    exp: Vec<u32>,
}

struct FieldInner {
    n: u32,
    modulus: u64,
    e: u32,
    primitive: FieldElem,
    tables: Option<Tables>,
}

/// The ambient field GF(2^n) together with the designated subfield F_q, q = 2^e.
#[derive(Clone)]
pub struct FieldCtx(Arc<FieldInner>);

impl fmt::Debug for FieldCtx {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "GF(2^{}) mod {:#x}, F_q with q = 2^{}",
            self.0.n, self.0.modulus, self.0.e
        )
    }
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.0.n == other.0.n && self.0.modulus == other.0.modulus && self.0.e == other.0.e
    }
}

impl Eq for FieldCtx {}

impl FieldCtx {
    pub fn new(n: u32, modulus: u64, subfield_e: u32) -> Result<Self> {
        if n == 0 || n > MAX_EXTENSION_DEGREE {
            return Err(Error::FieldTooLarge(n));
        }
        if gf2poly::degree(modulus as u128) != Some(n) {
            return Err(Error::ModulusDegree { modulus, n });
        }
        if subfield_e == 0 || n % subfield_e != 0 {
            return Err(Error::BadSubfield { d: subfield_e, n });
        }
        if !gf2poly::is_irreducible(modulus) {
            return Err(Error::ReducibleModulus(modulus));
        }
        let primitive = find_primitive(n, modulus);
        let tables = (n <= TABLE_LIMIT).then(|| build_tables(n, modulus, primitive));
        Ok(FieldCtx(Arc::new(FieldInner {
            n,
            modulus,
            e: subfield_e,
            primitive,
            tables,
        })))
    }

    /// GF(2^n) with the default modulus: the table entry for n <= 12, otherwise
    /// the numerically smallest irreducible polynomial of degree n.
    pub fn with_default_modulus(n: u32, subfield_e: u32) -> Result<Self> {
        Self::new(n, default_modulus(n)?, subfield_e)
    }

    pub fn n(&self) -> u32 {
        self.0.n
    }

    pub fn e(&self) -> u32 {
        self.0.e
    }

    pub fn modulus(&self) -> u64 {
        self.0.modulus
    }

    /// q = 2^e.
    pub fn q(&self) -> u64 {
        1u64 << self.0.e
    }

    /// Number of elements, 2^n.
    pub fn size(&self) -> u64 {
        1u64 << self.0.n
    }

    /// Same field with a different designated subfield.
    pub fn with_subfield(&self, e: u32) -> Result<Self> {
        Self::new(self.0.n, self.0.modulus, e)
    }

    pub fn zero(&self) -> FieldElem {
        FieldElem::ZERO
    }

    pub fn one(&self) -> FieldElem {
        FieldElem::ONE
    }

    /// The class of t.
    pub fn gen(&self) -> FieldElem {
        FieldElem(gf2poly::rem(0b10, self.0.modulus) as u32)
    }

    /// A generator of the multiplicative group.
    pub fn primitive(&self) -> FieldElem {
        self.0.primitive
    }

    pub fn elem(&self, bits: u64) -> Result<FieldElem> {
        if bits >= self.size() {
            return Err(Error::BadElement(bits));
        }
        Ok(FieldElem(bits as u32))
    }

    pub fn elements(&self) -> impl Iterator<Item = FieldElem> {
        (0..self.size()).map(|b| FieldElem(b as u32))
    }

    #[inline]
    pub fn add(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        FieldElem(a.0 ^ b.0)
    }

    #[inline]
    pub fn mul(&self, a: FieldElem, b: FieldElem) -> FieldElem {
        if a.0 == 0 || b.0 == 0 {
            return FieldElem::ZERO;
        }
        match &self.0.tables {
            Some(t) => FieldElem(t.exp[(t.log[a.0 as usize] + t.log[b.0 as usize]) as usize]),
            None => FieldElem(gf2poly::mulmod(a.0 as u64, b.0 as u64, self.0.modulus) as u32),
        }
    }

    #[inline]
    pub fn square(&self, a: FieldElem) -> FieldElem {
        self.mul(a, a)
    }

    pub fn inv(&self, a: FieldElem) -> Result<FieldElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(match &self.0.tables {
            Some(t) => {
                let order = (self.size() - 1) as u32;
                FieldElem(t.exp[((order - t.log[a.0 as usize]) % order) as usize])
            }
            None => self.pow(a, self.size() - 2),
        })
    }

    pub fn div(&self, a: FieldElem, b: FieldElem) -> Result<FieldElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: FieldElem, mut k: u64) -> FieldElem {
        if let Some(t) = &self.0.tables {
            if a.is_zero() {
                return if k == 0 { FieldElem::ONE } else { FieldElem::ZERO };
            }
            let order = self.size() - 1;
            let idx = (t.log[a.0 as usize] as u128 * (k % order) as u128 % order as u128) as usize;
            return FieldElem(t.exp[idx]);
        }
        let mut base = a;
        let mut acc = FieldElem::ONE;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.square(base);
            k >>= 1;
        }
        acc
    }

    /// a^(2^k).
    pub fn frob(&self, a: FieldElem, k: u32) -> FieldElem {
        let mut x = a;
        for _ in 0..(k % self.0.n) {
            x = self.square(x);
        }
        x
    }

    /// The unique s with s^2 = a, namely a^(2^(n-1)).
    pub fn sqrt(&self, a: FieldElem) -> FieldElem {
        self.frob(a, self.0.n - 1)
    }

    /// True iff a lies in GF(2^d), i.e. a^(2^d) = a.
    pub fn in_subfield(&self, a: FieldElem, d: u32) -> Result<bool> {
        self.check_subfield(d)?;
        Ok(self.frob(a, d) == a)
    }

    pub fn in_fq(&self, a: FieldElem) -> bool {
        self.frob(a, self.0.e) == a
    }

    pub fn check_subfield(&self, d: u32) -> Result<()> {
        if d == 0 || self.0.n % d != 0 {
            return Err(Error::BadSubfield { d, n: self.0.n });
        }
        Ok(())
    }

    /// All elements of GF(2^d), sorted by encoding.
    pub fn subfield_elements(&self, d: u32) -> Result<Vec<FieldElem>> {
        self.check_subfield(d)?;
        let big = self.size() - 1;
        let small = (1u64 << d) - 1;
        let g = self.pow(self.0.primitive, big / small);
        let mut out = Vec::with_capacity(small as usize + 1);
        out.push(FieldElem::ZERO);
        let mut x = FieldElem::ONE;
        for _ in 0..small {
            out.push(x);
            x = self.mul(x, g);
        }
        out.sort();
        Ok(out)
    }

    /// Elements of F_q in canonical (encoding) order.
    pub fn fq_elements(&self) -> Vec<FieldElem> {
        self.subfield_elements(self.0.e).expect("e divides n by construction")
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FieldElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let mut ord = self.size() - 1;
        for r in prime_factors(ord) {
            while ord % r == 0 && self.pow(a, ord / r).is_one() {
                ord /= r;
            }
        }
        Ok(ord)
    }

    /// Embedding of this field into `target`, sending t to the smallest root of
    /// this field's modulus in `target`.
    pub fn embedding_into(&self, target: &FieldCtx) -> Result<Embedding> {
        if target.n() % self.n() != 0 {
            return Err(Error::BadSubfield {
                d: self.n(),
                n: target.n(),
            });
        }
        let image_of_t = if self == target {
            self.gen()
        } else {
            let m = UPoly::from_gf2(self.0.modulus);
            *m.roots(target)
                .first()
                .expect("an irreducible polynomial of degree n splits in GF(2^(kn))")
        };
        let mut images = Vec::with_capacity(self.n() as usize);
        let mut x = FieldElem::ONE;
        for _ in 0..self.n() {
            images.push(x);
            x = target.mul(x, image_of_t);
        }
        Ok(Embedding {
            source: self.clone(),
            target: target.clone(),
            images,
        })
    }

    /// GF(2^(nk)) with its default modulus, plus the embedding of this field.
    pub fn extend(&self, k: u32) -> Result<(FieldCtx, Embedding)> {
        let big_n = self.n() * k;
        let big = FieldCtx::with_default_modulus(big_n, self.e())?;
        let emb = self.embedding_into(&big)?;
        Ok((big, emb))
    }
}

/// A field homomorphism GF(2^n) -> GF(2^N), determined by the image of t.
#[derive(Clone, Debug)]
pub struct Embedding {
    source: FieldCtx,
    target: FieldCtx,
    images: Vec<FieldElem>,
}

impl Embedding {
    pub fn source(&self) -> &FieldCtx {
        &self.source
    }

    pub fn target(&self) -> &FieldCtx {
        &self.target
    }

    pub fn map(&self, a: FieldElem) -> FieldElem {
        let mut acc = 0u32;
        let mut bits = a.0;
        let mut i = 0;
        while bits != 0 {
            if bits & 1 == 1 {
                acc ^= self.images[i].0;
            }
            bits >>= 1;
            i += 1;
        }
        FieldElem(acc)
    }
}

pub fn default_modulus(n: u32) -> Result<u64> {
    if n == 0 || n > MAX_EXTENSION_DEGREE {
        return Err(Error::FieldTooLarge(n));
    }
    if let Some(&m) = DEFAULT_MODULI.get(n as usize - 1) {
        return Ok(m);
    }
    let lead = 1u64 << n;
    (1..lead)
        .step_by(2)
        .map(|low| lead | low)
        .find(|&m| gf2poly::is_irreducible(m))
        .ok_or(Error::FieldTooLarge(n))
}

fn find_primitive(n: u32, modulus: u64) -> FieldElem {
    let order = (1u64 << n) - 1;
    if order == 1 {
        return FieldElem::ONE;
    }
    let factors = prime_factors(order);
    let pow = |a: u64, mut k: u64| {
        let mut base = a;
        let mut acc = 1u64;
        while k > 0 {
            if k & 1 == 1 {
                acc = gf2poly::mulmod(acc, base, modulus);
            }
            base = gf2poly::mulmod(base, base, modulus);
            k >>= 1;
        }
        acc
    };
    (2..(1u64 << n))
        .find(|&g| factors.iter().all(|&r| pow(g, order / r) != 1))
        .map(|g| FieldElem(g as u32))
        .expect("the multiplicative group of a finite field is cyclic")
}

fn build_tables(n: u32, modulus: u64, g: FieldElem) -> Tables {
    let size = 1usize << n;
    let order = size - 1;
    let mut log = vec![0u32; size];
    let mut exp = vec![0u32; 2 * order.max(1)];
    let mut x = 1u64;
    for i in 0..order.max(1) {
        exp[i] = x as u32;
        log[x as usize] = i as u32;
        x = gf2poly::mulmod(x, g.0 as u64, modulus);
    }
    for i in order.max(1)..exp.len() {
        exp[i] = exp[i - order.max(1)];
    }
    Tables { log, exp }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf4() -> FieldCtx {
        FieldCtx::new(2, 0b111, 2).unwrap()
    }

    #[test]
    fn construction_errors() {
        assert_eq!(
            FieldCtx::new(2, 0b110, 2).unwrap_err(),
            Error::ReducibleModulus(0b110)
        );
        assert_eq!(
            FieldCtx::new(4, 0b10011, 3).unwrap_err(),
            Error::BadSubfield { d: 3, n: 4 }
        );
        assert!(FieldCtx::new(4, 0b10011, 2).is_ok());
        assert!(FieldCtx::new(3, 0b10011, 1).is_err());
    }

    #[test]
    fn default_moduli_are_irreducible() {
        for (i, &m) in DEFAULT_MODULI.iter().enumerate() {
            assert!(gf2poly::is_irreducible(m), "n = {}", i + 1);
            assert_eq!(gf2poly::degree(m as u128), Some(i as u32 + 1));
        }
        for n in 13..=20 {
            let m = default_modulus(n).unwrap();
            assert!(gf2poly::is_irreducible(m));
        }
    }

    #[test]
    fn gf4_arithmetic() {
        let f = gf4();
        let w = f.gen();
        assert_eq!(f.mul(w, w), f.add(w, f.one()));
        assert_eq!(f.pow(w, 3), f.one());
        assert_eq!(f.sqrt(w), f.add(w, f.one()));
        assert_eq!(f.inv(f.zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn table_and_carryless_paths_agree() {
        // GF(2^21) has no tables; check it through the field laws on a sample.
        let f = FieldCtx::with_default_modulus(21, 1).unwrap();
        let a = f.elem(0x1_2345).unwrap();
        let b = f.elem(0xabcd).unwrap();
        let ia = f.inv(a).unwrap();
        assert!(f.mul(a, ia).is_one());
        assert_eq!(f.mul(a, b), f.mul(b, a));
        assert_eq!(f.square(f.sqrt(b)), b);
        let g = FieldCtx::with_default_modulus(20, 4).unwrap();
        let x = g.elem(0x8_0001).unwrap();
        let y = g.elem(0x1234).unwrap();
        assert_eq!(
            g.mul(x, y).bits() as u64,
            gf2poly::mulmod(0x8_0001, 0x1234, g.modulus())
        );
    }

    #[test]
    fn subfield_membership() {
        let f = FieldCtx::new(4, 0b10011, 2).unwrap();
        let g = f.primitive();
        assert_eq!(f.order(g).unwrap(), 15);
        assert!(f.in_subfield(f.one(), 1).unwrap());
        assert!(!f.in_subfield(g, 2).unwrap());
        assert!(f.in_subfield(f.pow(g, 5), 2).unwrap());
        assert!(f.in_subfield(g, 3).is_err());
        assert_eq!(f.subfield_elements(2).unwrap().len(), 4);
        assert_eq!(f.subfield_elements(1).unwrap(), vec![f.zero(), f.one()]);
    }

    #[test]
    fn embedding_is_a_homomorphism() {
        let small = gf4();
        let (big, emb) = small.extend(3).unwrap();
        assert_eq!(big.n(), 6);
        for a in small.elements() {
            for b in small.elements() {
                assert_eq!(emb.map(small.mul(a, b)), big.mul(emb.map(a), emb.map(b)));
                assert_eq!(emb.map(small.add(a, b)), big.add(emb.map(a), emb.map(b)));
            }
            assert!(big.in_subfield(emb.map(a), 2).unwrap());
        }
    }
}
