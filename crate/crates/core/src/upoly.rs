//! Dense univariate polynomials over GF(2^n).

use crate::gf2e::{FieldCtx, FieldElem};

/// Coefficients little-endian, no trailing zeros. The zero polynomial is empty.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct UPoly {
    c: Vec<FieldElem>,
}

/// One square-free factor with its multiplicity.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquareFreePart {
    pub factor: UPoly,
    pub multiplicity: u32,
}

/// Product of all monic irreducible factors of one degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeClass {
    pub degree: u32,
    pub product: UPoly,
}

impl UPoly {
    pub fn zero() -> Self {
        UPoly { c: Vec::new() }
    }

    pub fn one() -> Self {
        UPoly {
            c: vec![FieldElem::ONE],
        }
    }

    pub fn x() -> Self {
        UPoly {
            c: vec![FieldElem::ZERO, FieldElem::ONE],
        }
    }

    pub fn constant(a: FieldElem) -> Self {
        Self::new(vec![a])
    }

    /// x - r.
    pub fn linear_root(r: FieldElem) -> Self {
        Self::new(vec![r, FieldElem::ONE])
    }

    pub fn new(mut c: Vec<FieldElem>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        UPoly { c }
    }

    /// A GF(2)-polynomial packed as bits, viewed over any field of characteristic 2.
    pub fn from_gf2(bits: u64) -> Self {
        Self::new(
            (0..64)
                .map(|i| FieldElem(((bits >> i) & 1) as u32))
                .collect(),
        )
    }

    pub fn coeffs(&self) -> &[FieldElem] {
        &self.c
    }

    pub fn coeff(&self, i: usize) -> FieldElem {
        self.c.get(i).copied().unwrap_or(FieldElem::ZERO)
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    /// Degree with the zero polynomial treated as degree 0, for bounds.
    pub fn deg0(&self) -> usize {
        self.degree().unwrap_or(0)
    }

    pub fn is_constant(&self) -> bool {
        self.c.len() <= 1
    }

    pub fn lc(&self) -> FieldElem {
        self.c.last().copied().unwrap_or(FieldElem::ZERO)
    }

    /// Index of the lowest nonzero coefficient, i.e. the order of vanishing at 0.
    pub fn valuation(&self) -> Option<usize> {
        self.c.iter().position(|x| !x.is_zero())
    }

    pub fn map_coeffs(&self, g: impl Fn(FieldElem) -> FieldElem) -> Self {
        Self::new(self.c.iter().map(|&a| g(a)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.c.len().max(other.c.len());
        Self::new(
            (0..n)
                .map(|i| FieldElem(self.coeff(i).0 ^ other.coeff(i).0))
                .collect(),
        )
    }

    pub fn scale(&self, f: &FieldCtx, a: FieldElem) -> Self {
        Self::new(self.c.iter().map(|&x| f.mul(x, a)).collect())
    }

    pub fn mul(&self, f: &FieldCtx, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![FieldElem::ZERO; self.c.len() + other.c.len() - 1];
        for (i, &a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, &b) in other.c.iter().enumerate() {
                out[i + j].0 ^= f.mul(a, b).0;
            }
        }
        Self::new(out)
    }

    pub fn square(&self, f: &FieldCtx) -> Self {
        let mut out = vec![FieldElem::ZERO; (2 * self.c.len()).saturating_sub(1)];
        for (i, &a) in self.c.iter().enumerate() {
            out[2 * i] = f.square(a);
        }
        Self::new(out)
    }

    pub fn pow(&self, f: &FieldCtx, mut k: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(f, &base);
            }
            base = base.square(f);
            k >>= 1;
        }
        acc
    }

    pub fn monic(&self, f: &FieldCtx) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let inv = f.inv(self.lc()).expect("nonzero leading coefficient");
        self.scale(f, inv)
    }

    /// Quotient and remainder; panics on division by zero.
    pub fn divrem(&self, f: &FieldCtx, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("polynomial division by zero");
        if self.c.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let inv = f.inv(d.lc()).expect("nonzero leading coefficient");
        let mut r = self.c.clone();
        let mut q = vec![FieldElem::ZERO; r.len() - dd];
        for i in (dd..r.len()).rev() {
            let coef = r[i];
            if coef.is_zero() {
                continue;
            }
            let factor = f.mul(coef, inv);
            q[i - dd] = factor;
            for (j, &b) in d.c.iter().enumerate() {
                r[i - dd + j].0 ^= f.mul(factor, b).0;
            }
        }
        r.truncate(dd);
        (Self::new(q), Self::new(r))
    }

    pub fn rem(&self, f: &FieldCtx, d: &Self) -> Self {
        self.divrem(f, d).1
    }

    /// Exact division; debug-asserts a zero remainder.
    pub fn div_exact(&self, f: &FieldCtx, d: &Self) -> Self {
        let (q, r) = self.divrem(f, d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd; gcd(0, 0) = 0.
    pub fn gcd(&self, f: &FieldCtx, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(f, &b);
            a = b;
            b = r;
        }
        a.monic(f)
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.c
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, &a)| if i % 2 == 1 { a } else { FieldElem::ZERO })
                .collect(),
        )
    }

    /// Square root of a polynomial whose odd coefficients vanish.
    pub fn sqrt(&self, f: &FieldCtx) -> Self {
        debug_assert!(self.c.iter().skip(1).step_by(2).all(|a| a.is_zero()));
        Self::new(self.c.iter().step_by(2).map(|&a| f.sqrt(a)).collect())
    }

    pub fn eval(&self, f: &FieldCtx, x: FieldElem) -> FieldElem {
        self.c
            .iter()
            .rev()
            .fold(FieldElem::ZERO, |acc, &a| f.add(f.mul(acc, x), a))
    }

    /// self^(2^k) mod m.
    pub fn frob_mod(&self, f: &FieldCtx, k: u32, m: &Self) -> Self {
        let mut x = self.rem(f, m);
        for _ in 0..k {
            x = x.square(f).rem(f, m);
        }
        x
    }

    /// Distinct roots in the field `f`, sorted by encoding.
    pub fn roots(&self, f: &FieldCtx) -> Vec<FieldElem> {
        if self.is_zero() {
            return Vec::new();
        }
        let m = self.monic(f);
        if m.degree() == Some(0) {
            return Vec::new();
        }
        // gcd(m, x^(2^n) - x) is the product of the distinct linear factors.
        let xq = UPoly::x().frob_mod(f, f.n(), &m);
        let split = m.gcd(f, &xq.add(&UPoly::x()));
        let mut out = Vec::new();
        split_linear(f, &split, &mut out);
        out.sort();
        out
    }

    /// Order of vanishing at r.
    pub fn multiplicity(&self, f: &FieldCtx, r: FieldElem) -> u32 {
        if self.is_zero() {
            return u32::MAX;
        }
        let lin = UPoly::linear_root(r);
        let mut p = self.clone();
        let mut m = 0;
        loop {
            let (q, rem) = p.divrem(f, &lin);
            if !rem.is_zero() {
                return m;
            }
            p = q;
            m += 1;
        }
    }

    /// f = prod factor^multiplicity with pairwise coprime square-free monic factors.
    pub fn square_free_decomposition(&self, f: &FieldCtx) -> Vec<SquareFreePart> {
        let mut out = Vec::new();
        if self.is_constant() {
            return out;
        }
        sqf_rec(f, &self.monic(f), 1, &mut out);
        out.sort_by_key(|p| p.multiplicity);
        out
    }

    /// Distinct-degree factorization of a square-free monic polynomial.
    pub fn distinct_degree(&self, f: &FieldCtx) -> Vec<DegreeClass> {
        let mut out = Vec::new();
        let mut rest = self.monic(f);
        let mut h = UPoly::x();
        let mut k = 0u32;
        while rest.degree().unwrap_or(0) > 0 {
            k += 1;
            if 2 * k as usize > rest.deg0() {
                out.push(DegreeClass {
                    degree: rest.deg0() as u32,
                    product: rest.clone(),
                });
                break;
            }
            h = h.frob_mod(f, f.n(), &rest);
            let g = rest.gcd(f, &h.add(&UPoly::x()));
            if g.degree().unwrap_or(0) > 0 {
                rest = rest.div_exact(f, &g);
                h = h.rem(f, &rest);
                out.push(DegreeClass {
                    degree: k,
                    product: g,
                });
            }
        }
        out
    }

    /// Multiset of (irreducible-factor degree, multiplicity, number of such factors).
    pub fn factor_degrees(&self, f: &FieldCtx) -> Vec<(u32, u32, u32)> {
        let mut out = Vec::new();
        for part in self.square_free_decomposition(f) {
            for class in part.factor.distinct_degree(f) {
                let count = class.product.deg0() as u32 / class.degree;
                out.push((class.degree, part.multiplicity, count));
            }
        }
        out.sort();
        out
    }
}

fn sqf_rec(f: &FieldCtx, a: &UPoly, scale: u32, out: &mut Vec<SquareFreePart>) {
    let d = a.derivative();
    let mut c = a.gcd(f, &d);
    let mut w = a.div_exact(f, &c);
    let mut i = 1;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(f, &c);
        let fac = w.div_exact(f, &y);
        if fac.degree().unwrap_or(0) > 0 {
            out.push(SquareFreePart {
                factor: fac,
                multiplicity: i * scale,
            });
        }
        w = y;
        c = c.div_exact(f, &w);
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        sqf_rec(f, &c.sqrt(f), 2 * scale, out);
    }
}

/// Splits a monic product of distinct linear factors using trace maps
/// Tr(b x) for b running over the polynomial basis.
fn split_linear(f: &FieldCtx, h: &UPoly, out: &mut Vec<FieldElem>) {
    match h.degree() {
        None | Some(0) => return,
        Some(1) => {
            let m = h.monic(f);
            out.push(m.coeff(0));
            return;
        }
        _ => {}
    }
    let mut basis = FieldElem::ONE;
    for _ in 0..f.n() {
        let y0 = UPoly::new(vec![FieldElem::ZERO, basis]).rem(f, h);
        let mut y = y0.clone();
        let mut tr = y0;
        for _ in 1..f.n() {
            y = y.square(f).rem(f, h);
            tr = tr.add(&y);
        }
        let g = h.gcd(f, &tr);
        let dg = g.degree().unwrap_or(0);
        if dg > 0 && dg < h.deg0() {
            let other = h.div_exact(f, &g);
            split_linear(f, &g, out);
            split_linear(f, &other, out);
            return;
        }
        basis = f.mul(basis, f.gen());
    }
    unreachable!("trace maps separate distinct roots");
}

/// Resultant of a and b taken with formal degrees `da >= deg a`, `db >= deg b`.
pub fn resultant(f: &FieldCtx, a: &UPoly, da: usize, b: &UPoly, db: usize) -> FieldElem {
    let (ra, rb) = (a.degree(), b.degree());
    match (ra, rb) {
        (None, _) | (_, None) => {
            // Formal degree 0 against the zero polynomial still has an empty Sylvester matrix.
            if da == 0 && db == 0 {
                FieldElem::ONE
            } else if da == 0 {
                f.pow(a.coeff(0), db as u64)
            } else if db == 0 {
                f.pow(b.coeff(0), da as u64)
            } else {
                FieldElem::ZERO
            }
        }
        (Some(ea), Some(eb)) => {
            if ea < da && eb < db {
                return FieldElem::ZERO;
            }
            // Leading-coefficient corrections for dropped formal degree (no signs in char 2).
            let mut corr = FieldElem::ONE;
            if ea < da {
                corr = f.pow(b.lc(), (da - ea) as u64);
            } else if eb < db {
                corr = f.pow(a.lc(), (db - eb) as u64);
            }
            f.mul(corr, resultant_exact(f, a.clone(), b.clone()))
        }
    }
}

fn resultant_exact(f: &FieldCtx, mut a: UPoly, mut b: UPoly) -> FieldElem {
    let mut acc = FieldElem::ONE;
    loop {
        let (Some(m), Some(n)) = (a.degree(), b.degree()) else {
            return FieldElem::ZERO;
        };
        if n == 0 {
            return f.mul(acc, f.pow(b.coeff(0), m as u64));
        }
        if m == 0 {
            return f.mul(acc, f.pow(a.coeff(0), n as u64));
        }
        let r = a.rem(f, &b);
        let Some(k) = r.degree() else {
            return FieldElem::ZERO;
        };
        acc = f.mul(acc, f.pow(b.lc(), (m - k) as u64));
        a = b;
        b = r;
    }
}

/// The unique polynomial of degree < xs.len() through the given points.
pub fn interpolate(f: &FieldCtx, xs: &[FieldElem], ys: &[FieldElem]) -> UPoly {
    assert_eq!(xs.len(), ys.len());
    let n = xs.len();
    let mut dd: Vec<FieldElem> = ys.to_vec();
    for j in 1..n {
        for i in (j..n).rev() {
            let num = f.add(dd[i], dd[i - 1]);
            let den = f.add(xs[i], xs[i - j]);
            dd[i] = f.div(num, den).expect("interpolation nodes are distinct");
        }
    }
    // Newton form to monomial basis.
    let mut acc = UPoly::zero();
    for i in (0..n).rev() {
        acc = acc
            .mul(f, &UPoly::linear_root(xs[i]))
            .add(&UPoly::constant(dd[i]));
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gf16() -> FieldCtx {
        FieldCtx::new(4, 0b10011, 2).unwrap()
    }

    fn from_roots(f: &FieldCtx, roots: &[FieldElem]) -> UPoly {
        roots
            .iter()
            .fold(UPoly::one(), |acc, &r| acc.mul(f, &UPoly::linear_root(r)))
    }

    #[test]
    fn roots_of_split_polynomial() {
        let f = gf16();
        let rs: Vec<_> = [3u64, 7, 9, 14, 0].iter().map(|&b| f.elem(b).unwrap()).collect();
        let mut p = from_roots(&f, &rs);
        p = p.mul(&f, &UPoly::from_gf2(0b111)); // irreducible over GF(2) but splits in GF(16)
        let got = p.roots(&f);
        let mut want: Vec<_> = rs.clone();
        want.extend(UPoly::from_gf2(0b111).roots(&f));
        want.sort();
        want.dedup();
        assert_eq!(got, want);
        for r in got {
            assert!(p.eval(&f, r).is_zero());
        }
    }

    #[test]
    fn roots_match_brute_force() {
        let f = gf16();
        let p = UPoly::new((1..=7).map(|b| f.elem(b * 2 + 1).unwrap()).collect());
        let brute: Vec<_> = f.elements().filter(|&x| p.eval(&f, x).is_zero()).collect();
        assert_eq!(p.roots(&f), brute);
    }

    #[test]
    fn multiplicities_and_square_free() {
        let f = gf16();
        let a = f.elem(5).unwrap();
        let b = f.elem(11).unwrap();
        // (x-a)^4 (x-b)^3 (x^2+x+w) with w making the quadratic irreducible
        let quad = (1..16)
            .map(|c| UPoly::new(vec![f.elem(c).unwrap(), f.one(), f.one()]))
            .find(|q| q.roots(&f).is_empty())
            .unwrap();
        let p = UPoly::linear_root(a)
            .pow(&f, 4)
            .mul(&f, &UPoly::linear_root(b).pow(&f, 3))
            .mul(&f, &quad);
        assert_eq!(p.multiplicity(&f, a), 4);
        assert_eq!(p.multiplicity(&f, b), 3);
        let parts = p.square_free_decomposition(&f);
        let mults: Vec<_> = parts.iter().map(|s| s.multiplicity).collect();
        assert_eq!(mults, vec![1, 3, 4]);
        assert_eq!(p.factor_degrees(&f), vec![(1, 3, 1), (1, 4, 1), (2, 1, 1)]);
    }

    #[test]
    fn resultant_matches_root_product() {
        let f = gf16();
        let ra = [f.elem(2).unwrap(), f.elem(6).unwrap()];
        let rb = [f.elem(3).unwrap(), f.elem(6).unwrap(), f.elem(9).unwrap()];
        let a = from_roots(&f, &ra);
        let b = from_roots(&f, &rb[..1]);
        // Res(a, b) = prod (ra_i - rb_j) for monic polynomials.
        let want = ra.iter().fold(f.one(), |acc, &x| f.mul(acc, f.add(x, rb[0])));
        assert_eq!(resultant(&f, &a, 2, &b, 1), want);
        let c = from_roots(&f, &rb);
        assert!(resultant(&f, &a, 2, &c, 3).is_zero());
    }

    #[test]
    fn interpolation_recovers_polynomial() {
        let f = gf16();
        let p = UPoly::new((0..6).map(|b| f.elem(b + 3).unwrap()).collect());
        let xs: Vec<_> = f.elements().take(6).collect();
        let ys: Vec<_> = xs.iter().map(|&x| p.eval(&f, x)).collect();
        assert_eq!(interpolate(&f, &xs, &ys), p);
    }
}
